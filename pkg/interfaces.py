"""
Интерфейсы и общие типы данных компонентов
Обеспечивает слабую связанность и тестируемость
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple, TYPE_CHECKING

if TYPE_CHECKING:
    from graphs import GeometricGraph


@dataclass(frozen=True)
class SetColoring:
    """Назначение каждой вершине множества цветов (цвета - малые неотрицательные целые)"""
    assignment: Tuple[FrozenSet[int], ...]

    def __post_init__(self):
        object.__setattr__(self, 'assignment', tuple(frozenset(s) for s in self.assignment))

    @classmethod
    def from_lists(cls, colors: Sequence[Sequence[int]]) -> 'SetColoring':
        return cls(tuple(frozenset(int(c) for c in s) for s in colors))

    def as_lists(self) -> List[List[int]]:
        return [sorted(s) for s in self.assignment]

    def palette(self) -> FrozenSet[int]:
        used = set()
        for s in self.assignment:
            used |= s
        return frozenset(used)

    def sort_key(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(tuple(sorted(s)) for s in self.assignment)

    def __len__(self) -> int:
        return len(self.assignment)


class IColoringSolver(ABC):
    """Интерфейс точного решателя задачи раскраски множествами"""

    @abstractmethod
    def feasible(self, graph: 'GeometricGraph', k: int) -> Optional[SetColoring]:
        """Свидетельство раскраски k цветами или None"""
        pass

    @abstractmethod
    def enumerate_colorings(self, graph: 'GeometricGraph', k: int) -> Iterator[SetColoring]:
        """Все правильные раскраски в лексикографическом порядке"""
        pass


class IGraphEmitter(ABC):
    """Интерфейс вывода графа в текстовый формат"""

    file_suffix: str = ""

    @abstractmethod
    def emit(self, graph: 'GeometricGraph', coloring: Optional[SetColoring] = None) -> str:
        """Текстовое представление графа"""
        pass


class IPerformanceMonitor(ABC):
    """Интерфейс для мониторинга производительности"""

    @abstractmethod
    def track_latency(self, operation: str, duration: float) -> None:
        """Отслеживание времени выполнения операций"""
        pass

    @abstractmethod
    def track_success_rate(self, operation: str, success: bool, error: Optional[str] = None) -> None:
        """Исход операции; error - имя исключения при неудаче"""
        pass

    @abstractmethod
    def track_counter(self, counter: str, amount: int = 1) -> None:
        """Увеличение счетчика событий"""
        pass

    @abstractmethod
    def get_metrics(self) -> Dict[str, float]:
        """Получение метрик производительности"""
        pass
