"""
Исключения инструментария проверки хроматического числа
Заменяют generic Exception handling более специфичными типами
"""

from typing import Optional, Tuple


class ChromaticVerificationError(Exception):
    """Базовое исключение для всех ошибок инструментария"""
    pass


class ConfigurationError(ChromaticVerificationError):
    """Ошибки конфигурации"""
    pass


class DomainError(ChromaticVerificationError, ValueError):
    """Нарушение предусловия операции (аргумент вне области определения)"""
    pass


class GraphConstructionError(ChromaticVerificationError):
    """Неоднозначная классификация расстояния при построении графа"""

    def __init__(self, message: str, pair: Optional[Tuple[int, int]] = None, distance: Optional[float] = None):
        super().__init__(message)
        self.pair = pair
        self.distance = distance


class GraphFormatError(ChromaticVerificationError):
    """Ошибки разбора документа обмена графами"""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None,
                 field: Optional[str] = None):
        location = []
        if line is not None:
            location.append(f"line {line}")
        if column is not None:
            location.append(f"column {column}")
        if field:
            location.append(f"field {field}")
        text = f"{message} ({', '.join(location)})" if location else message
        super().__init__(text)
        self.line = line
        self.column = column
        self.field = field


class GraphValidationError(ChromaticVerificationError):
    """Загруженный граф не прошел повторную проверку"""
    pass


class SearchExhaustedError(ChromaticVerificationError):
    """Ни одно k <= kmax не дало допустимой раскраски"""

    def __init__(self, kmax: int):
        super().__init__(f"bounded search exhausted: no proper set-coloring with k <= {kmax} colors")
        self.kmax = kmax


class EnumerationGuardError(ChromaticVerificationError):
    """Перебор отклонен: пространство поиска превышает ограничение"""
    pass


class ScriptValidationError(ChromaticVerificationError):
    """Шаг сценария доказательства не следует из текущего состояния"""

    def __init__(self, message: str, step_number: Optional[int] = None):
        text = f"step {step_number}: {message}" if step_number is not None else message
        super().__init__(text)
        self.step_number = step_number
        self.reason = message


class LemmaGateError(ScriptValidationError):
    """Правило 2 применено до доказательства леммы об отсутствии одиночных вершин"""
    pass


class InternalConsistencyError(ChromaticVerificationError):
    """Две независимые проверки дали разные результаты"""
    pass


class TilingRadiusError(ChromaticVerificationError):
    """Радиус поиска одноцветных шестиугольников недостаточен"""
    pass
