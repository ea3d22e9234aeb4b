"""
Точная раскраска множествами: допустимость, хроматическое число, полный перебор,
классификация раскрасок по симметриям и проверки сокращений 19-вершинного графа
"""

import math
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

import networkx as nx

from exceptions import DomainError, EnumerationGuardError, SearchExhaustedError
from geometry import ToleranceConfig
from graphs import RIM_SIZE, GeometricGraph, build_paper19
from interfaces import IColoringSolver, IPerformanceMonitor, SetColoring
from logger_config import setup_unified_logger

MAX_COLORS = 32
MAX_CLASSIFY_PALETTE = 8
CLIQUE_BOUND_MAX_VERTICES = 60
DEFAULT_REDUCTION_D = 1.30

ROTATION = "rotation"
REFLECTION = "reflection"
COLOR_PERMUTATION = "color-permutation"
FULL_GROUP = frozenset({ROTATION, REFLECTION, COLOR_PERMUTATION})

NUMBER_WORDS = {
    1: "one", 2: "two", 3: "three", 4: "four", 5: "five", 6: "six", 7: "seven", 8: "eight", 9: "nine",
    10: "ten", 11: "eleven", 12: "twelve", 13: "thirteen", 14: "fourteen", 15: "fifteen", 16: "sixteen",
    17: "seventeen", 18: "eighteen",
}
RUN_WORDS = {1: ("single", "singles"), 2: ("pair", "pairs"), 3: ("triple", "triples")}


def _bits(mask: int) -> List[int]:
    return [c for c in range(mask.bit_length()) if mask >> c & 1]


def _mask(colors: Iterable[int]) -> int:
    result = 0
    for c in colors:
        result |= 1 << c
    return result


def is_proper(graph: GeometricGraph, coloring: SetColoring, k: Optional[int] = None) -> bool:
    """Размеры множеств совпадают с кратностями, смежные множества не пересекаются"""
    if len(coloring) != graph.n:
        return False
    for v, colors in enumerate(coloring.assignment):
        if len(colors) != graph.demands[v]:
            return False
        if any(c < 0 or (k is not None and c >= k) for c in colors):
            return False
    return all(not (coloring.assignment[u] & coloring.assignment[v]) for u, v in graph.edges)


class SetColoringSolver(IColoringSolver):
    """
    Поиск с возвратом по вершинам в порядке насыщенности (DSATUR)

    Вершине назначается сразу demand цветов. Симметрия цветов устраняется так:
    из еще не использованных цветов берутся только наименьшие.
    """

    def __init__(self, performance_monitor: Optional[IPerformanceMonitor] = None,
                 enumeration_guard_log2: int = 40):
        self.logger = setup_unified_logger("solver")
        self.performance_monitor = performance_monitor
        self.enumeration_guard_log2 = enumeration_guard_log2

    def _count(self, counter: str, amount: int = 1) -> None:
        if self.performance_monitor is not None and amount:
            self.performance_monitor.track_counter(counter, amount)

    @staticmethod
    def _check_k(k: int) -> None:
        if not 0 <= k <= MAX_COLORS:
            raise DomainError(f"number of colors must lie in [0, {MAX_COLORS}], got {k}")

    def feasible(self, graph: GeometricGraph, k: int) -> Optional[SetColoring]:
        """Свидетельство правильной раскраски цветами {0..k-1} или None (поиск полный)"""
        self._check_k(k)
        n = graph.n
        if n == 0:
            return SetColoring(())
        if any(m > k for m in graph.demands):
            return None

        adjacency = graph.adjacency
        demands = graph.demands
        full = (1 << k) - 1
        assigned = [0] * n
        nodes = 0

        def forbidden(v: int) -> int:
            mask = 0
            for w in adjacency[v]:
                mask |= assigned[w]
            return mask

        def select() -> int:
            best, best_key = -1, None
            for v in range(n):
                if assigned[v]:
                    continue
                key = (bin(forbidden(v)).count("1"), demands[v], len(adjacency[v]), -v)
                if best_key is None or key > best_key:
                    best, best_key = v, key
            return best

        def search(used: int) -> bool:
            nonlocal nodes
            nodes += 1
            v = select()
            if v < 0:
                return True
            m = demands[v]
            available = full & ~forbidden(v)
            reuse = _bits(available & used)
            fresh = _bits(full & ~used)
            for j in range(min(m, len(reuse)), -1, -1):
                if m - j > len(fresh):
                    break
                fresh_mask = _mask(fresh[:m - j])
                for chosen in combinations(reuse, j):
                    assigned[v] = _mask(chosen) | fresh_mask
                    if self._forward_ok(v, adjacency, assigned, demands, full) and search(used | assigned[v]):
                        return True
                    assigned[v] = 0
            return False

        found = search(0)
        self._count("search_nodes", nodes)
        self.logger.debug(f"[SOLVER] feasible({graph.name or '<graph>'}, k={k}): {found} after {nodes} nodes")
        if not found:
            return None
        return SetColoring(tuple(frozenset(_bits(m)) for m in assigned))

    @staticmethod
    def _forward_ok(v: int, adjacency, assigned: List[int], demands: Sequence[int], full: int) -> bool:
        for w in adjacency[v]:
            if assigned[w]:
                continue
            mask = 0
            for u in adjacency[w]:
                mask |= assigned[u]
            if bin(full & ~mask).count("1") < demands[w]:
                return False
        return True

    def lower_bound(self, graph: GeometricGraph) -> int:
        """Нижняя оценка: максимальная суммарная кратность клики (для малых графов) или ребра"""
        if graph.n == 0:
            return 0
        bound = max(graph.demands)
        for u, v in graph.edges:
            bound = max(bound, graph.demands[u] + graph.demands[v])
        if graph.n <= CLIQUE_BOUND_MAX_VERTICES:
            _, weight = nx.max_weight_clique(graph.to_networkx(), weight="demand")
            bound = max(bound, weight)
        return bound

    def chromatic_number(self, graph: GeometricGraph, kmax: int) -> int:
        """Наименьшее k <= kmax, при котором раскраска существует"""
        self._check_k(kmax)
        for k in range(self.lower_bound(graph), kmax + 1):
            if self.feasible(graph, k) is not None:
                self.logger.info(f"[SOLVER] Chromatic number of {graph.name or '<graph>'} is {k}")
                return k
        self.logger.warning(f"[SOLVER] Search exhausted for {graph.name or '<graph>'} at kmax={kmax}")
        raise SearchExhaustedError(kmax)

    def search_space_log2(self, graph: GeometricGraph, k: int) -> float:
        """log2 от k^(сумма кратностей)"""
        if k <= 1:
            return 0.0
        return sum(graph.demands) * math.log2(k)

    def enumerate_colorings(self, graph: GeometricGraph, k: int) -> Iterator[SetColoring]:
        """Все правильные раскраски цветами из {0..k-1}, в лексикографическом порядке, без повторов"""
        self._check_k(k)
        space = self.search_space_log2(graph, k)
        if space > self.enumeration_guard_log2:
            raise EnumerationGuardError(
                f"search space 2^{space:.1f} exceeds guard 2^{self.enumeration_guard_log2}")
        return self._enumerate(graph, k)

    def _enumerate(self, graph: GeometricGraph, k: int) -> Iterator[SetColoring]:
        n = graph.n
        adjacency = graph.adjacency
        demands = graph.demands
        full = (1 << k) - 1
        assigned = [0] * n
        emitted = 0

        def walk(v: int) -> Iterator[SetColoring]:
            nonlocal emitted
            if v == n:
                coloring = SetColoring(tuple(frozenset(_bits(m)) for m in assigned))
                emitted += 1
                yield coloring
                return
            forbidden = 0
            for w in adjacency[v]:
                forbidden |= assigned[w]
            for chosen in combinations(_bits(full & ~forbidden), demands[v]):
                assigned[v] = _mask(chosen)
                if self._forward_ok(v, adjacency, assigned, demands, full):
                    yield from walk(v + 1)
                assigned[v] = 0

        if n == 0:
            yield SetColoring(())
            return
        yield from walk(0)
        self._count("colorings_emitted", emitted)
        self.logger.info(f"[ENUM] {graph.name or '<graph>'} with k={k}: {emitted} colorings")


@dataclass(frozen=True)
class ColoringClass:
    """Класс раскрасок по группе симметрий"""
    representative: SetColoring
    orbit_size: int
    members: int
    descriptor: Tuple[Tuple[int, int], ...]

    def describe(self) -> str:
        """Описание профиля серий, например 'six triples' или 'nine pairs'"""
        parts = []
        for length, count in self.descriptor:
            singular, plural = RUN_WORDS.get(length, (f"run of {length}", f"runs of {length}"))
            noun = singular if count == 1 else plural
            parts.append(f"{NUMBER_WORDS.get(count, str(count))} {noun}")
        return " + ".join(parts)


def run_profile(coloring: SetColoring) -> Tuple[Tuple[int, int], ...]:
    """Мультимножество длин одноцветных серий по циклу: ((длина, количество), ...)"""
    sets = coloring.assignment
    n = len(sets)
    if n == 0:
        return ()
    if all(s == sets[0] for s in sets):
        return ((n, 1),)
    start = next(i for i in range(n) if sets[i] != sets[i - 1])
    lengths: Dict[int, int] = {}
    length = 0
    for step in range(n):
        i = (start + step) % n
        if step > 0 and sets[i] != sets[i - 1]:
            lengths[length] = lengths.get(length, 0) + 1
            length = 0
        length += 1
    lengths[length] = lengths.get(length, 0) + 1
    return tuple(sorted(lengths.items()))


def is_circulant(graph: GeometricGraph) -> bool:
    """Ребра и кратности инвариантны относительно поворота i -> i+1"""
    n = graph.n
    if n < 3:
        return False
    if any(graph.demands[(i + 1) % n] != graph.demands[i] for i in range(n)):
        return False
    edges = set(graph.edges)
    for u, v in graph.edges:
        a, b = (u + 1) % n, (v + 1) % n
        if (min(a, b), max(a, b)) not in edges:
            return False
    return True


def symmetry_group(graph: GeometricGraph) -> FrozenSet[str]:
    """Наибольшая поддерживаемая группа: полная для циркулянта, иначе только перестановки цветов"""
    return FULL_GROUP if is_circulant(graph) else frozenset({COLOR_PERMUTATION})


def _color_relabelings(palette: Sequence[int], use_permutations: bool) -> List[Dict[int, int]]:
    if not use_permutations:
        return [{c: c for c in palette}]
    if len(palette) > MAX_CLASSIFY_PALETTE:
        raise DomainError(f"color-permutation classification supports at most {MAX_CLASSIFY_PALETTE} colors")
    return [dict(zip(palette, image)) for image in permutations(palette)]


def _group_images(coloring: SetColoring, group: FrozenSet[str],
                  relabelings: List[Dict[int, int]]) -> Set[Tuple[Tuple[int, ...], ...]]:
    sets = coloring.assignment
    n = len(sets)
    shifts = range(n) if ROTATION in group else [0]
    signs = (1, -1) if REFLECTION in group else (1,)
    images = set()
    for sign in signs:
        for shift in shifts:
            moved = [sets[(sign * i + shift) % n] for i in range(n)]
            for relabel in relabelings:
                images.add(tuple(tuple(sorted(relabel[c] for c in s)) for s in moved))
    return images


def classify_colorings(colorings: Iterable[SetColoring], group: Iterable[str] = FULL_GROUP,
                       graph: Optional[GeometricGraph] = None) -> List[ColoringClass]:
    """
    Разбиение раскрасок на орбиты выбранной группы

    Повороты и отражения осмысленны только для циркулянта; для другого графа это DomainError.
    Представитель класса лексикографически минимален в своей орбите.
    """
    group = frozenset(group)
    unknown = group - FULL_GROUP
    if unknown:
        raise DomainError(f"unknown symmetry group elements: {sorted(unknown)}")
    if group & {ROTATION, REFLECTION} and (graph is None or not is_circulant(graph)):
        raise DomainError("rotation/reflection classification requires a circulant graph with uniform demands")

    items = list(colorings)
    if not items:
        return []
    palette = sorted(set().union(*(c.palette() for c in items)))
    relabelings = _color_relabelings(palette, COLOR_PERMUTATION in group)

    classes: Dict[Tuple[Tuple[int, ...], ...], List] = {}
    for coloring in items:
        images = _group_images(coloring, group, relabelings)
        key = min(images)
        if key in classes:
            classes[key][1] += 1
        else:
            classes[key] = [len(images), 1]

    result = []
    for key in sorted(classes):
        orbit_size, members = classes[key]
        representative = SetColoring.from_lists(key)
        result.append(ColoringClass(representative, orbit_size, members, run_profile(representative)))
    return result


def bichromatic_extension_check(graph: GeometricGraph, coloring: SetColoring, vertex: int,
                                palette: Optional[Iterable[int]] = None) -> bool:
    """Можно ли добавить вершине второй цвет из палитры, сохранив правильность"""
    if any(m != 1 for m in graph.demands):
        raise DomainError("bichromatic extension check expects all demands equal to 1")
    if not is_proper(graph, coloring):
        raise DomainError("input coloring is not proper for the graph")
    palette = frozenset(palette) if palette is not None else coloring.palette()
    blocked = set(coloring.assignment[vertex])
    for w in graph.adjacency[vertex]:
        blocked |= coloring.assignment[w]
    return bool(palette - blocked)


def find_blocking_sequences(coloring: SetColoring) -> List[int]:
    """
    Начала окон вида 1x223 (с точностью до переименования цветов, x из {1, 2}) на цикле

    Возвращает 1-базовые метки первой вершины окна.
    """
    sets = coloring.assignment
    n = len(sets)
    starts = []
    for v in range(n):
        c = [sets[(v + i) % n] for i in range(5)]
        if any(len(s) != 1 for s in c):
            continue
        if c[2] == c[3] and c[0] != c[2] and c[4] not in (c[0], c[2]) and c[1] in (c[0], c[2]):
            starts.append(v + 1)
    return starts


def _removal_indices(graph: GeometricGraph, removed: Iterable[int]) -> List[int]:
    labels = sorted(set(removed))
    rim_labels = set(range(2, RIM_SIZE + 1))
    invalid = [label for label in labels if label not in rim_labels]
    if invalid:
        raise DomainError(f"only rim vertices 2..{RIM_SIZE} can be removed, got {invalid}")
    return [graph.index_of(label) for label in labels]


def verify_reduction(removed: Iterable[int], solver: Optional[SetColoringSolver] = None,
                     d: float = DEFAULT_REDUCTION_D, tolcfg: ToleranceConfig = ToleranceConfig()) -> bool:
    """19-вершинный граф без указанных вершин обода остается 7-хроматическим"""
    solver = solver or SetColoringSolver()
    paper19 = build_paper19(d, tolcfg)
    reduced = paper19.without_vertices(_removal_indices(paper19, removed))
    return solver.feasible(reduced, 6) is None and solver.feasible(reduced, 7) is not None


def find_redundant_pairs(solver: Optional[SetColoringSolver] = None, d: float = DEFAULT_REDUCTION_D,
                         tolcfg: ToleranceConfig = ToleranceConfig(),
                         progress: Optional[Callable[[Tuple[int, int]], None]] = None) -> List[Tuple[int, int]]:
    """Все пары вершин обода (без вершины 1), удаление которых сохраняет хроматическое число 7"""
    solver = solver or SetColoringSolver()
    result = []
    for pair in combinations(range(2, RIM_SIZE + 1), 2):
        if progress is not None:
            progress(pair)
        if verify_reduction(pair, solver, d, tolcfg):
            result.append(pair)
    return result
