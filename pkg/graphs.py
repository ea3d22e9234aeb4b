"""
Геометрические графы с интервалом запрещенных расстояний
Раскладки на окружностях, классификация ребер, кратности цветов вершин,
циркулянты и построители экземпляров: 19-вершинный граф, обод C18(3,4), симплекс, два кольца
"""

import math
from dataclasses import dataclass, field, replace
from functools import cached_property
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from constants import ISBELL_D, LOWER_D
from exceptions import DomainError, GraphConstructionError, GraphValidationError
from geometry import (DistanceClass, IntervalSpec, Point2, ToleranceConfig, classify_distance,
                      interval_from_d)
from logger_config import setup_unified_logger

logger = setup_unified_logger("graphs")

Edge = Tuple[int, int]

RIM_SIZE = 18
RIM_OFFSETS = (3, 4)
MAX_SIMPLEX_DIMENSION = 8


@dataclass(frozen=True)
class CirculantSpec:
    """Параметры циркулянта C_n(S)"""
    n: int
    offsets: FrozenSet[int]

    def __post_init__(self):
        object.__setattr__(self, 'offsets', frozenset(self.offsets))
        if self.n < 3:
            raise DomainError(f"circulant needs n >= 3, got {self.n}")
        if not self.offsets:
            raise DomainError("circulant offsets must be nonempty")
        bad = sorted(o for o in self.offsets if not (1 <= o <= self.n / 2))
        if bad:
            raise DomainError(f"circulant offsets must lie in [1, n/2], got {bad} for n={self.n}")


@dataclass(frozen=True)
class GeometricGraph:
    """
    Граф с необязательной геометрией

    points    - координаты вершин (пусто для абстрактных графов)
    edges     - неупорядоченные пары индексов, i < j, в лексикографическом порядке
    demands   - кратность цветов вершины (1, 2 или 3)
    labels    - 1-базовые метки для отображения
    interval  - интервал, по которому классифицировались ребра
    """
    points: Tuple[Point2, ...]
    edges: Tuple[Edge, ...]
    demands: Tuple[int, ...]
    labels: Optional[Tuple[int, ...]] = None
    interval: Optional[IntervalSpec] = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'points', tuple(self.points))
        object.__setattr__(self, 'edges', tuple(sorted(_normalize_edge(e) for e in self.edges)))
        object.__setattr__(self, 'demands', tuple(int(m) for m in self.demands))
        if self.labels is not None:
            object.__setattr__(self, 'labels', tuple(int(x) for x in self.labels))
        self.check_structure()

    @property
    def n(self) -> int:
        return len(self.demands)

    @property
    def has_geometry(self) -> bool:
        return len(self.points) > 0

    def check_structure(self) -> None:
        """Структурные инварианты: индексы в диапазоне, без петель и повторов, согласованные длины"""
        n = len(self.demands)
        if self.points and len(self.points) != n:
            raise GraphValidationError(f"{len(self.points)} points but {n} demands")
        if self.labels is not None and len(self.labels) != n:
            raise GraphValidationError(f"{len(self.labels)} labels but {n} demands")
        if self.labels is not None and len(set(self.labels)) != n:
            raise GraphValidationError(f"duplicate vertex labels in {list(self.labels)}")
        for i, m in enumerate(self.demands):
            if m < 1:
                raise GraphValidationError(f"vertex {i}: demand must be >= 1, got {m}")
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise GraphValidationError(f"self-loop on vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphValidationError(f"edge ({u}, {v}) out of range for {n} vertices")
            if (u, v) in seen:
                raise GraphValidationError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))

    def validate_geometry(self, tolcfg: ToleranceConfig = ToleranceConfig()) -> None:
        """Каждое ребро классифицируется как EDGE, каждая не-смежная пара как BELOW/ABOVE"""
        if not self.has_geometry or self.interval is None:
            return
        edge_set = set(self.edges)
        for i, j in combinations(range(self.n), 2):
            dist = self.points[i].distance_to(self.points[j])
            cls = classify_distance(dist, self.interval, tolcfg)
            if cls is DistanceClass.AMBIGUOUS:
                raise GraphValidationError(
                    f"pair ({self.label_of(i)}, {self.label_of(j)}) at distance {dist!r} is ambiguous for "
                    f"{self.interval.describe()}")
            if ((i, j) in edge_set) != (cls is DistanceClass.EDGE):
                raise GraphValidationError(
                    f"pair ({self.label_of(i)}, {self.label_of(j)}) at distance {dist!r} classifies as "
                    f"{cls.value} but edge membership is {(i, j) in edge_set}")

    @cached_property
    def adjacency(self) -> Tuple[FrozenSet[int], ...]:
        neighbors: List[set] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            neighbors[u].add(v)
            neighbors[v].add(u)
        return tuple(frozenset(s) for s in neighbors)

    def degree(self, index: int) -> int:
        return len(self.adjacency[index])

    def label_of(self, index: int) -> int:
        return self.labels[index] if self.labels is not None else index + 1

    def index_of(self, label: int) -> int:
        if self.labels is None:
            if not 1 <= label <= self.n:
                raise DomainError(f"no vertex labelled {label}")
            return label - 1
        try:
            return self.labels.index(label)
        except ValueError:
            raise DomainError(f"no vertex labelled {label}") from None

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        for i in range(self.n):
            g.add_node(i, demand=self.demands[i], label=self.label_of(i))
        g.add_edges_from(self.edges)
        return g

    def with_demands(self, demands: Dict[int, int]) -> 'GeometricGraph':
        """Копия графа с измененными кратностями (ключи - индексы)"""
        updated = list(self.demands)
        for index, m in demands.items():
            updated[index] = m
        return replace(self, demands=tuple(updated))

    def without_vertices(self, indices: Iterable[int]) -> 'GeometricGraph':
        """Индуцированный подграф без указанных вершин; метки сохраняются"""
        removed = set(indices)
        keep = [i for i in range(self.n) if i not in removed]
        remap = {old: new for new, old in enumerate(keep)}
        return GeometricGraph(
            points=tuple(self.points[i] for i in keep) if self.has_geometry else (),
            edges=tuple((remap[u], remap[v]) for u, v in self.edges if u in remap and v in remap),
            demands=tuple(self.demands[i] for i in keep),
            labels=tuple(self.label_of(i) for i in keep),
            interval=self.interval,
            name=self.name,
        )


def _normalize_edge(edge: Sequence[int]) -> Edge:
    u, v = int(edge[0]), int(edge[1])
    return (u, v) if u <= v else (v, u)


def circle_layout(n: int, radius: float = 1.0, phase: float = 0.0) -> List[Point2]:
    """n точек на окружности радиуса radius под углами phase + 2*pi*k/n"""
    if n < 1:
        raise DomainError(f"circle layout needs n >= 1, got {n}")
    if not radius > 0:
        raise DomainError(f"radius must be positive, got {radius}")
    return [Point2(radius * math.cos(phase + 2.0 * math.pi * k / n),
                   radius * math.sin(phase + 2.0 * math.pi * k / n)) for k in range(n)]


def clockwise_layout(n: int, radius: float = 1.0) -> List[Point2]:
    """Нумерация по часовой стрелке от верхней точки (убывание угла)"""
    layout = circle_layout(n, radius, math.pi / 2.0)
    return [layout[(-k) % n] for k in range(n)]


def two_ring_layout(n1: int, n2: int, r1: float, r2: float, phase2: float = 0.0) -> List[Point2]:
    """Два концентрических кольца: n1 точек радиуса r1, затем n2 точек радиуса r2 со сдвигом phase2"""
    if n1 < 1 or n2 < 1:
        raise DomainError(f"both rings need at least one point, got n1={n1}, n2={n2}")
    return circle_layout(n1, r1, 0.0) + circle_layout(n2, r2, phase2)


def build_interval_graph(points: Sequence[Point2], spec: IntervalSpec,
                         tolcfg: ToleranceConfig = ToleranceConfig(),
                         demands: Optional[Sequence[int]] = None,
                         labels: Optional[Sequence[int]] = None,
                         name: str = "") -> GeometricGraph:
    """Ребра - ровно те пары, расстояние между которыми попадает в [1, d]"""
    if not points:
        raise DomainError("interval graph needs at least one point")
    demands = tuple(demands) if demands is not None else (1,) * len(points)
    if len(demands) != len(points):
        raise DomainError(f"{len(demands)} demands for {len(points)} points")

    edges = []
    for i, j in combinations(range(len(points)), 2):
        dist = points[i].distance_to(points[j])
        cls = classify_distance(dist, spec, tolcfg)
        if cls is DistanceClass.AMBIGUOUS:
            li = labels[i] if labels else i + 1
            lj = labels[j] if labels else j + 1
            logger.error(f"[GRAPH] Ambiguous pair ({li}, {lj}) at distance {dist!r}")
            raise GraphConstructionError(
                f"pair ({li}, {lj}) at distance {dist!r} is within margin {tolcfg.margin} of a boundary of "
                f"{spec.describe()}", pair=(i, j), distance=dist)
        if cls is DistanceClass.EDGE:
            edges.append((i, j))

    graph = GeometricGraph(points=tuple(points), edges=tuple(edges), demands=demands,
                           labels=tuple(labels) if labels is not None else None, interval=spec, name=name)
    logger.info(f"[GRAPH] Built interval graph {name or '<unnamed>'}: {graph.n} vertices, "
                f"{len(graph.edges)} edges, d={spec.d:.9f}")
    return graph


def circulant(spec: CirculantSpec) -> GeometricGraph:
    """Абстрактный циркулянт: ребра {i, i + o mod n} для каждого смещения o"""
    g = nx.circulant_graph(spec.n, sorted(spec.offsets))
    offsets = ",".join(str(o) for o in sorted(spec.offsets))
    return GeometricGraph(points=(), edges=tuple(g.edges()), demands=(1,) * spec.n,
                          name=f"C{spec.n}({offsets})")


def build_rim18() -> GeometricGraph:
    """Обод: циркулянт C18(3,4) на единичной окружности, нумерация по часовой стрелке"""
    abstract = circulant(CirculantSpec(RIM_SIZE, frozenset(RIM_OFFSETS)))
    return replace(abstract, points=tuple(clockwise_layout(RIM_SIZE)),
                   labels=tuple(range(1, RIM_SIZE + 1)), name="rim18")


def build_rim18_bichromatic(label: int = 1) -> GeometricGraph:
    """Обод с одной двухцветной вершиной"""
    rim = build_rim18()
    return replace(rim.with_demands({rim.index_of(label): 2}), name=f"rim18+bi{label}")


def check_theorem_interval(d: float, tolcfg: ToleranceConfig = ToleranceConfig()) -> None:
    """d должно лежать в (2 sin(2pi/9), sqrt(7)/2]"""
    if not (math.isfinite(d) and LOWER_D < d <= ISBELL_D + tolcfg.tol):
        raise DomainError(f"d={d} is outside the theorem interval ({LOWER_D:.9f}, {ISBELL_D:.9f}]")


def build_paper19(d: float, tolcfg: ToleranceConfig = ToleranceConfig()) -> GeometricGraph:
    """
    19-вершинный 7-хроматический граф: 18 вершин на единичной окружности и центр

    Центр (индекс 18) трехцветный, вершина обода 1 (индекс 0) двухцветная.
    Рекомендуется d >= 2 sin(2pi/9) + 1e-6, иначе классификация ребер шага 4 неоднозначна.
    """
    check_theorem_interval(d, tolcfg)
    points = clockwise_layout(RIM_SIZE) + [Point2(0.0, 0.0)]
    demands = [1] * (RIM_SIZE + 1)
    demands[0] = 2
    demands[RIM_SIZE] = 3
    labels = list(range(1, RIM_SIZE + 2))
    return build_interval_graph(points, interval_from_d(d), tolcfg, demands, labels, name="paper19")


def simplex_lower_bound(n: int) -> int:
    """Нижняя оценка для R^n с eps > 0: C(n+2, 2) = (n+1)(n+2)/2"""
    return (n + 1) * (n + 2) // 2


def simplex_instance(n: int) -> GeometricGraph:
    """Полный граф на n+1 вершинах с кратностями n+1, n, ..., 1"""
    if not 0 <= n <= MAX_SIMPLEX_DIMENSION:
        raise DomainError(f"simplex dimension must lie in [0, {MAX_SIMPLEX_DIMENSION}], got {n}")
    size = n + 1
    demands = tuple(range(size, 0, -1))
    edges = tuple(combinations(range(size), 2))
    points: Tuple[Point2, ...] = ()
    if n <= 2:
        unit_simplex = [Point2(0.0, 0.0), Point2(1.0, 0.0), Point2(0.5, math.sqrt(3.0) / 2.0)]
        points = tuple(unit_simplex[:size])
    return GeometricGraph(points=points, edges=edges, demands=demands, name=f"simplex{n}")


def build_two_ring_candidate(n1: int, n2: int, d: float, phase2: float = 0.0,
                             tolcfg: ToleranceConfig = ToleranceConfig()) -> GeometricGraph:
    """
    Кандидат двухкольцевой конструкции: кольца радиусов 1 и d плюс трехцветный центр

    Параметры колец не фиксируются; граф строится классификацией расстояний.
    """
    spec = interval_from_d(d)
    points = two_ring_layout(n1, n2, 1.0, d, phase2) + [Point2(0.0, 0.0)]
    demands = [1] * (n1 + n2) + [3]
    return build_interval_graph(points, spec, tolcfg, demands, name=f"two-ring({n1},{n2})")
