"""
Машина вывода для 3-раскрасок обода C18(3,4)
Исключение кандидатов (правило 1 и его обобщение), продление серий (правило 2),
границы серий (правило 3), опровержение шаблонов и вывод всех 3-раскрасок
"""

from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple

from exceptions import DomainError, InternalConsistencyError, LemmaGateError
from graphs import RIM_SIZE, build_rim18
from interfaces import SetColoring
from logger_config import setup_unified_logger
from solver import SetColoringSolver

logger = setup_unified_logger("deduction")

PALETTE = frozenset({1, 2, 3})
LABELS = tuple(range(1, RIM_SIZE + 1))
MAX_PATTERN_LENGTH = 9
SHORT_PATTERN_START = 7
LONG_PATTERN_START = 5

SINGLETON_PATTERNS = ("123", "121")
MIXED_PATTERN = "331122233"

RUN_TOO_LONG = "run-too-long"
BOUNDARY_REPEAT = "boundary-repeat"

_RIM = build_rim18()
NEIGHBORS: Tuple[FrozenSet[int], ...] = tuple(
    frozenset(w + 1 for w in _RIM.adjacency[v]) for v in range(RIM_SIZE))

Edge = Tuple[int, int]


def rim_label(label: int) -> int:
    """Метка по модулю 18 в диапазоне 1..18"""
    return (label - 1) % RIM_SIZE + 1


def neighbors(label: int) -> FrozenSet[int]:
    return NEIGHBORS[rim_label(label) - 1]


def adjacent(u: int, v: int) -> bool:
    return rim_label(v) in neighbors(u)


@dataclass(frozen=True)
class DeductionState:
    """
    Частичная 3-раскраска обода

    domains  - кандидаты цветов вершины (метка i -> domains[i-1])
    demands  - 1 или 2 (двухцветная вершина)
    Вершина определена, когда число кандидатов равно кратности.
    """
    domains: Tuple[FrozenSet[int], ...] = (PALETTE,) * RIM_SIZE
    demands: Tuple[int, ...] = (1,) * RIM_SIZE
    no_singleton_proved: bool = False
    conflict_edge: Optional[Edge] = None
    exhausted_vertex: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, 'domains', tuple(frozenset(d) for d in self.domains))
        object.__setattr__(self, 'demands', tuple(int(m) for m in self.demands))
        if len(self.domains) != RIM_SIZE or len(self.demands) != RIM_SIZE:
            raise DomainError(f"deduction state needs {RIM_SIZE} vertices")
        for label, domain in zip(LABELS, self.domains):
            if not domain <= PALETTE:
                raise DomainError(f"vertex {label}: colors {sorted(domain)} outside palette {{1,2,3}}")
        for label, m in zip(LABELS, self.demands):
            if m not in (1, 2):
                raise DomainError(f"vertex {label}: demand must be 1 or 2, got {m}")

    @classmethod
    def initial(cls, assignments: Optional[Dict[int, Iterable[int]]] = None,
                demands: Optional[Dict[int, int]] = None,
                no_singleton_proved: bool = False) -> 'DeductionState':
        domains = [PALETTE] * RIM_SIZE
        for label, colors in (assignments or {}).items():
            domains[rim_label(label) - 1] = frozenset(colors)
        demand_list = [1] * RIM_SIZE
        for label, m in (demands or {}).items():
            demand_list[rim_label(label) - 1] = m
        return cls(tuple(domains), tuple(demand_list), no_singleton_proved)

    @classmethod
    def from_set_coloring(cls, coloring: SetColoring) -> 'DeductionState':
        """Раскраска цветами 0..2 -> состояние с цветами 1..3"""
        if len(coloring) != RIM_SIZE:
            raise DomainError(f"expected a coloring of {RIM_SIZE} vertices")
        return cls(tuple(frozenset(c + 1 for c in s) for s in coloring.assignment),
                   tuple(len(s) for s in coloring.assignment))

    def domain(self, label: int) -> FrozenSet[int]:
        return self.domains[rim_label(label) - 1]

    def demand(self, label: int) -> int:
        return self.demands[rim_label(label) - 1]

    def is_determined(self, label: int) -> bool:
        return len(self.domain(label)) == self.demand(label)

    def colors(self, label: int) -> Optional[FrozenSet[int]]:
        return self.domain(label) if self.is_determined(label) else None

    def single_color(self, label: int) -> Optional[int]:
        """Цвет одноцветной определенной вершины"""
        if self.demand(label) == 1 and self.is_determined(label):
            return next(iter(self.domain(label)))
        return None

    @property
    def assignment(self) -> Tuple[FrozenSet[int], ...]:
        """Назначенные множества; пустое множество - цвет неизвестен"""
        return tuple(self.domain(v) if self.is_determined(v) else frozenset() for v in LABELS)

    @property
    def inconsistent(self) -> bool:
        return self.conflict_edge is not None or self.exhausted_vertex is not None

    @property
    def is_complete(self) -> bool:
        return not self.inconsistent and all(self.is_determined(v) for v in LABELS)

    def undetermined(self) -> List[int]:
        return [v for v in LABELS if len(self.domain(v)) > self.demand(v)]

    def live_candidates(self, label: int) -> FrozenSet[int]:
        """Кандидаты за вычетом цветов определенных соседей"""
        blocked = set()
        for w in neighbors(label):
            colors = self.colors(w)
            if colors is not None:
                blocked |= colors
        return self.domain(label) - blocked

    def with_domain(self, label: int, domain: Iterable[int]) -> 'DeductionState':
        domains = list(self.domains)
        domains[rim_label(label) - 1] = frozenset(domain)
        return replace(self, domains=tuple(domains))

    def assign(self, label: int, colors: Iterable[int]) -> 'DeductionState':
        return self.with_domain(label, colors)

    def with_lemma(self) -> 'DeductionState':
        return replace(self, no_singleton_proved=True)

    def mark_conflict(self, edge: Edge) -> 'DeductionState':
        return replace(self, conflict_edge=(min(edge), max(edge)))

    def mark_exhausted(self, label: int) -> 'DeductionState':
        return replace(self, exhausted_vertex=rim_label(label))

    def permute_colors(self, mapping: Dict[int, int]) -> 'DeductionState':
        full = {c: mapping.get(c, c) for c in PALETTE}
        return replace(self, domains=tuple(frozenset(full[c] for c in d) for d in self.domains))

    def to_set_coloring(self) -> SetColoring:
        if not self.is_complete:
            raise DomainError("only complete consistent states convert to colorings")
        return SetColoring(tuple(frozenset(c - 1 for c in d) for d in self.domains))

    def describe(self) -> str:
        """Строка состояния: цифра, [12] для двухцветной вершины, '.' для неопределенной"""
        cells = []
        for v in LABELS:
            colors = self.colors(v)
            if colors is None:
                cells.append(".")
            elif len(colors) == 1:
                cells.append(str(next(iter(colors))))
            else:
                cells.append("[" + "".join(str(c) for c in sorted(colors)) + "]")
        return " ".join(cells)


def find_edge_conflict(state: DeductionState) -> Optional[Edge]:
    """Первое (в лексикографическом порядке) ребро с пересекающимися определенными множествами"""
    for u, v in _RIM.edges:
        a, b = state.colors(u + 1), state.colors(v + 1)
        if a is not None and b is not None and a & b:
            return (u + 1, v + 1)
    return None


def propagate(state: DeductionState) -> DeductionState:
    """
    Исключение цветов определенных соседей до неподвижной точки

    Правило 1 - частный случай: вершина, смежная двум вершинам разных цветов, получает третий.
    Каждый раунд исключения считается по состоянию начала раунда.
    """
    if state.inconsistent:
        return state
    current = state
    while True:
        edge = find_edge_conflict(current)
        if edge is not None:
            return current.mark_conflict(edge)
        for v in LABELS:
            if len(current.domain(v)) < current.demand(v):
                return current.mark_exhausted(v)

        updated = tuple(current.live_candidates(v) if not current.is_determined(v) else current.domain(v)
                        for v in LABELS)
        if updated == current.domains:
            return current
        current = replace(current, domains=updated)


def _extend_once(state: DeductionState) -> DeductionState:
    current = state
    for i in LABELS:
        j = rim_label(i + 1)
        a, b = state.single_color(i), state.single_color(j)
        if a is None or b is None or a == b:
            continue
        for target, color in ((rim_label(i - 1), a), (rim_label(j + 1), b)):
            domain = current.domain(target)
            if color not in domain:
                logger.debug(f"[PROOF] Rule 2 forces color {color} on vertex {target}, candidates {sorted(domain)}")
                return current.mark_exhausted(target)
            current = current.with_domain(target, {color})
    return current


def run_extend(state: DeductionState) -> DeductionState:
    """
    Правило 2 совместно с исключением: для определенной пары (i, i+1) разных цветов
    цвет i получает i-1, цвет i+1 получает i+2

    Допустимо только после доказательства леммы об отсутствии одиночных вершин.
    """
    if not state.no_singleton_proved:
        raise LemmaGateError("rule 2 requires the no-singleton lemma (patterns 123 and 121 refuted)")
    if any(m != 1 for m in state.demands):
        raise DomainError("rule 2 applies to rim states without bi-chromatic vertices")
    current = state
    while True:
        current = propagate(current)
        if current.inconsistent:
            return current
        extended = _extend_once(current)
        if extended == current:
            return current
        current = extended


@dataclass(frozen=True)
class RunViolation:
    """Нарушение правила 3"""
    kind: str
    vertices: Tuple[int, ...]


def check_run_bounds(state: DeductionState) -> List[RunViolation]:
    """Серии длины >= 4 и завершенные пары/тройки, ограниченные вершинами одного цвета"""
    colors = [state.single_color(v) for v in LABELS]
    n = RIM_SIZE
    if colors[0] is not None and all(c == colors[0] for c in colors):
        return [RunViolation(RUN_TOO_LONG, LABELS)]

    violations = []
    for i in range(n):
        c = colors[i]
        if c is None or colors[i - 1] == c:
            continue
        length = 1
        while colors[(i + length) % n] == c:
            length += 1
        run = tuple((i + k) % n + 1 for k in range(length))
        if length >= 4:
            violations.append(RunViolation(RUN_TOO_LONG, run))
        elif length >= 2:
            before, after = colors[i - 1], colors[(i + length) % n]
            if before is not None and before == after:
                violations.append(RunViolation(BOUNDARY_REPEAT, ((i - 1) % n + 1,) + run + ((i + length) % n + 1,)))
    return violations


def find_distinct_window(state: DeductionState, vertex: int) -> Optional[Tuple[int, int, int]]:
    """Окно из трех последовательных вершин с тремя разными цветами, содержащее vertex"""
    for start in (vertex - 2, vertex - 1, vertex):
        window = tuple(rim_label(start + k) for k in range(3))
        colors = [state.single_color(v) for v in window]
        if None not in colors and len(set(colors)) == 3:
            return window
    return None


def normalize_word(colors: Iterable[int]) -> str:
    """Переименование цветов в порядке первого появления: 213 -> 123"""
    colors = list(colors)
    names: Dict[int, int] = {}
    for c in colors:
        names.setdefault(c, len(names) + 1)
    return "".join(str(names[c]) for c in colors) if names else ""


def pattern_start(length: int) -> int:
    """Каноническое положение шаблона на ободе (ободом допускаются повороты)"""
    return SHORT_PATTERN_START if length <= 3 else LONG_PATTERN_START


@dataclass(frozen=True)
class RefutationConfig:
    use_run_extend: bool = False
    no_singleton_proved: bool = False
    max_nodes: int = 100_000


@dataclass
class ProofNode:
    """Узел дерева опровержения: состояние после вывода и, если нужно, ветвление"""
    state: DeductionState
    branch_vertex: Optional[int] = None
    children: List[Tuple[FrozenSet[int], 'ProofNode']] = field(default_factory=list)
    reduction: Optional[Tuple[int, int, int]] = None

    @property
    def closed(self) -> bool:
        if self.branch_vertex is None:
            return self.state.inconsistent
        return all(child.closed for _, child in self.children)

    def branch_vertices(self) -> List[int]:
        if self.branch_vertex is None:
            return []
        result = [self.branch_vertex]
        for _, child in self.children:
            result.extend(child.branch_vertices())
        return result


@dataclass
class ProofTree:
    pattern: str
    start: int
    root: ProofNode
    completion: Optional[DeductionState] = None

    @property
    def refuted(self) -> bool:
        return self.completion is None and self.root.closed

    def branch_vertices(self) -> List[int]:
        return self.root.branch_vertices()


def _close(state: DeductionState, config: RefutationConfig) -> DeductionState:
    return run_extend(state) if config.use_run_extend else propagate(state)


def _options(state: DeductionState, label: int) -> List[FrozenSet[int]]:
    return [frozenset(c) for c in combinations(sorted(state.domain(label)), state.demand(label))]


def _parse_pattern(pattern: str) -> List[int]:
    if not 1 <= len(pattern) <= MAX_PATTERN_LENGTH or any(ch not in "123" for ch in pattern):
        raise DomainError(f"pattern must be 1..{MAX_PATTERN_LENGTH} characters over 1,2,3, got {pattern!r}")
    return [int(ch) for ch in pattern]


def refute_pattern(pattern: str, config: RefutationConfig = RefutationConfig()) -> ProofTree:
    """
    Опровержение шаблона: шаблон ставится в каноническое положение, затем вывод чередуется
    с ветвлением по вершине с наименьшим числом кандидатов (при равенстве - ближайшей после шаблона)

    Возвращает закрытое дерево или раскраску, содержащую шаблон.
    """
    word = _parse_pattern(pattern)
    if config.use_run_extend and not config.no_singleton_proved:
        raise LemmaGateError("rule 2 requires the no-singleton lemma (patterns 123 and 121 refuted)")
    start = pattern_start(len(word))
    end = rim_label(start + len(word) - 1)
    state = DeductionState.initial({start + k: {c} for k, c in enumerate(word)},
                                   no_singleton_proved=config.no_singleton_proved)
    nodes = 0

    def expand(current: DeductionState) -> Tuple[ProofNode, Optional[DeductionState]]:
        nonlocal nodes
        nodes += 1
        if nodes > config.max_nodes:
            raise DomainError(f"refutation of {pattern} exceeded {config.max_nodes} nodes")
        current = _close(current, config)
        if current.inconsistent:
            return ProofNode(current), None
        open_vertices = current.undetermined()
        if not open_vertices:
            return ProofNode(current), current
        vertex = min(open_vertices,
                     key=lambda v: (len(current.domain(v)) - current.demand(v), (v - end) % RIM_SIZE))
        node = ProofNode(current, branch_vertex=vertex)
        for option in _options(current, vertex):
            child, completion = expand(current.assign(vertex, option))
            if child.branch_vertex is None and child.state.inconsistent:
                child.reduction = find_distinct_window(child.state, vertex)
            node.children.append((option, child))
            if completion is not None:
                return node, completion
        return node, None

    root, completion = expand(state)
    tree = ProofTree(pattern, start, root, completion)
    outcome = "refuted" if tree.refuted else f"completion {completion.describe()}"
    logger.info(f"[PROOF] Pattern {pattern} at vertex {start}: {outcome} ({nodes} nodes)")
    return tree


def _completions(state: DeductionState) -> Iterator[DeductionState]:
    current = run_extend(state)
    if current.inconsistent:
        return
    open_vertices = current.undetermined()
    if not open_vertices:
        yield current
        return
    vertex = min(open_vertices, key=lambda v: (len(current.domain(v)), v))
    for option in _options(current, vertex):
        yield from _completions(current.assign(vertex, option))


def derive_all_3colorings(solver: Optional[SetColoringSolver] = None) -> List[DeductionState]:
    """
    Все правильные 3-раскраски обода выводом с ветвлением

    Сначала опровергаются одиночные серии (123, 121) и смешение пар с тройками,
    затем перебор идет с правилом 2. Результат сверяется с полным перебором решателя.
    """
    for pattern in SINGLETON_PATTERNS:
        if not refute_pattern(pattern).refuted:
            raise InternalConsistencyError(f"pattern {pattern} is not refuted; the no-singleton lemma fails")
    lemma = RefutationConfig(use_run_extend=True, no_singleton_proved=True)
    if not refute_pattern(MIXED_PATTERN, lemma).refuted:
        raise InternalConsistencyError(f"pattern {MIXED_PATTERN} is not refuted")

    derived = sorted(_completions(DeductionState.initial(no_singleton_proved=True)),
                     key=lambda s: s.to_set_coloring().sort_key())

    solver = solver or SetColoringSolver()
    oracle = {c.sort_key() for c in solver.enumerate_colorings(build_rim18(), 3)}
    found = {s.to_set_coloring().sort_key() for s in derived}
    if found != oracle or len(found) != len(derived):
        raise InternalConsistencyError(
            f"deduction produced {len(derived)} colorings, solver enumeration {len(oracle)}")
    logger.info(f"[PROOF] Derived {len(derived)} proper 3-colorings of the rim, matching solver enumeration")
    return derived
