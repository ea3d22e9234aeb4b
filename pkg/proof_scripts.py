"""
Сценарии доказательства для обода C18(3,4)

Каждая стрелка {i,j} => k записана в том порядке, в каком она идет в рассуждении.
Сценарий только перечисляет шаги; каждый шаг проверяется машиной вывода при воспроизведении.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, Iterable, Optional, Tuple

Edge = Tuple[int, int]


class StepKind(Enum):
    ASSIGN = "Assign"
    PROPAGATE = "Propagate"
    RUN_EXTEND = "RunExtend"
    BRANCH = "Branch"
    CITE_REFUTED_PATTERN = "CiteRefutedPattern"
    CONTRADICTION = "Contradiction"


TERMINAL_KINDS = frozenset({StepKind.CONTRADICTION, StepKind.CITE_REFUTED_PATTERN, StepKind.BRANCH})


@dataclass(frozen=True)
class ProofBranch:
    """
    Ветвь разбора случаев

    option   - цвета вершины ветвления в этой ветви
    symmetry - перестановка двух цветов, переводящая ветвь в уже разобранную
    """
    option: FrozenSet[int]
    steps: Tuple['ProofStep', ...] = ()
    symmetry: Optional[Tuple[int, int]] = None


@dataclass(frozen=True)
class ProofStep:
    """
    Шаг сценария

    cited    - вершины-основания (для ссылки на шаблон - окно из последовательных вершин)
    targets  - вершины, цвета которых выводятся
    colors   - назначаемые цвета (Assign) или ожидаемые кандидаты после шага (Propagate)
    """
    kind: StepKind
    cited: Tuple[int, ...] = ()
    targets: Tuple[int, ...] = ()
    colors: FrozenSet[int] = frozenset()
    branches: Tuple[ProofBranch, ...] = ()
    case: Optional[str] = None
    justification: str = ""


@dataclass(frozen=True)
class ProofScript:
    case_id: str
    title: str
    initial: Tuple[Tuple[int, FrozenSet[int]], ...]
    steps: Tuple[ProofStep, ...]
    demands: Tuple[Tuple[int, int], ...] = ()
    expected_contradiction: Optional[Edge] = None
    expected_reductions: Tuple[str, ...] = ()
    establishes: Optional[str] = None
    assumes_no_singleton: bool = False

    @property
    def initial_assignments(self) -> Dict[int, FrozenSet[int]]:
        return dict(self.initial)


def arrow(cited: Iterable[int], targets: Iterable[int], *expected: int, justification: str = "") -> ProofStep:
    return ProofStep(StepKind.PROPAGATE, tuple(cited), tuple(targets), frozenset(expected),
                     justification=justification)


def extend(first: int, targets: Iterable[int]) -> ProofStep:
    return ProofStep(StepKind.RUN_EXTEND, (first, first + 1), tuple(targets), justification="rule 2")


def assign(vertex: int, *colors: int) -> ProofStep:
    return ProofStep(StepKind.ASSIGN, targets=(vertex,), colors=frozenset(colors), justification="hypothesis")


def branch(vertex: int, *branches: ProofBranch, justification: str = "") -> ProofStep:
    return ProofStep(StepKind.BRANCH, targets=(vertex,), branches=tuple(branches), justification=justification)


def cite(window: Iterable[int], case: str) -> ProofStep:
    return ProofStep(StepKind.CITE_REFUTED_PATTERN, cited=tuple(window), case=case)


def contradiction(u: int, v: int) -> ProofStep:
    return ProofStep(StepKind.CONTRADICTION, cited=(u, v))


def _initial(colors_from: int, word: str) -> Tuple[Tuple[int, FrozenSet[int]], ...]:
    return tuple((colors_from + k, frozenset({int(ch)})) for k, ch in enumerate(word))


CASE_A = ProofScript(
    case_id="a",
    title="three distinct consecutive colors 123",
    initial=_initial(7, "123"),
    steps=(
        arrow((7, 8), (4, 11), 3),
        arrow((8, 9), (5, 12), 1),
        arrow((4, 5), (1,), 2),
        arrow((11, 12), (15,), 2),
        contradiction(1, 15),
    ),
    expected_contradiction=(1, 15),
    establishes="123",
)

CASE_B = ProofScript(
    case_id="b",
    title="single vertex between two equal colors 121",
    initial=_initial(7, "121"),
    steps=(
        arrow((7, 8), (11,), 3),
        branch(10,
               ProofBranch(frozenset({2}), (cite((9, 10, 11), "a"),)),
               ProofBranch(frozenset({3}), (cite((8, 9, 10), "a"),))),
    ),
    expected_reductions=("a",),
    establishes="121",
)

CASE_C = ProofScript(
    case_id="c",
    title="pair next to a triple 331122233",
    initial=_initial(5, "331122233"),
    steps=(
        arrow((6, 7), (3,), 2),
        arrow((11, 12), (15,), 1),
        arrow((3, 15), (18,), 3),
        arrow((7, 18), (4,), 2),
        arrow((4, 5), (1,), 1),
        contradiction(1, 15),
    ),
    expected_contradiction=(1, 15),
    establishes="331122233",
)

CASE_D = ProofScript(
    case_id="d",
    title="bi-chromatic vertex 1 with colors 1 and 2",
    initial=((1, frozenset({1, 2})),),
    demands=((1, 2),),
    steps=(
        arrow((1,), (4, 5, 15, 16), 3),
        arrow((4,), (7, 8), 1, 2, justification="exclusion"),
        arrow((5,), (9,), 1, 2, justification="exclusion"),
        arrow((15,), (11, 12), 1, 2, justification="exclusion"),
        arrow((16,), (13,), 1, 2, justification="exclusion"),
        branch(7,
               ProofBranch(frozenset({1}), (
                   arrow((7, 15), (11,), 2),
                   arrow((5, 11), (8,), 1),
                   arrow((8, 15), (12,), 2),
                   arrow((5, 12), (9,), 1),
                   arrow((9, 16), (13,), 2),
                   arrow((7, 13), (10,), 3),
                   arrow((9, 10), (6,), 2),
                   arrow((10, 11), (14,), 1),
                   arrow((6, 7), (3,), 3),
                   arrow((13, 14), (17,), 3),
                   contradiction(3, 17),
               )),
               ProofBranch(frozenset({2}), symmetry=(1, 2)),
               justification="without loss of generality"),
    ),
    expected_contradiction=(3, 17),
)

SCRIPTS: Dict[str, ProofScript] = {script.case_id: script for script in (CASE_A, CASE_B, CASE_C, CASE_D)}

# Случаи, опровергающие одиночные серии (основание правила 2)
NO_SINGLETON_CASES = ("a", "b")
