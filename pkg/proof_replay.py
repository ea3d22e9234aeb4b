"""
Воспроизведение сценариев доказательства
Каждый шаг сценария проверяется по текущему состоянию; результат - отчет с противоречием,
трассой шагов, ссылками на другие случаи и вершинами, не участвующими в рассуждении
"""

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import Rectangle  # noqa: E402

from deduction import (LABELS, DeductionState, adjacent, neighbors, normalize_word, rim_label)
from exceptions import DomainError, LemmaGateError, ScriptValidationError
from graph_io import color_hex, figure_to_svg
from interfaces import IPerformanceMonitor
from logger_config import setup_unified_logger
from proof_scripts import (NO_SINGLETON_CASES, SCRIPTS, TERMINAL_KINDS, ProofScript, ProofStep, StepKind,
                           assign)

Edge = Tuple[int, int]

CONFLICT_FILL = "#bbbbbb"


@dataclass(frozen=True)
class TraceEntry:
    number: int
    depth: int
    kind: StepKind
    text: str
    rule: str
    state: str


@dataclass(frozen=True)
class LeafState:
    """Конечное состояние закрытой ветви (строка диаграммы)"""
    label: str
    state: DeductionState
    hypotheses: FrozenSet[int]
    conflict: Tuple[int, ...]


@dataclass
class ReplayReport:
    case_id: str
    title: str
    closed: bool
    contradiction_edges: List[Edge] = field(default_factory=list)
    reduces_to: Tuple[str, ...] = ()
    trace: List[TraceEntry] = field(default_factory=list)
    uninvolved: FrozenSet[int] = frozenset()
    leaves: List[LeafState] = field(default_factory=list)
    failure: Optional[str] = None

    @property
    def contradiction_edge(self) -> Optional[Edge]:
        return self.contradiction_edges[0] if self.contradiction_edges else None

    def summary(self) -> str:
        if not self.closed:
            return f"case {self.case_id}: NOT closed ({self.failure})"
        parts = []
        if self.contradiction_edge is not None:
            u, v = self.contradiction_edge
            parts.append(f"contradiction: vertices {u},{v}")
        if self.reduces_to:
            parts.append("reduces to " + ", ".join(f"case {c}" for c in self.reduces_to))
        return f"case {self.case_id}: " + "; ".join(parts)

    def transcript(self) -> str:
        """Текстовая трасса: номер шага, правило, вершины, состояние после шага"""
        lines = [f"case {self.case_id}: {self.title}",
                 "vertices: " + " ".join(str(v) for v in LABELS)]
        for entry in self.trace:
            indent = "  " * entry.depth
            lines.append(f"step {entry.number:>2}  {indent}{entry.kind.value:<18} {entry.text:<28} {entry.rule}")
            if entry.state:
                lines.append(f"          {indent}state: {entry.state}")
        lines.append("uninvolved vertices: " + (", ".join(str(v) for v in sorted(self.uninvolved)) or "none"))
        lines.append(self.summary())
        return "\n".join(lines) + "\n"


def _fmt(vertices) -> str:
    return "{" + ",".join(str(v) for v in vertices) + "}"


class _Replay:
    """Состояние одного воспроизведения: счетчик шагов и накопленный отчет"""

    def __init__(self, script: ProofScript, report: ReplayReport):
        self.script = script
        self.report = report
        self.number = 0
        self.involved: Set[int] = set()
        self.reductions: List[str] = []

    def next_number(self) -> int:
        self.number += 1
        return self.number

    def fail(self, message: str) -> None:
        raise ScriptValidationError(f"case {self.script.case_id}: {message}", self.number)

    def record(self, depth: int, step: ProofStep, text: str, rule: str, state: Optional[DeductionState]) -> None:
        self.report.trace.append(TraceEntry(self.number, depth, step.kind, text, rule,
                                            state.describe() if state is not None else ""))


class ProofReplayer:
    """
    Проверка сценариев доказательства машиной вывода

    Ссылки на опровергнутые шаблоны разрешаются воспроизведением соответствующего случая.
    """

    def __init__(self, scripts: Optional[Dict[str, ProofScript]] = None,
                 performance_monitor: Optional[IPerformanceMonitor] = None):
        self.logger = setup_unified_logger("proof_replay")
        self.scripts = dict(scripts) if scripts is not None else dict(SCRIPTS)
        self.performance_monitor = performance_monitor
        self._reports: Dict[str, ReplayReport] = {}
        self._in_progress: Set[str] = set()

    def replay_all(self) -> List[ReplayReport]:
        return [self.replay_case(case_id) for case_id in sorted(self.scripts)]

    def replay_case(self, case_id: str) -> ReplayReport:
        if case_id not in self.scripts:
            raise DomainError(f"unknown case {case_id!r}; known cases: {', '.join(sorted(self.scripts))}")
        if case_id in self._reports:
            return self._reports[case_id]
        if case_id in self._in_progress:
            raise ScriptValidationError(f"case {case_id}: circular citation")

        self._in_progress.add(case_id)
        try:
            report = self._replay(self.scripts[case_id])
        finally:
            self._in_progress.discard(case_id)
        self._reports[case_id] = report
        if self.performance_monitor is not None:
            self.performance_monitor.track_counter("proof_steps", len(report.trace))
        status = "[SUCCESS]" if report.closed else "[FAIL]"
        self.logger.info(f"[PROOF] {status} {report.summary()}")
        return report

    def _replay(self, script: ProofScript) -> ReplayReport:
        self.logger.info(f"[PROOF] Replaying case {script.case_id}: {script.title}")
        report = ReplayReport(script.case_id, script.title, closed=False)
        run = _Replay(script, report)

        state = DeductionState.initial(demands=dict(script.demands))
        if script.assumes_no_singleton:
            for dependency in NO_SINGLETON_CASES:
                if not self.replay_case(dependency).closed:
                    run.fail(f"no-singleton lemma unavailable: case {dependency} is not closed")
            state = state.with_lemma()

        hypotheses = set()
        for label, colors in script.initial:
            state = self._apply(run, assign(label, *sorted(colors)), state, 0)
            hypotheses.add(rim_label(label))

        failure = self._run_steps(run, script.steps, state, 0, frozenset(hypotheses), "")
        if failure is None and script.expected_contradiction is not None:
            expected = tuple(sorted(script.expected_contradiction))
            if any(edge != expected for edge in report.contradiction_edges) or not report.contradiction_edges:
                failure = f"expected contradiction on {expected}, got {report.contradiction_edges}"
        if failure is None and tuple(sorted(set(run.reductions))) != tuple(sorted(script.expected_reductions)):
            failure = f"expected reductions {script.expected_reductions}, got {tuple(run.reductions)}"

        report.closed = failure is None
        report.failure = failure
        report.reduces_to = tuple(dict.fromkeys(run.reductions))
        report.uninvolved = frozenset(LABELS) - frozenset(run.involved)
        return report

    def _run_steps(self, run: _Replay, steps, state: DeductionState, depth: int,
                   hypotheses: FrozenSet[int], label: str) -> Optional[str]:
        """Выполняет шаги ветви; возвращает причину незакрытия или None"""
        for position, step in enumerate(steps):
            if step.kind is StepKind.BRANCH:
                if position != len(steps) - 1:
                    run.next_number()
                    run.fail("branching must be the last step of its branch")
                return self._branch(run, step, state, depth, hypotheses, label)

            state = self._apply(run, step, state, depth)
            if step.kind in TERMINAL_KINDS:
                if position != len(steps) - 1:
                    run.fail("steps follow a closed branch")
                conflict = step.cited if step.kind is StepKind.CONTRADICTION else ()
                run.report.leaves.append(LeafState(label or run.script.case_id, state, hypotheses, conflict))
                return None
        return f"branch {label or 'main'} ends without a contradiction"

    def _branch(self, run: _Replay, step: ProofStep, state: DeductionState, depth: int,
                hypotheses: FrozenSet[int], label: str) -> Optional[str]:
        number = run.next_number()
        if len(step.targets) != 1:
            run.fail("branch needs exactly one vertex")
        vertex = rim_label(step.targets[0])
        if state.is_determined(vertex):
            run.fail(f"branch vertex {vertex} is already determined")
        live = state.live_candidates(vertex)
        options = [b.option for b in step.branches]
        covered: Set[int] = set()
        for option in options:
            if len(option) != state.demand(vertex):
                run.fail(f"branch option {_fmt(sorted(option))} does not match demand {state.demand(vertex)}")
            if covered & option:
                run.fail(f"branch options overlap on {_fmt(sorted(covered & option))}")
            covered |= option
        if covered != live:
            run.fail(f"branch options {_fmt(sorted(covered))} do not partition live candidates {_fmt(sorted(live))}")

        run.involved.add(vertex)
        text = f"vertex {vertex}: " + " | ".join(_fmt(sorted(o)) for o in options)
        run.record(depth, step, text, step.justification or "case split", None)

        direct = {b.option for b in step.branches if b.symmetry is None}
        failure = None
        for option_branch in step.branches:
            sub_label = f"{label + ', ' if label else ''}{vertex}={_fmt(sorted(option_branch.option))}"
            if option_branch.symmetry is not None:
                self._check_symmetry(run, state, option_branch.symmetry, option_branch.option, direct, number)
                run.report.trace.append(TraceEntry(number, depth + 1, StepKind.BRANCH, sub_label,
                                                   f"symmetric to swap {option_branch.symmetry}", ""))
                continue
            branch_state = state.assign(vertex, option_branch.option)
            branch_failure = self._run_steps(run, option_branch.steps, branch_state, depth + 1,
                                             hypotheses | {vertex}, sub_label)
            failure = failure or branch_failure
        return failure

    @staticmethod
    def _check_symmetry(run: _Replay, state: DeductionState, swap: Tuple[int, int], option: FrozenSet[int],
                        direct: Set[FrozenSet[int]], number: int) -> None:
        a, b = swap
        mapping = {a: b, b: a}
        if state.permute_colors(mapping) != state:
            raise ScriptValidationError(f"case {run.script.case_id}: color swap {swap} is not a symmetry of the state",
                                        number)
        image = frozenset(mapping.get(c, c) for c in option)
        if image not in direct:
            raise ScriptValidationError(
                f"case {run.script.case_id}: swap {swap} maps {_fmt(sorted(option))} to no replayed branch", number)

    def _apply(self, run: _Replay, step: ProofStep, state: DeductionState, depth: int) -> DeductionState:
        run.next_number()
        handler = {
            StepKind.ASSIGN: self._assign,
            StepKind.PROPAGATE: self._propagate,
            StepKind.RUN_EXTEND: self._run_extend,
            StepKind.CITE_REFUTED_PATTERN: self._cite,
            StepKind.CONTRADICTION: self._contradiction,
        }[step.kind]
        return handler(run, step, state, depth)

    def _assign(self, run: _Replay, step: ProofStep, state: DeductionState, depth: int) -> DeductionState:
        vertex = rim_label(step.targets[0])
        if state.is_determined(vertex):
            run.fail(f"vertex {vertex} is already determined")
        if not step.colors <= state.domain(vertex) or len(step.colors) != state.demand(vertex):
            run.fail(f"cannot assign {_fmt(sorted(step.colors))} to vertex {vertex} "
                     f"(candidates {_fmt(sorted(state.domain(vertex)))}, demand {state.demand(vertex)})")
        state = state.assign(vertex, step.colors)
        run.involved.add(vertex)
        run.record(depth, step, f"vertex {vertex} <- {_fmt(sorted(step.colors))}", step.justification, state)
        return state

    def _propagate(self, run: _Replay, step: ProofStep, state: DeductionState, depth: int) -> DeductionState:
        forcers = [rim_label(v) for v in step.cited]
        if not forcers or not step.targets:
            run.fail("propagation needs cited vertices and targets")
        blocked: Set[int] = set()
        for v in forcers:
            colors = state.colors(v)
            if colors is None:
                run.fail(f"cited vertex {v} is not determined")
            blocked |= colors
        for target in (rim_label(t) for t in step.targets):
            missing = [v for v in forcers if not adjacent(target, v)]
            if missing:
                run.fail(f"vertex {target} is not adjacent to cited {_fmt(missing)}")
            if state.is_determined(target):
                run.fail(f"vertex {target} is already determined")
            result = state.domain(target) - blocked
            if result != step.colors:
                run.fail(f"{_fmt(forcers)} leave {_fmt(sorted(result))} on vertex {target}, "
                         f"script claims {_fmt(sorted(step.colors))}")
            if len(result) < state.demand(target):
                run.fail(f"vertex {target} has no candidates left; cite the contradiction instead")
            state = state.with_domain(target, result)
            run.involved.add(target)
        run.involved.update(forcers)

        distinct_pair = len(forcers) == 2 and len(blocked) == 2 and len(step.colors) == 1
        rule = step.justification or ("rule 1" if distinct_pair else "exclusion")
        text = f"{_fmt(forcers)} => {_fmt(rim_label(t) for t in step.targets)} = {_fmt(sorted(step.colors))}"
        run.record(depth, step, text, rule, state)
        return state

    def _run_extend(self, run: _Replay, step: ProofStep, state: DeductionState, depth: int) -> DeductionState:
        if not state.no_singleton_proved:
            raise LemmaGateError(f"case {run.script.case_id}: rule 2 used before the no-singleton lemma", run.number)
        if len(step.cited) != 2 or rim_label(step.cited[1]) != rim_label(step.cited[0] + 1):
            run.fail("rule 2 cites two consecutive vertices")
        i, j = (rim_label(v) for v in step.cited)
        a, b = state.single_color(i), state.single_color(j)
        if a is None or b is None or a == b:
            run.fail(f"rule 2 needs determined vertices {i},{j} of different colors")
        forced = {rim_label(i - 1): a, rim_label(j + 1): b}
        for target in (rim_label(t) for t in step.targets):
            if target not in forced:
                run.fail(f"rule 2 on {i},{j} does not reach vertex {target}")
            if forced[target] not in state.domain(target):
                run.fail(f"rule 2 forces color {forced[target]} on vertex {target}, which excludes it")
            state = state.with_domain(target, {forced[target]})
            run.involved.add(target)
        run.involved.update((i, j))
        text = f"{_fmt((i, j))} => {_fmt(rim_label(t) for t in step.targets)}"
        run.record(depth, step, text, "rule 2", state)
        return state

    def _cite(self, run: _Replay, step: ProofStep, state: DeductionState, depth: int) -> DeductionState:
        window = [rim_label(v) for v in step.cited]
        if any(rim_label(window[k] + 1) != window[k + 1] for k in range(len(window) - 1)):
            run.fail(f"cited window {_fmt(window)} is not consecutive")
        if any(m != 1 for m in state.demands):
            run.fail("refuted patterns apply to rim colorings without bi-chromatic vertices")
        colors = [state.single_color(v) for v in window]
        if None in colors:
            run.fail(f"cited window {_fmt(window)} is not fully determined")
        if step.case is None:
            run.fail("pattern citation names no case")
        cited_report = self.replay_case(step.case)
        cited_script = self.scripts[step.case]
        if not cited_report.closed or cited_script.establishes is None:
            run.fail(f"case {step.case} does not refute a pattern")
        word = normalize_word(colors)
        if word != normalize_word(int(ch) for ch in cited_script.establishes):
            run.fail(f"window {_fmt(window)} reads {word}, case {step.case} refutes {cited_script.establishes}")
        run.involved.update(window)
        run.reductions.append(step.case)
        run.record(depth, step, f"window {_fmt(window)} = {word}", f"case {step.case} refutes {word}", state)
        return state

    def _contradiction(self, run: _Replay, step: ProofStep, state: DeductionState, depth: int) -> DeductionState:
        if len(step.cited) != 2:
            run.fail("contradiction cites an edge")
        u, v = sorted(rim_label(x) for x in step.cited)
        if v not in neighbors(u):
            run.fail(f"vertices {u} and {v} are not adjacent")
        a, b = state.colors(u), state.colors(v)
        if a is None or b is None:
            run.fail(f"contradiction on {u},{v} cites an undetermined vertex")
        shared = a & b
        if not shared:
            run.fail(f"vertices {u} and {v} have disjoint colors {_fmt(sorted(a))}, {_fmt(sorted(b))}")
        state = state.mark_conflict((u, v))
        run.report.contradiction_edges.append((u, v))
        run.involved.update((u, v))
        run.record(depth, step, f"edge ({u},{v})", f"both color {_fmt(sorted(shared))}", None)
        return state


def render_strip_svg(report: ReplayReport, cell: float = 0.4) -> str:
    """Диаграмма в виде полос: строка на каждую закрытую ветвь, номера вершин сверху"""
    rows = report.leaves or []
    height = max(len(rows), 1)
    fig, ax = plt.subplots(figsize=((len(LABELS) + 4) * cell, (height + 1) * cell + 0.3))
    ax.set_aspect('equal')
    ax.axis('off')

    for v in LABELS:
        ax.text(v + 0.5, height + 0.4, str(v), ha='center', va='center', fontsize=7)

    for row, leaf in enumerate(rows):
        y = height - 1 - row
        ax.text(0.8, y + 0.5, leaf.label, ha='right', va='center', fontsize=6)
        for v in LABELS:
            colors = leaf.state.colors(v)
            border = 2.2 if v in leaf.hypotheses else 0.6
            if colors is None:
                ax.add_patch(Rectangle((v, y), 1, 1, facecolor="#ffffff", edgecolor="black", linewidth=border))
                continue
            ordered = sorted(colors)
            width = 1.0 / len(ordered)
            for k, c in enumerate(ordered):
                fill = CONFLICT_FILL if v in leaf.conflict else color_hex(c - 1)
                ax.add_patch(Rectangle((v + k * width, y), width, 1, facecolor=fill, edgecolor="black",
                                       linewidth=0.3))
            ax.add_patch(Rectangle((v, y), 1, 1, fill=False, edgecolor="black", linewidth=border))
            ax.text(v + 0.5, y + 0.5, "".join(str(c) for c in ordered), ha='center', va='center', fontsize=7)

    ax.set_xlim(-3, len(LABELS) + 1.5)
    ax.set_ylim(-0.2, height + 1)
    return figure_to_svg(fig)
