"""
Проверка теоремы в один проход с инжекцией зависимостей:
граф -> нижняя оценка 7 -> воспроизведение случаев a-d -> верхняя оценка разбиением -> итог
"""

from dataclasses import dataclass, field
from functools import partial
from typing import Dict, List, Optional

from coloring_checker import verify_set_coloring
from config_manager import ConfigManager
from constants import ISBELL_D, LOWER_D
from exceptions import ChromaticVerificationError, DomainError
from geometry import ToleranceConfig, interval_from_d
from graphs import GeometricGraph, build_paper19
from logger_config import setup_unified_logger
from performance_monitor import PerformanceMonitor
from proof_replay import ProofReplayer
from solver import SetColoringSolver
from tiling import choose_side, proper_for

TARGET_CHROMATIC_NUMBER = 7

# Ожидаемые итоги случаев
EXPECTED_CONTRADICTIONS = {'a': (1, 15), 'c': (1, 15), 'd': (3, 17)}
EXPECTED_REDUCTIONS = {'b': ('a',)}


@dataclass
class StageResult:
    name: str
    ok: bool
    detail: str


@dataclass
class VerificationResult:
    d: float
    eps: float
    stages: List[StageResult] = field(default_factory=list)
    failed_stage: Optional[str] = None

    @property
    def verified(self) -> bool:
        return self.failed_stage is None and bool(self.stages)

    def verdict(self) -> str:
        if self.verified:
            return f"chi = {TARGET_CHROMATIC_NUMBER} verified at d = {self.d:.9f} (eps = {self.eps:.9f})"
        return f"verification FAILED at stage {self.failed_stage} (d = {self.d:.9f})"

    def report(self) -> str:
        lines = [f"{'ok' if s.ok else 'FAIL':<4}  {s.name:<12} {s.detail}" for s in self.stages]
        lines.append(self.verdict())
        return "\n".join(lines) + "\n"


class _StageFailure(Exception):
    pass


class TheoremVerifier:
    """Конвейер проверки; каждый этап отслеживается монитором производительности"""

    def __init__(self, config_manager: Optional[ConfigManager] = None,
                 solver: Optional[SetColoringSolver] = None,
                 replayer: Optional[ProofReplayer] = None,
                 performance_monitor: Optional[PerformanceMonitor] = None,
                 tolcfg: Optional[ToleranceConfig] = None):
        self.logger = setup_unified_logger("verifier")
        self.config_manager = config_manager or ConfigManager(None)
        self.performance_monitor = performance_monitor or PerformanceMonitor()
        self.solver = solver or SetColoringSolver(
            self.performance_monitor, self.config_manager.enumeration_guard_log2)
        self.replayer = replayer or ProofReplayer(performance_monitor=self.performance_monitor)
        self.tolcfg = tolcfg or self.config_manager.tolerance_config
        self.logger.info("[INIT] Theorem verifier initialized")

    def check_preconditions(self, d: float) -> None:
        """d строго выше 2 sin(2pi/9) + margin и не выше sqrt(7)/2 - margin"""
        margin = self.tolcfg.margin
        if not LOWER_D + margin < d <= ISBELL_D - margin:
            raise DomainError(
                f"d={d} must lie in ({LOWER_D + margin:.9f}, {ISBELL_D - margin:.9f}] "
                f"(theorem interval shrunk by margin {margin})")

    def verify(self, d: float) -> VerificationResult:
        self.check_preconditions(d)
        spec = interval_from_d(d)
        result = VerificationResult(d=d, eps=spec.eps)
        self.logger.info(f"[VERIFY] Verifying chromatic number 7 for {spec.describe()}")

        stages = [
            ("build_graph", self._stage_build),
            ("lower_bound", self._stage_lower_bound),
        ]
        stages += [(f"replay_{case_id}", partial(self._stage_replay, case_id))
                   for case_id in sorted(self.replayer.scripts)]
        stages.append(("tiling", self._stage_tiling))
        context: Dict[str, object] = {'d': d}
        for name, stage in stages:
            try:
                with self.performance_monitor.track_operation(name):
                    detail = stage(context)
                result.stages.append(StageResult(name, True, detail))
            except (_StageFailure, ChromaticVerificationError) as e:
                self.logger.error(f"[FAIL] Stage {name} failed: {e}")
                result.stages.append(StageResult(name, False, str(e)))
                result.failed_stage = name
                break

        self.performance_monitor.log_performance_summary()
        if result.verified:
            self.logger.info(f"[SUCCESS] {result.verdict()}")
        return result

    def _stage_build(self, context: Dict[str, object]) -> str:
        graph = build_paper19(context['d'], self.tolcfg)
        context['graph'] = graph
        return f"{graph.n} vertices, {len(graph.edges)} edges"

    def _stage_lower_bound(self, context: Dict[str, object]) -> str:
        graph: GeometricGraph = context['graph']
        k = TARGET_CHROMATIC_NUMBER
        if self.solver.feasible(graph, k - 1) is not None:
            raise _StageFailure(f"{graph.name} is {k - 1}-colorable")
        witness = self.solver.feasible(graph, k)
        if witness is None:
            raise _StageFailure(f"{graph.name} is not {k}-colorable")
        problems = verify_set_coloring(graph, witness, k)
        if problems:
            raise _StageFailure(f"independent checker rejects the witness: {problems[0]}")
        context['witness'] = witness
        return f"{k - 1} colors infeasible, {k}-coloring witness checked"

    def _stage_replay(self, case_id: str, context: Dict[str, object]) -> str:
        report = self.replayer.replay_case(case_id)
        if not report.closed:
            raise _StageFailure(report.summary())
        expected_edge = EXPECTED_CONTRADICTIONS.get(case_id)
        if expected_edge is not None and report.contradiction_edge != expected_edge:
            raise _StageFailure(f"case {case_id} ends on {report.contradiction_edge}, expected {expected_edge}")
        expected_reduction = EXPECTED_REDUCTIONS.get(case_id)
        if expected_reduction is not None and report.reduces_to != expected_reduction:
            raise _StageFailure(f"case {case_id} reduces to {report.reduces_to}")
        return report.summary()

    def _stage_tiling(self, context: Dict[str, object]) -> str:
        d = context['d']
        side = choose_side(d, self.config_manager.side_margin)
        proper, certificate = proper_for(interval_from_d(d), side, self.config_manager.search_radius)
        if not proper:
            raise _StageFailure(f"tiling with side {side} is not proper for d={d}")
        return (f"side {side:.9f}: tile diameter {certificate.max_intra_tile:.9f} < 1, "
                f"same-color distance {certificate.min_same_color:.9f} > d")
