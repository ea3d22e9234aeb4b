"""
Мониторинг производительности этапов проверки
Отслеживает время и исход каждого этапа, а также счетчики поиска (узлы, раскраски)
"""

import time
from collections import defaultdict
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Dict, Iterator, Optional

from interfaces import IPerformanceMonitor
from logger_config import setup_unified_logger

SLOW_STAGE_SECONDS = 30.0


@dataclass
class OperationMetrics:
    """Метрики этапа"""
    total_calls: int = 0
    successful_calls: int = 0
    failed_calls: int = 0
    total_latency: float = 0.0
    max_latency: float = 0.0
    last_error: Optional[str] = None

    @property
    def success_rate(self) -> float:
        finished = self.successful_calls + self.failed_calls
        return (self.successful_calls / finished * 100) if finished > 0 else 0.0

    @property
    def avg_latency(self) -> float:
        return self.total_latency / self.total_calls if self.total_calls > 0 else 0.0


class PerformanceMonitor(IPerformanceMonitor):
    """Монитор производительности"""

    def __init__(self):
        self.logger = setup_unified_logger("performance_monitor")
        self.operation_metrics: Dict[str, OperationMetrics] = defaultdict(OperationMetrics)
        self.counters: Dict[str, int] = defaultdict(int)
        self.start_time = time.time()
        self.errors_count = 0

    def track_latency(self, operation: str, duration: float) -> None:
        metrics = self.operation_metrics[operation]
        metrics.total_calls += 1
        metrics.total_latency += duration
        metrics.max_latency = max(metrics.max_latency, duration)

        if duration > SLOW_STAGE_SECONDS:
            self.logger.warning(f"[PERF] Slow stage {operation}: {duration:.3f}s")
        else:
            self.logger.debug(f"[PERF] {operation}: {duration:.3f}s")

    def track_success_rate(self, operation: str, success: bool, error: Optional[str] = None) -> None:
        metrics = self.operation_metrics[operation]
        if success:
            metrics.successful_calls += 1
            return
        metrics.failed_calls += 1
        metrics.last_error = error
        self.errors_count += 1

    def track_counter(self, counter: str, amount: int = 1) -> None:
        """Увеличение счетчика поиска (search_nodes, colorings_emitted)"""
        self.counters[counter] += amount

    @contextmanager
    def track_operation(self, operation: str) -> Iterator[None]:
        """Замер этапа; исключение отмечается как неудача и пробрасывается дальше"""
        start = time.perf_counter()
        error: Optional[str] = None
        try:
            yield
        except BaseException as e:
            error = type(e).__name__
            raise
        finally:
            self.track_latency(operation, time.perf_counter() - start)
            self.track_success_rate(operation, error is None, error)

    def get_metrics(self) -> Dict[str, float]:
        metrics: Dict[str, float] = {
            'uptime_seconds': time.time() - self.start_time,
            'errors_count': self.errors_count,
        }
        metrics.update(self.counters)

        for operation, op_metrics in self.operation_metrics.items():
            metrics.update({
                f"{operation}_success_rate": op_metrics.success_rate,
                f"{operation}_avg_latency": op_metrics.avg_latency,
                f"{operation}_max_latency": op_metrics.max_latency,
                f"{operation}_total_calls": op_metrics.total_calls,
            })
        return metrics

    def log_performance_summary(self) -> None:
        """Сводка по этапам и счетчикам"""
        self.logger.info("[PERF] Stage summary")
        for operation, op_metrics in sorted(self.operation_metrics.items()):
            failure = f", last error {op_metrics.last_error}" if op_metrics.last_error else ""
            self.logger.info(f"[PERF]   {operation}: {op_metrics.total_calls} call(s), "
                             f"{op_metrics.avg_latency:.3f}s avg, {op_metrics.success_rate:.0f}% success{failure}")
        for name, value in sorted(self.counters.items()):
            self.logger.info(f"[PERF]   {name}: {value}")

    def reset_metrics(self) -> None:
        self.operation_metrics.clear()
        self.counters.clear()
        self.start_time = time.time()
        self.errors_count = 0
