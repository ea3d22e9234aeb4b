"""
Планарная геометрия для проверки конструкций с интервалом запрещенных расстояний [1, d]
Длины хорд, преобразование d <-> eps, классификация расстояний с явной политикой допусков,
диаметр выпуклого многоугольника и расстояние между многоугольниками
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Tuple

import numpy as np

from exceptions import DomainError

ROUND_TRIP_RTOL = 1e-12


@dataclass(frozen=True)
class Point2:
    """Точка плоскости"""
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise DomainError(f"point coordinates must be finite, got ({self.x}, {self.y})")

    def distance_to(self, other: 'Point2') -> float:
        return math.hypot(self.x - other.x, self.y - other.y)

    def as_tuple(self) -> Tuple[float, float]:
        return (self.x, self.y)


@dataclass(frozen=True)
class IntervalSpec:
    """Интервал запрещенных расстояний в двух формах: [1, d] и [1 - eps, 1 + eps]"""
    d: float
    eps: float

    def __post_init__(self):
        if not (math.isfinite(self.d) and math.isfinite(self.eps)):
            raise DomainError("interval parameters must be finite")
        if self.d < 1.0 or not (0.0 <= self.eps < 1.0):
            raise DomainError(f"invalid interval: d={self.d}, eps={self.eps}")
        expected = (1.0 + self.eps) / (1.0 - self.eps)
        if abs(expected - self.d) > ROUND_TRIP_RTOL * self.d:
            raise DomainError(f"d={self.d} and eps={self.eps} are not related by d=(1+eps)/(1-eps)")

    def describe(self) -> str:
        return f"[1, {self.d:.9f}] (eps = {self.eps:.9f})"


@dataclass(frozen=True)
class ToleranceConfig:
    """Политика допусков: tol для сравнений, margin для однозначной классификации"""
    tol: float = 1e-9
    margin: float = 1e-6

    def __post_init__(self):
        if not (self.tol > 0 and self.margin > 0):
            raise DomainError("tol and margin must be positive")
        if self.margin < self.tol:
            raise DomainError(f"margin ({self.margin}) must be >= tol ({self.tol})")


class DistanceClass(Enum):
    """Положение расстояния относительно интервала [1, d]"""
    BELOW = "below"
    EDGE = "edge"
    ABOVE = "above"
    AMBIGUOUS = "ambiguous"


@dataclass(frozen=True)
class ConvexPolygon:
    """Строго выпуклый многоугольник, вершины против часовой стрелки"""
    vertices: Tuple[Point2, ...]

    def __post_init__(self):
        object.__setattr__(self, 'vertices', tuple(self.vertices))
        validate_polygon(self)

    def as_array(self) -> np.ndarray:
        return np.array([p.as_tuple() for p in self.vertices], dtype=float)

    def edges(self) -> Iterable[Tuple[Point2, Point2]]:
        n = len(self.vertices)
        for i in range(n):
            yield self.vertices[i], self.vertices[(i + 1) % n]


def validate_polygon(polygon: ConvexPolygon) -> None:
    """Проверка инвариантов многоугольника: >= 3 вершин, без повторов, строго выпуклый CCW"""
    vertices = polygon.vertices
    if len(vertices) < 3:
        raise DomainError(f"polygon needs at least 3 vertices, got {len(vertices)}")
    if len(set(vertices)) != len(vertices):
        raise DomainError("polygon has repeated vertices")

    pts = polygon.as_array()
    scale = float(np.max(np.ptp(pts, axis=0)))
    if scale <= 0:
        raise DomainError("degenerate polygon")
    edge_vectors = np.roll(pts, -1, axis=0) - pts
    next_vectors = np.roll(edge_vectors, -1, axis=0)
    turns = edge_vectors[:, 0] * next_vectors[:, 1] - edge_vectors[:, 1] * next_vectors[:, 0]
    if np.any(turns <= 1e-12 * scale * scale):
        raise DomainError("polygon must be strictly convex with counterclockwise vertex order")


def chord_length(n: int, k: int, radius: float = 1.0) -> float:
    """Длина хорды шага k правильного n-угольника, вписанного в окружность радиуса radius"""
    if n < 3:
        raise DomainError(f"n must be >= 3, got {n}")
    if not (1 <= k <= n / 2):
        raise DomainError(f"step k must satisfy 1 <= k <= n/2, got k={k} for n={n}")
    if not radius > 0:
        raise DomainError(f"radius must be positive, got {radius}")
    return 2.0 * radius * math.sin(k * math.pi / n)


def interval_from_eps(eps: float) -> IntervalSpec:
    """Интервал по симметричной форме: d = (1 + eps) / (1 - eps)"""
    if not (math.isfinite(eps) and 0.0 <= eps < 1.0):
        raise DomainError(f"eps must satisfy 0 <= eps < 1, got {eps}")
    return IntervalSpec(d=(1.0 + eps) / (1.0 - eps), eps=eps)


def interval_from_d(d: float) -> IntervalSpec:
    """Интервал по верхней границе: eps = (d - 1) / (d + 1)"""
    if not (math.isfinite(d) and d >= 1.0):
        raise DomainError(f"d must satisfy d >= 1, got {d}")
    return IntervalSpec(d=d, eps=(d - 1.0) / (d + 1.0))


def classify_distance(dist: float, spec: IntervalSpec, tolcfg: ToleranceConfig = ToleranceConfig()) -> DistanceClass:
    """
    Классификация расстояния относительно замкнутого интервала [1, d]

    Расстояние в пределах tol от границы считается лежащим на границе (ребро).
    Зазор до границы больше tol, но меньше margin, дает AMBIGUOUS.
    """
    for boundary in (1.0, spec.d):
        gap = abs(dist - boundary)
        if gap <= tolcfg.tol:
            return DistanceClass.EDGE
    for boundary in (1.0, spec.d):
        gap = abs(dist - boundary)
        if gap < tolcfg.margin:
            return DistanceClass.AMBIGUOUS
    if dist < 1.0:
        return DistanceClass.BELOW
    if dist > spec.d:
        return DistanceClass.ABOVE
    return DistanceClass.EDGE


def polygon_diameter(polygon: ConvexPolygon) -> float:
    """Диаметр выпуклого многоугольника (максимум попарных расстояний вершин)"""
    validate_polygon(polygon)
    pts = polygon.as_array()
    diff = pts[:, None, :] - pts[None, :, :]
    return float(np.sqrt((diff ** 2).sum(axis=-1)).max())


def _point_segment_distance(p: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    ab = b - a
    denom = float(ab @ ab)
    t = 0.0 if denom == 0 else min(1.0, max(0.0, float((p - a) @ ab) / denom))
    return float(np.linalg.norm(p - (a + t * ab)))


def _segment_distance(a: np.ndarray, b: np.ndarray, c: np.ndarray, d: np.ndarray) -> float:
    # отрезки разделенных многоугольников не пересекаются: достаточно концов
    return min(
        _point_segment_distance(a, c, d),
        _point_segment_distance(b, c, d),
        _point_segment_distance(c, a, b),
        _point_segment_distance(d, a, b),
    )


def _has_separating_axis(p: np.ndarray, q: np.ndarray) -> bool:
    for pts in (p, q):
        edges = np.roll(pts, -1, axis=0) - pts
        normals = np.column_stack((edges[:, 1], -edges[:, 0]))
        for normal in normals:
            proj_p = p @ normal
            proj_q = q @ normal
            if proj_p.max() < proj_q.min() or proj_q.max() < proj_p.min():
                return True
    return False


def polygon_min_distance(first: ConvexPolygon, second: ConvexPolygon) -> float:
    """Минимальное евклидово расстояние между двумя замкнутыми выпуклыми областями (0 при пересечении)"""
    validate_polygon(first)
    validate_polygon(second)
    p = first.as_array()
    q = second.as_array()
    if not _has_separating_axis(p, q):
        return 0.0

    best = math.inf
    for i in range(len(p)):
        a, b = p[i], p[(i + 1) % len(p)]
        for j in range(len(q)):
            c, d = q[j], q[(j + 1) % len(q)]
            best = min(best, _segment_distance(a, b, c, d))
    return best
