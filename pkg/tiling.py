"""
Шестиугольная 7-раскраска плоскости и сертификат верхней оценки

Ячейки задаются осевыми координатами (q, r), шестиугольники ориентированы вершиной вверх.
Цвет ячейки (q + 3r) mod 7: одноцветные ячейки образуют подрешетку индекса 7
с базисом (1, 2), (-3, 1).
"""

import math
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import Polygon as PolygonPatch  # noqa: E402

from exceptions import DomainError, InternalConsistencyError, TilingRadiusError
from geometry import ConvexPolygon, IntervalSpec, Point2, polygon_diameter, polygon_min_distance
from graph_io import color_hex, figure_to_svg
from logger_config import setup_unified_logger

logger = setup_unified_logger("tiling")

Cell = Tuple[int, int]

COLORS = 7
SUBLATTICE_BASIS: Tuple[Cell, Cell] = ((1, 2), (-3, 1))
NEIGHBOR_DIRECTIONS: Tuple[Cell, ...] = ((1, 0), (1, -1), (0, -1), (-1, 0), (-1, 1), (0, 1))
SQRT3 = math.sqrt(3.0)
SQRT7 = math.sqrt(7.0)


def seven_coloring(cell: Cell) -> int:
    q, r = cell
    return (q + 3 * r) % COLORS


def check_coloring_pattern() -> None:
    """Ячейка и ее шесть соседей получают семь разных цветов, базис подрешетки сохраняет цвет"""
    colors = {seven_coloring((0, 0))} | {seven_coloring(d) for d in NEIGHBOR_DIRECTIONS}
    if len(colors) != COLORS:
        raise InternalConsistencyError(f"hexagon and its neighbors use {len(colors)} colors, expected {COLORS}")
    for u in SUBLATTICE_BASIS:
        if seven_coloring(u) != seven_coloring((0, 0)):
            raise InternalConsistencyError(f"sublattice generator {u} changes the color")


def hex_distance(a: Cell, b: Cell) -> int:
    dq, dr = a[0] - b[0], a[1] - b[1]
    return max(abs(dq), abs(dr), abs(dq + dr))


def cells_within(radius: int, origin: Cell = (0, 0)) -> Iterator[Cell]:
    """Ячейки на гексагональном расстоянии не больше radius, в лексикографическом порядке"""
    oq, orr = origin
    for dq in range(-radius, radius + 1):
        for dr in range(max(-radius, -dq - radius), min(radius, -dq + radius) + 1):
            yield (oq + dq, orr + dr)


def _check_side(side: float) -> None:
    if not (math.isfinite(side) and side > 0):
        raise DomainError(f"hexagon side must be positive, got {side}")


def cell_center(cell: Cell, side: float) -> Point2:
    q, r = cell
    return Point2(side * (SQRT3 * q + SQRT3 / 2.0 * r), side * 1.5 * r)


def hexagon_polygon(cell: Cell, side: float) -> ConvexPolygon:
    """Правильный шестиугольник с радиусом описанной окружности side, вершины против часовой стрелки"""
    _check_side(side)
    center = cell_center(cell, side)
    return ConvexPolygon(tuple(
        Point2(center.x + side * math.cos(math.radians(30 + 60 * k)),
               center.y + side * math.sin(math.radians(30 + 60 * k)))
        for k in range(6)))


@dataclass(frozen=True)
class HexTiling:
    side: float

    def __post_init__(self):
        _check_side(self.side)

    def center(self, cell: Cell) -> Point2:
        return cell_center(cell, self.side)

    def polygon(self, cell: Cell) -> ConvexPolygon:
        return hexagon_polygon(cell, self.side)

    @staticmethod
    def color(cell: Cell) -> int:
        return seven_coloring(cell)


@dataclass(frozen=True)
class TilingCertificate:
    side: float
    search_radius: int
    origin_cell: Cell
    origin_color: int
    max_intra_tile: float
    min_same_color: float
    nearest_cell: Cell

    @property
    def admissible_ratio(self) -> float:
        return self.min_same_color / self.max_intra_tile

    def describe(self) -> str:
        return "\n".join([
            f"side: {self.side:.9f}",
            f"search radius: {self.search_radius} cells",
            f"origin cell: {self.origin_cell} (color {self.origin_color})",
            f"max intra-tile distance: {self.max_intra_tile:.9f}",
            f"min same-color distance: {self.min_same_color:.9f} (cell {self.nearest_cell})",
            f"admissible ratio: {self.admissible_ratio:.9f} (sqrt(7)/2 = {SQRT7 / 2.0:.9f})",
        ])


def radius_sufficient(radius: int, side: float, min_found: float) -> bool:
    """
    Ячейки вне радиуса R имеют центры не ближе 1.5*(R+1)*side, а многоугольники - не ближе
    на 2*side меньше; радиус достаточен, если это больше найденного минимума
    """
    return 1.5 * (radius + 1) * side > min_found + 2.0 * side


def certify(side: float, search_radius: int = 4, origin_cell: Cell = (0, 0)) -> TilingCertificate:
    """
    Точный сертификат: минимальное расстояние между многоугольниками одного цвета
    и диаметр шестиугольника
    """
    tiling = HexTiling(side)
    if search_radius < 1:
        raise DomainError(f"search radius must be >= 1, got {search_radius}")
    check_coloring_pattern()

    origin_color = tiling.color(origin_cell)
    origin_polygon = tiling.polygon(origin_cell)
    best: Optional[float] = None
    nearest: Optional[Cell] = None
    for cell in cells_within(search_radius, origin_cell):
        if cell == origin_cell or tiling.color(cell) != origin_color:
            continue
        dist = polygon_min_distance(origin_polygon, tiling.polygon(cell))
        if best is None or dist < best:
            best, nearest = dist, cell

    if best is None or not radius_sufficient(search_radius, side, best):
        raise TilingRadiusError(
            f"search radius {search_radius} cannot certify the nearest same-color tile "
            f"(found {best}, need 1.5*(R+1)*side > found + 2*side)")

    certificate = TilingCertificate(side, search_radius, origin_cell, origin_color,
                                    polygon_diameter(origin_polygon), best, nearest)
    logger.info(f"[TILING] Certificate at side {side}: same-color {best:.9f}, "
                f"ratio {certificate.admissible_ratio:.9f}")
    return certificate


def proper_for(spec: IntervalSpec, side: float, search_radius: int = 4) -> Tuple[bool, TilingCertificate]:
    """Раскраска правильна для [1, d]: диаметр плитки < 1 и одноцветные плитки дальше d (строго)"""
    certificate = certify(side, search_radius)
    proper = certificate.max_intra_tile < 1.0 and certificate.min_same_color > spec.d
    logger.info(f"[TILING] Tiling with side {side} {'is' if proper else 'is NOT'} proper for {spec.describe()}")
    return proper, certificate


def admissible_sides(d: float) -> Tuple[float, float]:
    """Открытый интервал сторон (d/sqrt(7), 1/2), при которых раскраска правильна для [1, d]"""
    return d / SQRT7, 0.5


def choose_side(d: float, side_margin: float = 0.5) -> float:
    """Сторона внутри допустимого окна; side_margin - доля окна от нижнего края"""
    if not 0.0 < side_margin < 1.0:
        raise DomainError(f"side margin must lie in (0, 1), got {side_margin}")
    low, high = admissible_sides(d)
    if not low < high:
        raise DomainError(f"no hexagon side works for d={d}: need d < sqrt(7)/2 = {SQRT7 / 2.0:.9f}")
    return low + side_margin * (high - low)


def render_patch_svg(side: float = 0.5, radius: int = 3, scale: float = 80.0) -> str:
    """Фрагмент раскраски: ячейки в пределах radius от начала координат, в каждой номер цвета"""
    tiling = HexTiling(side)
    cells: List[Cell] = list(cells_within(radius))
    extent = side * (1.5 * radius + 1.5) * 2
    size = max(extent * scale / 72.0, 3.0)
    fig, ax = plt.subplots(figsize=(size, size))
    ax.set_aspect('equal')
    ax.axis('off')
    for cell in cells:
        polygon = tiling.polygon(cell)
        color = tiling.color(cell)
        ax.add_patch(PolygonPatch(polygon.as_array(), closed=True, facecolor=color_hex(color),
                                  edgecolor="black", linewidth=0.5))
        center = tiling.center(cell)
        ax.text(center.x, center.y, str(color), ha='center', va='center', fontsize=7)
    half = extent / 2.0
    ax.set_xlim(-half - side, half + side)
    ax.set_ylim(-half, half)
    return figure_to_svg(fig)
