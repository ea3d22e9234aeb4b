import math
from collections import Counter

import numpy as np
import pytest

from constants import ISBELL_D
from exceptions import DomainError, TilingRadiusError
from geometry import interval_from_d, polygon_diameter, polygon_min_distance
from tiling import (NEIGHBOR_DIRECTIONS, HexTiling, admissible_sides, cell_center, cells_within, certify,
                    check_coloring_pattern, choose_side, hex_distance, hexagon_polygon, proper_for,
                    radius_sufficient, render_patch_svg, seven_coloring)

RATIO = math.sqrt(7.0) / 2.0


def sampled_boundary(cell, side: float, per_edge: int = 200) -> np.ndarray:
    vertices = hexagon_polygon(cell, side).as_array()
    t = np.linspace(0.0, 1.0, per_edge)[:, None]
    segments = [a + t * (b - a) for a, b in zip(vertices, np.roll(vertices, -1, axis=0))]
    return np.vstack(segments)


def sampled_min_same_color(side: float, radius: int = 4) -> float:
    origin = sampled_boundary((0, 0), side)
    best = math.inf
    for cell in cells_within(radius):
        if cell == (0, 0) or seven_coloring(cell) != seven_coloring((0, 0)):
            continue
        other = sampled_boundary(cell, side)
        diff = origin[:, None, :] - other[None, :, :]
        best = min(best, float(np.sqrt((diff ** 2).sum(axis=-1)).min()))
    return best


class TestColoring:
    def test_pattern(self):
        check_coloring_pattern()

    def test_neighbours_get_distinct_colors(self):
        for cell in cells_within(3):
            around = {seven_coloring((cell[0] + dq, cell[1] + dr)) for dq, dr in NEIGHBOR_DIRECTIONS}
            assert len(around | {seven_coloring(cell)}) == 7

    def test_colors_are_uniform(self):
        counts = Counter(seven_coloring((q, r)) for q in range(7) for r in range(7))
        assert set(counts.values()) == {7}
        assert len(counts) == 7

    def test_cells_within(self):
        cells = list(cells_within(2))
        assert len(cells) == 19
        assert all(hex_distance(c, (0, 0)) <= 2 for c in cells)
        assert cells == sorted(cells)


class TestHexagons:
    def test_diameter_is_twice_the_side(self):
        assert polygon_diameter(hexagon_polygon((0, 0), 0.5)) == pytest.approx(1.0)

    def test_neighbouring_cells_touch(self):
        tiling = HexTiling(0.5)
        assert polygon_min_distance(tiling.polygon((0, 0)), tiling.polygon((1, 0))) == pytest.approx(0.0, abs=1e-12)

    def test_center_spacing(self):
        assert cell_center((1, 0), 0.5).distance_to(cell_center((0, 0), 0.5)) == pytest.approx(math.sqrt(3) / 2)

    @pytest.mark.parametrize("side", [0.0, -1.0, float("inf")])
    def test_invalid_side(self, side):
        with pytest.raises(DomainError):
            HexTiling(side)
        with pytest.raises(DomainError):
            certify(side)
        with pytest.raises(DomainError):
            render_patch_svg(side)

    def test_tiling_matches_free_functions(self):
        tiling = HexTiling(0.4)
        for cell in cells_within(2):
            assert tiling.center(cell) == cell_center(cell, 0.4)
            assert tiling.polygon(cell) == hexagon_polygon(cell, 0.4)
            assert tiling.color(cell) == seven_coloring(cell)


class TestCertificate:
    @pytest.mark.parametrize("side", [0.3, 0.5, 0.7])
    def test_ratio_is_independent_of_side(self, side):
        certificate = certify(side)
        assert certificate.admissible_ratio == pytest.approx(RATIO, abs=1e-9)
        assert certificate.max_intra_tile == pytest.approx(2 * side)
        assert certificate.min_same_color == pytest.approx(math.sqrt(7.0) * side)

    @pytest.mark.parametrize("scale", [0.5, 2.0, 3.0])
    def test_scale_equivariance(self, scale):
        base = certify(0.4)
        scaled = certify(0.4 * scale)
        assert scaled.min_same_color == pytest.approx(scale * base.min_same_color, rel=1e-12)
        assert scaled.max_intra_tile == pytest.approx(scale * base.max_intra_tile, rel=1e-12)

    @pytest.mark.parametrize("origin", [(k, 0) for k in range(7)])
    def test_every_color_class_agrees(self, origin):
        certificate = certify(0.5, origin_cell=origin)
        assert certificate.origin_color == origin[0]
        assert certificate.admissible_ratio == pytest.approx(RATIO, abs=1e-9)

    def test_nearest_cell_has_the_same_color(self):
        certificate = certify(0.5)
        assert seven_coloring(certificate.nearest_cell) == seven_coloring((0, 0))
        assert hex_distance(certificate.nearest_cell, (0, 0)) == 3

    def test_agrees_with_boundary_sampling(self):
        assert certify(0.5).min_same_color == pytest.approx(sampled_min_same_color(0.5), abs=1e-6)

    def test_radius_too_small(self):
        with pytest.raises(TilingRadiusError):
            certify(0.5, search_radius=2)

    def test_radius_three_suffices(self):
        assert certify(0.5, search_radius=3).admissible_ratio == pytest.approx(RATIO, abs=1e-9)

    def test_radius_rule(self):
        assert radius_sufficient(3, 0.5, math.sqrt(7) / 2)
        assert not radius_sufficient(2, 0.5, math.sqrt(7) / 2)

    def test_describe(self):
        text = certify(0.5).describe()
        assert "admissible ratio: 1.322875656" in text


class TestProperness:
    def test_proper_just_below_upper_end(self):
        proper, certificate = proper_for(interval_from_d(1.30), 0.4995)
        assert proper
        assert certificate.max_intra_tile < 1.0

    @pytest.mark.parametrize("side", [0.45, 0.4999])
    def test_not_proper_at_upper_end(self, side):
        proper, _ = proper_for(interval_from_d(ISBELL_D), side)
        assert not proper

    def test_proper_close_to_upper_end(self):
        assert proper_for(interval_from_d(1.32), 0.4995)[0]

    def test_monotone_in_d(self):
        side = 0.49
        for d1 in (1.1, 1.2, 1.29):
            if proper_for(interval_from_d(d1), side)[0]:
                for d2 in (1.0, 1.05, d1):
                    assert proper_for(interval_from_d(d2), side)[0]

    def test_admissible_window(self):
        low, high = admissible_sides(1.30)
        side = choose_side(1.30)
        assert low < side < high
        assert proper_for(interval_from_d(1.30), side)[0]

    @pytest.mark.parametrize("d, margin", [(1.4, 0.5), (1.3, 0.0), (1.3, 1.0)])
    def test_choose_side_rejects(self, d, margin):
        with pytest.raises(DomainError):
            choose_side(d, margin)

    def test_render(self):
        svg = render_patch_svg(0.5, 2)
        assert "<svg" in svg
        assert svg == render_patch_svg(0.5, 2)
