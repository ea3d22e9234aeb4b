import math

import numpy as np
import pytest

from constants import ISBELL_D, LOWER_D
from exceptions import DomainError, GraphConstructionError, GraphValidationError
from geometry import Point2, interval_from_d
from graphs import (CirculantSpec, GeometricGraph, build_interval_graph, build_paper19, build_rim18,
                    build_rim18_bichromatic, build_two_ring_candidate, circle_layout, circulant, clockwise_layout,
                    simplex_instance, simplex_lower_bound, two_ring_layout)


def rim_edges():
    return {(i, (i + o) % 18) if i < (i + o) % 18 else ((i + o) % 18, i) for i in range(18) for o in (3, 4)}


class TestLayouts:
    def test_eighteen_points_on_unit_circle(self):
        points = circle_layout(18, 1.0, 0.0)
        assert len(points) == 18
        assert all(p.distance_to(Point2(0.0, 0.0)) == pytest.approx(1.0, abs=1e-15) for p in points)
        assert points[0].distance_to(points[1]) == pytest.approx(2 * math.sin(math.pi / 18), abs=1e-12)
        assert points[0].distance_to(points[1]) == pytest.approx(0.347296, abs=1e-6)

    def test_single_point(self):
        (only,) = circle_layout(1, 1.0, 0.0)
        assert (only.x, only.y) == (1.0, 0.0)

    def test_square_has_opposite_points_at_diameter(self):
        points = circle_layout(4, 1.0, 0.0)
        assert points[0].distance_to(points[2]) == pytest.approx(2.0, abs=1e-15)
        assert points[1].distance_to(points[3]) == pytest.approx(2.0, abs=1e-15)

    def test_radius_and_phase(self):
        points = circle_layout(6, 2.5, math.pi / 6)
        for k, p in enumerate(points):
            angle = math.pi / 6 + 2 * math.pi * k / 6
            assert (p.x, p.y) == pytest.approx((2.5 * math.cos(angle), 2.5 * math.sin(angle)), abs=1e-15)

    @pytest.mark.parametrize("n, radius", [(0, 1.0), (3, 0.0), (3, -1.0)])
    def test_invalid_circle(self, n, radius):
        with pytest.raises(DomainError):
            circle_layout(n, radius)

    def test_two_rings_concatenate(self):
        points = two_ring_layout(14, 14, 1.0, 1.309721, 0.0)
        assert len(points) == 28
        assert points[:14] == circle_layout(14, 1.0, 0.0)
        assert points[14:] == circle_layout(14, 1.309721, 0.0)
        assert all(p.distance_to(Point2(0.0, 0.0)) == pytest.approx(1.309721, abs=1e-12) for p in points[14:])

    def test_two_antipodal_points(self):
        first, second = two_ring_layout(1, 1, 1.0, 1.0, math.pi)
        assert (first.x, first.y) == (1.0, 0.0)
        assert (second.x, second.y) == pytest.approx((-1.0, 0.0), abs=1e-15)

    @pytest.mark.parametrize("n1, n2", [(18, 0), (0, 3)])
    def test_both_rings_need_points(self, n1, n2):
        with pytest.raises(DomainError):
            two_ring_layout(n1, n2, 1.0, 1.3)


class TestCirculant:
    def test_rim_is_c18_3_4(self, rim18):
        assert set(rim18.edges) == rim_edges()
        assert len(rim18.edges) == 36
        assert all(rim18.degree(v) == 4 for v in range(18))

    def test_cycle(self):
        c5 = circulant(CirculantSpec(5, frozenset({1})))
        assert len(c5.edges) == 5
        assert c5.name == "C5(1)"

    @pytest.mark.parametrize("n, offsets", [(5, {3}), (2, {1}), (10, set())])
    def test_invalid_spec(self, n, offsets):
        with pytest.raises(DomainError):
            CirculantSpec(n, frozenset(offsets))

    def test_rim_labels_run_clockwise(self, rim18):
        top, next_point = rim18.points[0], rim18.points[1]
        assert top.y == pytest.approx(1.0)
        assert next_point.x > 0


class TestIntervalGraph:
    @pytest.mark.parametrize("d", [float(x) for x in np.linspace(LOWER_D + 1e-6, ISBELL_D, 101)[1:]])
    def test_rim_geometry_gives_c18_3_4_on_whole_interval(self, d):
        graph = build_interval_graph(clockwise_layout(18), interval_from_d(d))
        assert set(graph.edges) == rim_edges()

    def test_ambiguous_pair_is_reported(self):
        with pytest.raises(GraphConstructionError) as info:
            build_interval_graph(clockwise_layout(18), interval_from_d(LOWER_D + 1e-7))
        assert info.value.pair is not None
        assert info.value.distance == pytest.approx(LOWER_D)

    def test_empty_point_set(self):
        with pytest.raises(DomainError):
            build_interval_graph([], interval_from_d(1.3))


class TestPaper19:
    def test_shape(self, paper19):
        assert paper19.n == 19
        assert len(paper19.edges) == 54
        assert paper19.demands[0] == 2
        assert paper19.demands[18] == 3
        assert sum(paper19.demands) == 17 + 2 + 3
        assert paper19.degree(18) == 18

    def test_rim_part_is_c18_3_4(self, paper19):
        assert {e for e in paper19.edges if 18 not in e} == rim_edges()

    def test_geometry_revalidates(self, paper19):
        paper19.validate_geometry()

    @pytest.mark.parametrize("d", [LOWER_D, 1.2, 1.40, float("nan")])
    def test_outside_theorem_interval(self, d):
        with pytest.raises(DomainError):
            build_paper19(d)

    def test_upper_end_accepted(self):
        assert len(build_paper19(ISBELL_D).edges) == 54

    def test_too_close_to_lower_end(self):
        with pytest.raises(GraphConstructionError):
            build_paper19(LOWER_D + 1e-7)


class TestOtherInstances:
    def test_bichromatic_rim(self):
        graph = build_rim18_bichromatic(5)
        assert graph.demands[4] == 2
        assert sum(graph.demands) == 19

    @pytest.mark.parametrize("n", range(0, 5))
    def test_simplex(self, n):
        graph = simplex_instance(n)
        assert graph.demands == tuple(range(n + 1, 0, -1))
        assert len(graph.edges) == n * (n + 1) // 2
        assert simplex_lower_bound(n) == sum(graph.demands)

    def test_simplex_out_of_range(self):
        with pytest.raises(DomainError):
            simplex_instance(9)

    def test_two_ring_candidate(self):
        graph = build_two_ring_candidate(6, 6, 1.3, 0.3)
        assert graph.n == 13
        assert graph.demands[-1] == 3
        assert graph.degree(12) == 12
        assert len(graph.edges) == 24


class TestGraphInvariants:
    def test_self_loop(self):
        with pytest.raises(GraphValidationError):
            GeometricGraph(points=(), edges=((1, 1),), demands=(1, 1))

    def test_edge_out_of_range(self):
        with pytest.raises(GraphValidationError):
            GeometricGraph(points=(), edges=((0, 5),), demands=(1, 1))

    def test_duplicate_edge(self):
        with pytest.raises(GraphValidationError):
            GeometricGraph(points=(), edges=((0, 1), (1, 0)), demands=(1, 1))

    def test_edges_are_normalized(self):
        graph = GeometricGraph(points=(), edges=((2, 0), (1, 0)), demands=(1, 1, 1))
        assert graph.edges == ((0, 1), (0, 2))

    def test_without_vertices_keeps_labels(self, paper19):
        reduced = paper19.without_vertices([paper19.index_of(7), paper19.index_of(11)])
        assert reduced.n == 17
        assert 7 not in reduced.labels and 11 not in reduced.labels
        assert reduced.index_of(19) == 16
        assert reduced.demands[reduced.index_of(19)] == 3

    def test_unknown_label(self, rim18):
        with pytest.raises(DomainError):
            rim18.index_of(19)

    def test_to_networkx_carries_demands(self, paper19):
        g = paper19.to_networkx()
        assert g.nodes[18]["demand"] == 3
        assert g.number_of_edges() == 54
