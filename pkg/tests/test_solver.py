import math
import random
from itertools import combinations

import networkx as nx
import pytest

from coloring_checker import reference_chromatic_number, reference_set_chromatic_number, verify_set_coloring
from exceptions import DomainError, EnumerationGuardError, SearchExhaustedError
from graphs import CirculantSpec, GeometricGraph, build_rim18_bichromatic, circulant, simplex_instance
from interfaces import SetColoring
from performance_monitor import PerformanceMonitor
from solver import (COLOR_PERMUTATION, FULL_GROUP, ROTATION, SetColoringSolver, bichromatic_extension_check,
                    classify_colorings, find_blocking_sequences, find_redundant_pairs, is_circulant, is_proper,
                    run_profile, symmetry_group, verify_reduction)

KNOWN_PAIRS = [(2, 18), (2, 6), (8, 12), (14, 18)]


def from_networkx(g: nx.Graph, demands=None) -> GeometricGraph:
    n = g.number_of_nodes()
    return GeometricGraph(points=(), edges=tuple(g.edges()), demands=tuple(demands or (1,) * n))


def random_graph(rng: random.Random) -> GeometricGraph:
    n = rng.randint(1, 7)
    p = rng.uniform(0.2, 0.8)
    edges = tuple((u, v) for u, v in combinations(range(n), 2) if rng.random() < p)
    demands = tuple(rng.choice((1, 1, 2)) for _ in range(n))
    return GeometricGraph(points=(), edges=edges, demands=demands)


class TestChromaticNumbers:
    def test_rim(self, solver, rim18):
        assert solver.chromatic_number(rim18, 12) == 3

    def test_rim_with_bichromatic_vertex(self, solver):
        assert solver.chromatic_number(build_rim18_bichromatic(1), 12) == 4

    def test_paper19(self, solver, paper19):
        assert solver.chromatic_number(paper19, 12) == 7

    def test_paper19_has_no_six_coloring(self, solver, paper19):
        assert solver.feasible(paper19, 6) is None

    def test_paper19_witness_is_checked_independently(self, solver, paper19):
        witness = solver.feasible(paper19, 7)
        assert witness is not None
        assert verify_set_coloring(paper19, witness, 7) == []

    @pytest.mark.parametrize("n, expected", [(0, 1), (1, 3), (2, 6), (3, 10), (4, 15)])
    def test_simplex(self, solver, n, expected):
        assert solver.chromatic_number(simplex_instance(n), 32) == expected

    def test_odd_cycle(self, solver):
        c5 = circulant(CirculantSpec(5, frozenset({1})))
        assert solver.feasible(c5, 2) is None
        assert solver.chromatic_number(c5, 5) == 3

    def test_search_exhausted(self, solver, rim18):
        with pytest.raises(SearchExhaustedError) as info:
            solver.chromatic_number(rim18, 2)
        assert info.value.kmax == 2

    @pytest.mark.parametrize("k", [-1, 33])
    def test_k_out_of_range(self, solver, rim18, k):
        with pytest.raises(DomainError):
            solver.feasible(rim18, k)

    def test_lower_bound_uses_cliques(self, solver, paper19):
        assert solver.lower_bound(paper19) >= 5
        assert solver.lower_bound(simplex_instance(3)) == 10

    def test_search_nodes_are_counted(self, rim18):
        monitor = PerformanceMonitor()
        SetColoringSolver(monitor).feasible(rim18, 3)
        assert monitor.get_metrics()["search_nodes"] > 0


class TestAgainstReference:
    @pytest.mark.parametrize("factory, expected", [
        (nx.complete_graph, 5), (lambda _: nx.cycle_graph(5), 3), (lambda _: nx.petersen_graph(), 3),
        (lambda _: nx.circulant_graph(18, [3, 4]), 3),
    ])
    def test_known_graphs(self, solver, factory, expected):
        g = factory(5)
        assert reference_chromatic_number(g) == expected
        assert solver.chromatic_number(from_networkx(g), 12) == expected

    def test_random_graphs(self, solver):
        rng = random.Random(20240601)
        for _ in range(60):
            graph = random_graph(rng)
            chi = solver.chromatic_number(graph, 16)
            assert chi == reference_set_chromatic_number(graph)
            witness = solver.feasible(graph, chi)
            assert verify_set_coloring(graph, witness, chi) == []
            assert solver.feasible(graph, chi + 1) is not None
            if chi > 0:
                assert solver.feasible(graph, chi - 1) is None

    def test_feasible_agrees_with_enumeration(self, solver):
        rng = random.Random(7)
        for _ in range(40):
            graph = random_graph(rng)
            k = rng.randint(1, 4)
            found = solver.feasible(graph, k)
            listed = list(solver.enumerate_colorings(graph, k))
            assert (found is None) == (not listed)
            assert all(is_proper(graph, c, k) for c in listed)


class TestEnumeration:
    def test_rim_has_thirty_colorings(self, rim18, rim_colorings):
        assert len(rim_colorings) == 30
        assert len(set(rim_colorings)) == 30
        assert all(is_proper(rim18, c, 3) for c in rim_colorings)

    def test_lexicographic_order(self, rim_colorings):
        keys = [c.sort_key() for c in rim_colorings]
        assert keys == sorted(keys)

    def test_every_rim_coloring_is_found(self, rim_colorings):
        words = {"".join(str(min(s)) for s in c.assignment) for c in rim_colorings}
        assert "000111222000111222" in words
        assert "001122001122001122" in words

    def test_guard(self, paper19):
        with pytest.raises(EnumerationGuardError):
            SetColoringSolver(enumeration_guard_log2=10).enumerate_colorings(paper19, 7)

    def test_search_space_counts_every_demanded_color(self, solver, rim18, paper19):
        assert solver.search_space_log2(rim18, 3) == pytest.approx(18 * math.log2(3))
        assert solver.search_space_log2(build_rim18_bichromatic(1), 4) == pytest.approx(38.0)
        assert solver.search_space_log2(paper19, 7) == pytest.approx(22 * math.log2(7))
        assert solver.search_space_log2(paper19, 1) == 0.0

    def test_default_guard_refuses_paper19(self, solver, paper19):
        with pytest.raises(EnumerationGuardError):
            solver.enumerate_colorings(paper19, 7)

    def test_empty_graph(self, solver):
        graph = GeometricGraph(points=(), edges=(), demands=())
        assert list(solver.enumerate_colorings(graph, 2)) == [SetColoring(())]


class TestClassification:
    def test_full_group_gives_two_classes(self, rim18, rim_colorings):
        classes = classify_colorings(rim_colorings, FULL_GROUP, rim18)
        assert len(classes) == 2
        assert {c.describe() for c in classes} == {"six triples", "nine pairs"}
        assert sum(c.members for c in classes) == 30
        assert {c.descriptor for c in classes} == {((3, 6),), ((2, 9),)}

    def test_color_permutations_only(self, rim_colorings):
        classes = classify_colorings(rim_colorings, {COLOR_PERMUTATION})
        assert len(classes) == 5
        assert all(c.orbit_size == 6 and c.members == 6 for c in classes)

    def test_representative_is_orbit_minimum(self, rim18, rim_colorings):
        for cls in classify_colorings(rim_colorings, FULL_GROUP, rim18):
            assert cls.representative.sort_key()[0] == (0,)

    def test_rotation_needs_circulant(self, paper19):
        coloring = SetColoring.from_lists([[0]] * 19)
        with pytest.raises(DomainError):
            classify_colorings([coloring], {ROTATION}, paper19)

    def test_rotation_needs_uniform_demands(self, solver):
        pentagon = circulant(CirculantSpec(5, frozenset({1}))).with_demands({0: 2})
        assert not is_circulant(pentagon)
        colorings = list(solver.enumerate_colorings(pentagon, 4))
        with pytest.raises(DomainError):
            classify_colorings(colorings, FULL_GROUP, pentagon)

    def test_default_group_keeps_representatives_proper(self, solver):
        pentagon = circulant(CirculantSpec(5, frozenset({1}))).with_demands({0: 2})
        group = symmetry_group(pentagon)
        assert group == frozenset({COLOR_PERMUTATION})
        colorings = list(solver.enumerate_colorings(pentagon, 4))
        classes = classify_colorings(colorings, group, pentagon)
        assert sum(c.members for c in classes) == len(colorings)
        assert all(is_proper(pentagon, c.representative, 4) for c in classes)
        assert symmetry_group(build_rim18_bichromatic(1)) == group

    def test_rim_keeps_full_group(self, rim18):
        assert is_circulant(rim18)
        assert symmetry_group(rim18) == FULL_GROUP

    def test_unknown_group_element(self):
        with pytest.raises(DomainError):
            classify_colorings([], {"shear"})

    def test_empty_input(self, rim18):
        assert classify_colorings([], FULL_GROUP, rim18) == []

    def test_run_profile(self):
        assert run_profile(SetColoring.from_lists([[0], [0], [1], [1], [2], [0]])) == ((1, 1), (2, 1), (3, 1))


class TestExtensions:
    def test_no_rim_coloring_admits_a_second_color(self, rim18, rim_colorings):
        for coloring in rim_colorings:
            assert not any(bichromatic_extension_check(rim18, coloring, v) for v in range(18))

    def test_isolated_vertex_can_be_extended(self):
        graph = GeometricGraph(points=(), edges=(), demands=(1,))
        assert bichromatic_extension_check(graph, SetColoring.from_lists([[0]]), 0, palette={0, 1})

    def test_improper_input(self, rim18):
        with pytest.raises(DomainError):
            bichromatic_extension_check(rim18, SetColoring.from_lists([[0]] * 18), 0)

    def test_every_rim_coloring_contains_a_blocking_window(self, rim_colorings):
        assert all(find_blocking_sequences(c) for c in rim_colorings)


class TestReductions:
    @pytest.mark.parametrize("pair", KNOWN_PAIRS)
    def test_published_pairs_keep_chromatic_number(self, solver, pair):
        assert verify_reduction(pair, solver)

    def test_pair_with_six_coloring(self, solver):
        assert not verify_reduction((7, 11), solver)

    def test_single_vertex_removal(self, solver):
        assert verify_reduction((8,), solver)

    @pytest.mark.parametrize("removed", [(1, 2), (19,), (0, 5)])
    def test_only_rim_vertices_can_be_removed(self, solver, removed):
        with pytest.raises(DomainError):
            verify_reduction(removed, solver)

    def test_scan_visits_every_pair(self):
        class AlwaysSevenChromatic:
            def feasible(self, graph, k):
                return None if k < 7 else SetColoring(())

        visited = []
        pairs = find_redundant_pairs(AlwaysSevenChromatic(), progress=visited.append)
        assert len(visited) == 136
        assert pairs == visited
