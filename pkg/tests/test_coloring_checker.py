import networkx as nx

from coloring_checker import reference_chromatic_number, reference_set_chromatic_number, split_graph, verify_set_coloring
from graphs import simplex_instance
from interfaces import SetColoring


def test_split_graph_size(paper19):
    g = split_graph(paper19)
    assert g.number_of_nodes() == 17 + 2 + 3
    assert g.has_edge((0, 0), (0, 1))
    assert g.has_edge((0, 1), (18, 2))


def test_proper_rim_coloring(rim18, rim_colorings):
    assert verify_set_coloring(rim18, rim_colorings[0], 3) == []


def test_shared_color_is_reported(rim18):
    problems = verify_set_coloring(rim18, SetColoring.from_lists([[0]] * 18))
    assert problems
    assert "share color 0" in problems[0]


def test_wrong_set_size(paper19):
    coloring = SetColoring.from_lists([[v % 6] for v in range(19)])
    problems = verify_set_coloring(paper19, coloring)
    assert any("demand 2" in p for p in problems)
    assert any("demand 3" in p for p in problems)


def test_palette_bound(rim18, rim_colorings):
    assert any("outside palette" in p for p in verify_set_coloring(rim18, rim_colorings[0], 2))


def test_wrong_vertex_count(rim18):
    assert verify_set_coloring(rim18, SetColoring.from_lists([[0]])) != []


def test_reference_numbers():
    assert reference_chromatic_number(nx.empty_graph(0)) == 0
    assert reference_chromatic_number(nx.empty_graph(3)) == 1
    assert reference_chromatic_number(nx.complete_graph(4)) == 4
    assert reference_set_chromatic_number(simplex_instance(2)) == 6
