import io
import json

import pytest

from exceptions import GraphFormatError, GraphValidationError
from graph_io import (EMITTERS, DotEmitter, SvgGraphEmitter, dumps_colorings, dumps_graph, load_colorings,
                      load_graph, loads_graph, save_colorings, save_graph)
from graphs import (CirculantSpec, build_rim18, build_rim18_bichromatic, build_two_ring_candidate, circulant,
                    simplex_instance)
from interfaces import SetColoring


SHIPPED_INSTANCES = [
    build_rim18,
    lambda: build_rim18_bichromatic(1),
    lambda: circulant(CirculantSpec(18, frozenset({3, 4}))),
    lambda: circulant(CirculantSpec(7, frozenset({1, 3}))),
    lambda: build_two_ring_candidate(6, 6, 1.3, 0.3),
] + [lambda n=n: simplex_instance(n) for n in range(1, 6)]


class TestGraphDocument:
    @pytest.mark.parametrize("factory", SHIPPED_INSTANCES)
    def test_save_then_load_is_identity(self, factory, tmp_path):
        graph = factory()
        path = tmp_path / "nested" / "graph.json"
        save_graph(graph, path)
        loaded = load_graph(path)
        assert loaded == graph
        assert loaded.name == graph.name
        assert loaded.labels == graph.labels

    def test_paper19_survives_save_and_load(self, paper19, tmp_path):
        path = tmp_path / "paper19.json"
        save_graph(paper19, path)
        loaded = load_graph(path)
        assert loaded == paper19
        assert loaded.name == "paper19"

    def test_abstract_graph_from_stream(self):
        graph = simplex_instance(3)
        loaded = load_graph(io.StringIO(dumps_graph(graph)))
        assert loaded.demands == (4, 3, 2, 1)
        assert not loaded.has_geometry

    def test_malformed_json_reports_position(self):
        with pytest.raises(GraphFormatError) as info:
            loads_graph('{"version": 1,\n "edges": [[0, 1]\n')
        assert info.value.line is not None

    def test_missing_field(self):
        with pytest.raises(GraphFormatError) as info:
            loads_graph(json.dumps({"version": 1, "edges": []}))
        assert info.value.field == "demands"

    def test_wrong_version(self):
        with pytest.raises(GraphFormatError):
            loads_graph(json.dumps({"version": 2, "edges": [], "demands": [1]}))

    def test_non_integer_endpoint(self):
        with pytest.raises(GraphFormatError) as info:
            loads_graph(json.dumps({"version": 1, "edges": [[0, "1"]], "demands": [1, 1]}))
        assert info.value.field == "edges[0][1]"

    def test_edge_out_of_range(self):
        with pytest.raises(GraphValidationError):
            loads_graph(json.dumps({"version": 1, "edges": [[0, 3]], "demands": [1, 1]}))

    def test_missing_geometric_edge_is_detected(self, paper19):
        document = json.loads(dumps_graph(paper19))
        document["edges"] = document["edges"][1:]
        with pytest.raises(GraphValidationError):
            loads_graph(json.dumps(document))

    def test_extra_edge_is_detected(self, rim18):
        document = json.loads(dumps_graph(rim18))
        document["interval"] = {"d": 1.3}
        document["edges"].append([0, 1])
        with pytest.raises(GraphValidationError):
            loads_graph(json.dumps(document))

    def test_duplicate_labels_are_rejected(self, rim18):
        document = json.loads(dumps_graph(rim18))
        document["labels"][1] = document["labels"][0]
        with pytest.raises(GraphValidationError) as info:
            loads_graph(json.dumps(document))
        assert "duplicate vertex labels" in str(info.value)


class TestColoringDocument:
    def test_save_and_load(self, tmp_path):
        colorings = [SetColoring.from_lists([[0], [1, 2], [3]]), SetColoring.from_lists([[1], [0, 2], [3]])]
        path = tmp_path / "colorings.json"
        save_colorings(colorings, path)
        assert load_colorings(path) == colorings

    def test_stream_round_trip(self):
        colorings = [SetColoring.from_lists([[0, 1, 2], [3]])]
        buffer = io.StringIO()
        save_colorings(iter(colorings), buffer)
        assert load_colorings(io.StringIO(dumps_colorings(colorings))) == colorings
        assert buffer.getvalue() == dumps_colorings(colorings)

    def test_missing_array(self):
        with pytest.raises(GraphFormatError):
            load_colorings(io.StringIO('{"version": 1}'))


class TestEmitters:
    def test_registry(self):
        assert set(EMITTERS) == {"dot", "svg"}

    def test_dot_lists_every_edge(self):
        text = DotEmitter().emit(circulant(CirculantSpec(18, frozenset({3, 4}))))
        assert text.startswith("graph C18_3_4_ {")
        assert text.count(" -- ") == 36

    def test_dot_with_coloring(self, rim18, rim_colorings):
        text = DotEmitter().emit(rim18, rim_colorings[0])
        assert text.count('colors="') == 18
        assert "fillcolor" in text

    def test_svg_is_deterministic(self, paper19):
        first = SvgGraphEmitter().emit(paper19)
        second = SvgGraphEmitter().emit(paper19)
        assert first == second
        assert "<svg" in first

    def test_svg_for_abstract_graph(self):
        text = SvgGraphEmitter(scale=40).emit(simplex_instance(3))
        assert "<svg" in text
