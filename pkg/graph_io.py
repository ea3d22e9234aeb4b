"""
Обмен графами: JSON документ, документ раскрасок, вывод в DOT и SVG
"""

import io
import json
import math
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, TextIO, Union

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import Wedge  # noqa: E402

from exceptions import GraphFormatError  # noqa: E402
from geometry import Point2, ToleranceConfig, interval_from_d  # noqa: E402
from graphs import GeometricGraph, circle_layout  # noqa: E402
from interfaces import IGraphEmitter, SetColoring  # noqa: E402
from logger_config import setup_unified_logger  # noqa: E402

logger = setup_unified_logger("graph_io")

FORMAT_VERSION = 1

PathOrStream = Union[str, Path, TextIO]

# Цвета вершин: индекс цвета -> RGB
PALETTE = [
    "#e6194b", "#3cb44b", "#ffe119", "#4363d8", "#f58231", "#911eb4", "#46f0f0",
    "#f032e6", "#bcf60c", "#fabebe", "#008080", "#e6beff",
]
UNCOLORED = "#ffffff"

matplotlib.rcParams['svg.hashsalt'] = 'interval-chromatic'


def color_hex(color: int) -> str:
    return PALETTE[color % len(PALETTE)]


def figure_to_svg(fig) -> str:
    """SVG без даты и со стабильными идентификаторами"""
    buf = io.StringIO()
    fig.savefig(buf, format='svg', metadata={'Date': None})
    plt.close(fig)
    return buf.getvalue()


def graph_to_document(graph: GeometricGraph) -> Dict[str, Any]:
    document: Dict[str, Any] = {'version': FORMAT_VERSION}
    if graph.name:
        document['name'] = graph.name
    if graph.has_geometry:
        document['points'] = [[p.x, p.y] for p in graph.points]
    document['edges'] = [[u, v] for u, v in graph.edges]
    document['demands'] = list(graph.demands)
    if graph.labels is not None:
        document['labels'] = list(graph.labels)
    if graph.interval is not None:
        document['interval'] = {'d': graph.interval.d}
    return document


def _write_text(text: str, destination: PathOrStream) -> None:
    if isinstance(destination, (str, Path)):
        path = Path(destination)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding='utf-8')
    else:
        destination.write(text)


def _read_text(source: PathOrStream) -> str:
    if isinstance(source, (str, Path)):
        return Path(source).read_text(encoding='utf-8')
    return source.read()


def dumps_graph(graph: GeometricGraph) -> str:
    return json.dumps(graph_to_document(graph), indent=2) + "\n"


def save_graph(graph: GeometricGraph, destination: PathOrStream) -> None:
    """Сохранение графа в JSON документ обмена"""
    _write_text(dumps_graph(graph), destination)
    logger.info(f"[GRAPH] Graph {graph.name or '<unnamed>'} saved ({graph.n} vertices, {len(graph.edges)} edges)")


def _parse_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise GraphFormatError(f"invalid JSON: {e.msg}", line=e.lineno, column=e.colno) from e


def _require_int_list(value: Any, field: str) -> List[int]:
    if not isinstance(value, list):
        raise GraphFormatError("expected an array", field=field)
    result = []
    for i, item in enumerate(value):
        if isinstance(item, bool) or not isinstance(item, int):
            raise GraphFormatError(f"expected an integer, got {item!r}", field=f"{field}[{i}]")
        result.append(item)
    return result


def _require_number(value: Any, field: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise GraphFormatError(f"expected a finite number, got {value!r}", field=field)
    return float(value)


def document_to_graph(document: Any, tolcfg: ToleranceConfig = ToleranceConfig()) -> GeometricGraph:
    """Разбор и повторная проверка документа обмена"""
    if not isinstance(document, dict):
        raise GraphFormatError("document root must be an object")
    if document.get('version') != FORMAT_VERSION:
        raise GraphFormatError(f"unsupported version {document.get('version')!r}", field='version')
    for required in ('edges', 'demands'):
        if required not in document:
            raise GraphFormatError("missing required field", field=required)

    demands = _require_int_list(document['demands'], 'demands')

    raw_edges = document['edges']
    if not isinstance(raw_edges, list):
        raise GraphFormatError("expected an array", field='edges')
    edges = []
    for i, pair in enumerate(raw_edges):
        pair = _require_int_list(pair, f"edges[{i}]")
        if len(pair) != 2:
            raise GraphFormatError(f"edge must have 2 endpoints, got {len(pair)}", field=f"edges[{i}]")
        edges.append((pair[0], pair[1]))

    points = []
    if 'points' in document:
        if not isinstance(document['points'], list):
            raise GraphFormatError("expected an array", field='points')
        for i, xy in enumerate(document['points']):
            if not isinstance(xy, list) or len(xy) != 2:
                raise GraphFormatError("point must be [x, y]", field=f"points[{i}]")
            points.append(Point2(_require_number(xy[0], f"points[{i}][0]"), _require_number(xy[1], f"points[{i}][1]")))

    labels = _require_int_list(document['labels'], 'labels') if 'labels' in document else None

    interval = None
    if 'interval' in document:
        raw_interval = document['interval']
        if not isinstance(raw_interval, dict) or 'd' not in raw_interval:
            raise GraphFormatError("interval must be an object with field d", field='interval')
        d = _require_number(raw_interval['d'], 'interval.d')
        if d < 1.0:
            raise GraphFormatError(f"interval.d must be >= 1, got {d}", field='interval.d')
        interval = interval_from_d(d)

    name = document.get('name', "")
    if not isinstance(name, str):
        raise GraphFormatError("expected a string", field='name')

    graph = GeometricGraph(points=tuple(points), edges=tuple(edges), demands=tuple(demands),
                           labels=tuple(labels) if labels is not None else None, interval=interval, name=name)
    graph.validate_geometry(tolcfg)
    return graph


def loads_graph(text: str, tolcfg: ToleranceConfig = ToleranceConfig()) -> GeometricGraph:
    return document_to_graph(_parse_json(text), tolcfg)


def load_graph(source: PathOrStream, tolcfg: ToleranceConfig = ToleranceConfig()) -> GeometricGraph:
    """Загрузка графа; ошибки разбора - GraphFormatError, ошибки проверки - GraphValidationError"""
    graph = loads_graph(_read_text(source), tolcfg)
    logger.info(f"[GRAPH] Graph {graph.name or '<unnamed>'} loaded ({graph.n} vertices, {len(graph.edges)} edges)")
    return graph


def dumps_colorings(colorings: Iterable[SetColoring]) -> str:
    document = {'version': FORMAT_VERSION, 'colorings': [c.as_lists() for c in colorings]}
    return json.dumps(document) + "\n"


def save_colorings(colorings: Iterable[SetColoring], destination: PathOrStream) -> None:
    """Сохранение раскрасок в сопутствующий документ"""
    colorings = list(colorings)
    _write_text(dumps_colorings(colorings), destination)
    logger.info(f"[GRAPH] {len(colorings)} coloring(s) saved")


def load_colorings(source: PathOrStream) -> List[SetColoring]:
    document = _parse_json(_read_text(source))
    if not isinstance(document, dict) or not isinstance(document.get('colorings'), list):
        raise GraphFormatError("missing colorings array", field='colorings')
    result = []
    for i, coloring in enumerate(document['colorings']):
        if not isinstance(coloring, list):
            raise GraphFormatError("expected an array", field=f"colorings[{i}]")
        result.append(SetColoring.from_lists(
            [_require_int_list(colors, f"colorings[{i}][{v}]") for v, colors in enumerate(coloring)]))
    return result


class DotEmitter(IGraphEmitter):
    """Топология графа в формате DOT, кратность как атрибут вершины"""

    file_suffix = ".dot"

    def emit(self, graph: GeometricGraph, coloring: Optional[SetColoring] = None) -> str:
        name = "".join(ch if ch.isalnum() else "_" for ch in (graph.name or "graph"))
        lines = [f"graph {name} {{"]
        for v in range(graph.n):
            attrs = [f'label="{graph.label_of(v)}"', f"demand={graph.demands[v]}"]
            if coloring is not None:
                colors = ",".join(str(c) for c in sorted(coloring.assignment[v]))
                attrs.append(f'colors="{colors}"')
                if len(coloring.assignment[v]) == 1:
                    attrs.append(f'style=filled fillcolor="{color_hex(min(coloring.assignment[v]))}"')
            lines.append(f"  v{v} [{' '.join(attrs)}];")
        for u, v in graph.edges:
            lines.append(f"  v{u} -- v{v};")
        lines.append("}")
        return "\n".join(lines) + "\n"


class SvgGraphEmitter(IGraphEmitter):
    """Геометрическое изображение графа; вершина рисуется секторами своих цветов"""

    file_suffix = ".svg"

    def __init__(self, scale: float = 80.0):
        self.scale = scale

    def emit(self, graph: GeometricGraph, coloring: Optional[SetColoring] = None) -> str:
        points = list(graph.points) if graph.has_geometry else circle_layout(graph.n, 1.0, math.pi / 2.0)
        xs = [p.x for p in points]
        ys = [p.y for p in points]
        span = max(max(xs) - min(xs), max(ys) - min(ys), 1.0)
        radius = 0.06 * span
        size = max(span * self.scale / 72.0, 3.0)

        fig, ax = plt.subplots(figsize=(size, size))
        ax.set_aspect('equal')
        ax.axis('off')

        for u, v in graph.edges:
            ax.plot([xs[u], xs[v]], [ys[u], ys[v]], color="#555555", linewidth=0.8, zorder=1)

        for v, p in enumerate(points):
            colors = sorted(coloring.assignment[v]) if coloring is not None else []
            if colors:
                sweep = 360.0 / len(colors)
                for i, c in enumerate(colors):
                    ax.add_patch(Wedge((p.x, p.y), radius, 90 + i * sweep, 90 + (i + 1) * sweep,
                                       facecolor=color_hex(c), edgecolor="black", linewidth=0.6, zorder=2))
            else:
                ax.add_patch(Wedge((p.x, p.y), radius, 0, 360, facecolor=UNCOLORED, edgecolor="black",
                                   linewidth=0.6 + 0.6 * (graph.demands[v] - 1), zorder=2))
            ax.text(p.x, p.y + 1.6 * radius, str(graph.label_of(v)), ha='center', va='center', fontsize=8, zorder=3)

        pad = 3 * radius
        ax.set_xlim(min(xs) - pad, max(xs) + pad)
        ax.set_ylim(min(ys) - pad, max(ys) + pad)
        return figure_to_svg(fig)


EMITTERS = {
    'dot': DotEmitter,
    'svg': SvgGraphEmitter,
}
