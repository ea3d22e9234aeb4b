"""
Независимая проверка раскрасок
Свидетельство проверяется через расщепление вершин в клики (networkx), а хроматическое
число эталонно считается простым последовательным перебором. Код поиска не используется.
"""

from typing import Dict, List, Optional, Tuple

import networkx as nx

from graphs import GeometricGraph
from interfaces import SetColoring

Copy = Tuple[int, int]


def split_graph(graph: GeometricGraph) -> nx.Graph:
    """
    Граф расщепления: вершина v с кратностью m заменяется кликой из m копий (v, 0..m-1),
    все копии смежных вершин попарно соединены
    """
    g = nx.Graph()
    for v in range(graph.n):
        copies = [(v, i) for i in range(graph.demands[v])]
        g.add_nodes_from(copies)
        g.add_edges_from((copies[i], copies[j]) for i in range(len(copies)) for j in range(i + 1, len(copies)))
    for u, v in graph.edges:
        for i in range(graph.demands[u]):
            for j in range(graph.demands[v]):
                g.add_edge((u, i), (v, j))
    return g


def verify_set_coloring(graph: GeometricGraph, coloring: SetColoring, k: Optional[int] = None) -> List[str]:
    """Список нарушений раскраски (пустой - раскраска правильная)"""
    problems = []
    if len(coloring.assignment) != graph.n:
        return [f"coloring has {len(coloring.assignment)} vertices, graph has {graph.n}"]

    proper: Dict[Copy, int] = {}
    for v, colors in enumerate(coloring.assignment):
        ordered = sorted(colors)
        if len(ordered) != graph.demands[v]:
            problems.append(f"vertex {graph.label_of(v)}: {len(ordered)} colors for demand {graph.demands[v]}")
            continue
        for i, c in enumerate(ordered):
            if c < 0 or (k is not None and c >= k):
                problems.append(f"vertex {graph.label_of(v)}: color {c} outside palette")
            proper[(v, i)] = c

    split = split_graph(graph)
    for a, b in split.edges():
        if a in proper and b in proper and proper[a] == proper[b]:
            problems.append(f"vertices {graph.label_of(a[0])} and {graph.label_of(b[0])} share color {proper[a]}")
    return problems


def reference_chromatic_number(g: nx.Graph) -> int:
    """Хроматическое число простым перебором в порядке вершин, без эвристик"""
    nodes = sorted(g.nodes())
    if not nodes:
        return 0
    position = {v: i for i, v in enumerate(nodes)}
    earlier = [[position[w] for w in g.neighbors(v) if position[w] < i] for i, v in enumerate(nodes)]

    def colorable(k: int) -> bool:
        colors = [-1] * len(nodes)

        def place(i: int) -> bool:
            if i == len(nodes):
                return True
            taken = {colors[j] for j in earlier[i]}
            for c in range(k):
                if c not in taken:
                    colors[i] = c
                    if place(i + 1):
                        return True
            colors[i] = -1
            return False

        return place(0)

    k = 1
    while not colorable(k):
        k += 1
    return k


def reference_set_chromatic_number(graph: GeometricGraph) -> int:
    """Хроматическое число раскраски множествами как обычное хроматическое число графа расщепления"""
    return reference_chromatic_number(split_graph(graph))
