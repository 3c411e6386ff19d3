"""Shared fixtures: the toy graph and random graph generators."""

from __future__ import annotations

import numpy as np
import pytest

from triadic import DirectedGraph, UndirectedGraph

# The running example: 7 vertices, 9 edges, 18 wedges, 2 triangles,
# transitivity 1/3, local clustering coefficient 53/105. Labels are 1-based
# to exercise label compaction.
TOY_EDGES = [
    (1, 2),
    (1, 3),
    (2, 4),
    (3, 4),
    (3, 5),
    (4, 5),
    (4, 6),
    (4, 7),
    (6, 7),
]

# Same graph on compacted 0-based ids, the form the oracles consume.
TOY_EDGES_0 = [(u - 1, v - 1) for u, v in TOY_EDGES]
TOY_N = 7


@pytest.fixture
def toy_graph() -> UndirectedGraph:
    return UndirectedGraph.from_edges(TOY_EDGES)


def random_edges(rng: np.random.Generator, n: int, p: float) -> list[tuple[int, int]]:
    """Each of the C(n, 2) undirected edges present independently with prob p."""
    return [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if rng.random() < p
    ]


def random_darts(rng: np.random.Generator, n: int, p: float) -> list[tuple[int, int]]:
    """Each of the n(n-1) ordered edges present independently with prob p."""
    return [
        (u, v)
        for u in range(n)
        for v in range(n)
        if u != v and rng.random() < p
    ]


def graph_with_isolated(edges: list[tuple[int, int]], n: int) -> UndirectedGraph:
    """Build a graph guaranteeing vertices 0..n-1 exist, via self-loop padding.

    Self-loops are dropped during construction but their endpoints survive as
    isolated vertices, so random graphs keep their intended vertex count even
    when some vertices drew no edges.
    """
    return UndirectedGraph.from_edges(edges + [(v, v) for v in range(n)])


def digraph_with_isolated(darts: list[tuple[int, int]], n: int) -> DirectedGraph:
    """Directed counterpart of :func:`graph_with_isolated`."""
    return DirectedGraph.from_edges(darts + [(v, v) for v in range(n)])
