"""Exact enumeration and exact statistics against brute-force oracles."""

from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import graph_with_isolated, random_edges
from triadic import UndirectedGraph, enumerate_triangles, exact_stats, triangle_batches


def complete_graph(n: int) -> UndirectedGraph:
    return UndirectedGraph.from_edges(itertools.combinations(range(n), 2))


def star_graph(n: int) -> UndirectedGraph:
    return UndirectedGraph.from_edges((0, v) for v in range(1, n))


# --------------------------------------------------------------------------
# golden values on the toy graph


def test_toy_graph_counts(toy_graph):
    stats = exact_stats(toy_graph)
    assert stats.n == 7
    assert stats.m == 9
    assert stats.wedges == 18
    assert stats.triangles == 2


def test_toy_graph_coefficients(toy_graph):
    stats = exact_stats(toy_graph)
    assert stats.transitivity == pytest.approx(1 / 3, abs=1e-12)
    assert stats.local_cc == pytest.approx(53 / 105, abs=1e-12)
    assert stats.c_v == pytest.approx([0, 0, 1 / 3, 1 / 5, 1, 1, 1], abs=1e-12)
    assert list(stats.t_v) == [0, 0, 1, 2, 1, 1, 1]


def test_toy_graph_degree_breakdowns(toy_graph):
    stats = exact_stats(toy_graph)
    assert stats.c_by_degree == pytest.approx({2: 3 / 5, 3: 1 / 3, 5: 1 / 5})
    assert stats.t_by_degree == {2: 2, 3: 1, 5: 2}


def test_toy_graph_triangle_identities(toy_graph):
    triples = []
    count = enumerate_triangles(toy_graph, triples.append)
    assert count == 2
    assert sorted(triples) == [(2, 3, 4), (3, 5, 6)]


# --------------------------------------------------------------------------
# structured families


@pytest.mark.parametrize("n,expected", [(3, 1), (4, 4), (5, 10), (6, 20)])
def test_complete_graph_triangles(n, expected):
    assert enumerate_triangles(complete_graph(n)) == expected


def test_complete_graph_is_fully_clustered():
    stats = exact_stats(complete_graph(6))
    assert stats.transitivity == pytest.approx(1.0)
    assert stats.local_cc == pytest.approx(1.0)


def test_star_graph_has_no_triangles():
    stats = exact_stats(star_graph(8))
    assert stats.triangles == 0
    assert stats.transitivity == 0.0
    assert stats.local_cc == 0.0


def test_empty_graph_statistics():
    stats = exact_stats(UndirectedGraph.from_edges([]))
    assert stats.n == 0
    assert stats.triangles == 0
    assert stats.transitivity is None
    assert stats.local_cc is None
    assert stats.c_by_degree == {}


def test_wedgeless_graph_statistics():
    stats = exact_stats(UndirectedGraph.from_edges([(0, 1), (2, 3)]))
    assert stats.wedges == 0
    assert stats.transitivity is None
    assert stats.local_cc == 0.0


# --------------------------------------------------------------------------
# enumeration mechanics


def test_visitor_sees_each_triangle_once_ascending():
    graph = complete_graph(6)
    seen = []
    count = enumerate_triangles(graph, seen.append)
    assert count == len(seen) == 20
    assert len(set(seen)) == 20
    assert all(a < b < c for a, b, c in seen)


def test_enumeration_order_is_deterministic(toy_graph):
    first, second = [], []
    enumerate_triangles(toy_graph, first.append)
    enumerate_triangles(toy_graph, second.append)
    assert first == second


def test_small_chunks_yield_all_triangles():
    rng = np.random.default_rng(11)
    graph = UndirectedGraph.from_edges(random_edges(rng, 20, 0.4))
    whole = [row for batch in triangle_batches(graph) for row in batch.tolist()]
    pieces = [row for batch in triangle_batches(graph, chunk=4) for row in batch.tolist()]
    assert pieces == whole
    assert len(whole) == len(oracles.brute_triangles(20, graph.edge_array()))


def test_low_degree_average_modes():
    # a triangle plus a pendant: the pendant counts as zero or is excluded
    graph = UndirectedGraph.from_edges([(0, 1), (0, 2), (1, 2), (2, 3)])
    including = exact_stats(graph)
    excluding = exact_stats(graph, include_low_degree=False)
    per_vertex = oracles.clustering_per_vertex(4, graph.edge_array())
    assert including.local_cc == pytest.approx(
        float(sum(per_vertex.values()) / 4), abs=1e-12
    )
    assert excluding.local_cc == pytest.approx(
        float(sum(per_vertex.values()) / 3), abs=1e-12
    )


# --------------------------------------------------------------------------
# oracle agreement


@given(st.lists(st.tuples(st.integers(0, 13), st.integers(0, 13)), max_size=50))
@settings(max_examples=150, deadline=None)
def test_property_enumeration_matches_brute_force(edges):
    graph = UndirectedGraph.from_edges(edges)
    triples = []
    count = enumerate_triangles(graph, triples.append)
    assert count == len(triples)
    assert sorted(triples) == oracles.brute_triangles(graph.n, graph.edge_array())


@given(st.lists(st.tuples(st.integers(0, 11), st.integers(0, 11)), max_size=40))
@settings(max_examples=100, deadline=None)
def test_property_stats_match_oracles(edges):
    graph = UndirectedGraph.from_edges(edges)
    stats = exact_stats(graph)
    pairs = graph.edge_array()
    n = graph.n
    assert stats.triangles == len(oracles.brute_triangles(n, pairs))
    if stats.wedges:
        assert stats.transitivity == pytest.approx(
            float(oracles.transitivity(n, pairs)), abs=1e-12
        )
    expected_c = oracles.local_clustering(n, pairs)
    if n:
        assert stats.local_cc == pytest.approx(float(expected_c), abs=1e-12)
    for d, value in oracles.degree_clustering(n, pairs).items():
        assert stats.c_by_degree[d] == pytest.approx(float(value), abs=1e-12)
    oracle_t_d = oracles.triangles_per_degree(n, pairs)
    for d, count in stats.t_by_degree.items():
        assert count == oracle_t_d.get(d, 0)


def test_exact_stats_on_padded_random_graph():
    rng = np.random.default_rng(23)
    edges = random_edges(rng, 12, 0.3)
    graph = graph_with_isolated(edges, 12)
    stats = exact_stats(graph)
    assert graph.n == 12
    assert stats.triangles == len(oracles.brute_triangles(12, edges))
    assert stats.wall_seconds >= 0.0
