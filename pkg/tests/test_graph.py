from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from twodist.generators import cycle, path, petersen, star
from twodist.graph import (
    Graph,
    GraphFormatError,
    average_degree,
    dump_graph,
    enumerate_paths,
    girth,
    load_graph,
    mad_exact,
    square,
    two_distance_neighbors,
)


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(1, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return Graph.from_edges(n, chosen)


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def test_load_path():
    g = load_graph("3 2\n0 1\n1 2")
    assert g == path(3)


def test_load_cycle():
    assert load_graph("5 5\n0 1\n1 2\n2 3\n3 4\n4 0") == cycle(5)


def test_load_duplicate_edge_names_line():
    with pytest.raises(GraphFormatError) as err:
        load_graph("3 2\n0 1\n0 1")
    assert err.value.lineno == 3


@pytest.mark.parametrize(
    "text, line",
    [
        ("3 1\n0 3", 2),
        ("3 1\n1 1", 2),
        ("3 1\n0 x", 2),
        ("3 2\n0 1\n1 2\n0 2", 4),
    ],
)
def test_load_errors(text, line):
    with pytest.raises(GraphFormatError) as err:
        load_graph(text)
    assert err.value.lineno == line


def test_comments_and_edge_order_ignored():
    a = load_graph("# hi\n3 2\n# mid\n1 2\n0 1\n")
    assert a == path(3)


@given(graphs())
def test_dump_is_canonical_and_round_trips(g):
    text = dump_graph(g)
    assert load_graph(text) == g
    lines = text.split("\n")
    assert text.endswith("\n")
    body = [tuple(map(int, ln.split())) for ln in lines[1:-1]]
    assert body == sorted(body)
    assert all(u < v for u, v in body)


def test_girth_examples():
    assert girth(cycle(5)) == 5
    assert girth(path(4)) == math.inf
    assert girth(petersen()) == 5


@settings(max_examples=150)
@given(graphs())
def test_girth_matches_networkx(g):
    expected = nx.girth(to_nx(g))
    assert girth(g) == expected


def test_square_examples():
    assert square(path(3)) == Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    assert square(cycle(5)).m == 10
    assert square(petersen()).m == 45


@given(graphs())
def test_square_contains_graph_and_matches_distances(g):
    sq = square(g)
    assert set(g.edges()) <= set(sq.edges())
    dist = dict(nx.all_pairs_shortest_path_length(to_nx(g), cutoff=2))
    for u, v in combinations(range(g.n), 2):
        assert sq.has_edge(u, v) == (v in dist[u])


def test_two_distance_neighbors_examples():
    s = star(4)
    assert two_distance_neighbors(s, 0) == {1, 2, 3, 4}
    assert two_distance_neighbors(s, 1) == {0, 2, 3, 4}
    assert all(two_distance_neighbors(cycle(5), v) == set(range(5)) - {v} for v in range(5))


@given(graphs())
def test_two_distance_degree_bound(g):
    delta = g.max_degree()
    for v in range(g.n):
        assert len(two_distance_neighbors(g, v)) <= g.degree(v) * delta


def test_two_distance_bound_tight_on_uniform_tree():
    # complete ternary branching: root has 3 children, every other inner node 2 children
    edges, nxt = [], 1
    frontier = [0]
    for depth in range(3):
        new = []
        for v in frontier:
            for _ in range(3 if v == 0 else 2):
                edges.append((v, nxt))
                new.append(nxt)
                nxt += 1
        frontier = new
    g = Graph.from_edges(nxt, edges)
    assert all(g.degree(w) == 3 for w in (0, *g.adj[0]))
    for v in range(g.n):
        if all(g.degree(w) == 3 for w in (v, *g.adj[v])):
            assert len(two_distance_neighbors(g, v)) == 9


def test_mad_examples():
    assert mad_exact(cycle(5)) == 2
    assert mad_exact(petersen()) == 3
    assert mad_exact(star(3)) == Fraction(3, 2)


def _mad_brute(g: Graph) -> Fraction:
    best = Fraction(0)
    for r in range(1, g.n + 1):
        for sub in combinations(range(g.n), r):
            h, _ = g.induced(sub)
            best = max(best, Fraction(2 * h.m, h.n))
    return best


@settings(max_examples=120, deadline=None)
@given(graphs(max_n=8))
def test_mad_matches_subset_enumeration(g):
    m = mad_exact(g)
    assert m == _mad_brute(g)
    assert m >= average_degree(g)


def test_enumerate_paths_examples():
    # two claw centers joined through one 2-vertex
    g = Graph.from_edges(8, [(0, 1), (0, 2), (0, 3), (3, 4), (4, 5), (4, 6), (4, 7)])
    d = enumerate_paths(g)
    ks = sorted(t.k for t in d.paths)
    assert ks == [1]
    assert d.paths[0].internals == (3,)

    c = enumerate_paths(cycle(5))
    assert c.paths == [] and c.has_two_regular_component

    # two 3-vertices joined through u, v, w
    h = Graph.from_edges(
        9, [(0, 1), (0, 2), (0, 3), (3, 4), (4, 5), (5, 6), (6, 7), (6, 8)]
    )
    t = enumerate_paths(h).paths
    assert [x.k for x in t] == [3]


@given(graphs())
def test_enumerate_paths_partitions_two_vertices(g):
    d = enumerate_paths(g)
    owners = []
    for t in d.paths + d.pendant:
        owners += list(t.internals)
        for x in t.internals:
            assert g.degree(x) == 2
        walk = t.walk()
        assert all(g.has_edge(a, b) for a, b in zip(walk, walk[1:]))
    for t in d.paths:
        assert g.degree(t.start) >= 3 and g.degree(t.end) >= 3
    for c in d.cycles:
        owners += list(c)
    twos = [v for v in range(g.n) if g.degree(v) == 2]
    assert sorted(owners) == twos
