from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given, settings

from conftest import CORPUS, graphs, is_connected_brute
from ghrec.errors import GhrecError, InputError
from ghrec.graph import (Graph, bridges, classify_basic, connected_components, maximal_cliques, parse_graph,
                         serialize_graph)

K5_EDGES = list(combinations(range(1, 6), 2))


def test_parse_k2():
    g = parse_graph("p ghrec 2 1\ne 1 2")
    assert (g.n, g.m) == (2, 1)
    assert g.has_edge(2, 1)


def test_parse_k5_minus_e():
    text = "p ghrec 5 9\n" + "\n".join(f"e {u} {v}" for u, v in K5_EDGES if (u, v) != (4, 5))
    g = parse_graph(text)
    assert (g.n, g.m) == (5, 9)
    assert not g.has_edge(4, 5)


@pytest.mark.parametrize("text, code", [
    ("p ghrec 2 1\ne 1 1", "SELF_LOOP"),
    ("p ghrec 2 1\ne 1 3", "VERTEX_OUT_OF_RANGE"),
    ("p ghrec 3 2\ne 1 2\ne 2 1", "DUPLICATE_EDGE"),
    ("p ghrec 3 2\ne 1 2", "COUNT_MISMATCH"),
    ("p ghrec 3 1\nx 1 2", "MALFORMED_LINE"),
    ("e 1 2", "MALFORMED_LINE"),
    ("p ghrec 3 1\ne 1 two", "MALFORMED_LINE"),
])
def test_parse_errors(text, code):
    with pytest.raises(InputError) as ei:
        parse_graph(text)
    assert ei.value.code == code


def test_serialize_examples():
    assert serialize_graph(Graph.from_edges(2, [(2, 1)])) == "p ghrec 2 1\ne 1 2"
    assert serialize_graph(Graph.from_edges(1, [])) == "p ghrec 1 0"


def test_comments_ignored():
    assert parse_graph("# hello\np ghrec 2 1\n\n# x\ne 2 1\n").edges == {(1, 2)}


@pytest.mark.parametrize("path", sorted(CORPUS.glob("*.gr")), ids=lambda p: p.name)
def test_corpus_round_trip(path):
    g = parse_graph(path.read_text())
    text = serialize_graph(g)
    assert serialize_graph(parse_graph(text)) == text
    assert parse_graph(text) == g


@given(graphs())
def test_round_trip_property(g):
    assert parse_graph(serialize_graph(g)) == g


def test_classify_examples():
    p4 = classify_basic(Graph.from_edges(4, [(1, 2), (2, 3), (3, 4)]))
    assert (p4.max_degree, p4.is_tree, p4.connected) == (2, True, True)
    star = classify_basic(Graph.from_edges(5, [(1, i) for i in range(2, 6)]))
    assert (star.max_degree, star.is_tree) == (4, True)
    assert not classify_basic(Graph.from_edges(4, [(1, 2), (3, 4)])).connected


def test_maximal_cliques_examples(corpus):
    assert maximal_cliques(corpus("k5me")) == [(1, 2, 3, 4), (1, 2, 3, 5)]
    assert maximal_cliques(corpus("triangle")) == [(1, 2, 3)]
    assert maximal_cliques(corpus("diamond")) == [(1, 2, 3), (2, 3, 4)]


def test_maximal_cliques_limit():
    with pytest.raises(GhrecError) as ei:
        maximal_cliques(Graph.from_edges(10, []), limit=5)
    assert ei.value.code == "SIZE_LIMIT"


@given(graphs(max_n=9))
def test_maximal_cliques_properties(g):
    cl = maximal_cliques(g)
    sets = [set(c) for c in cl]
    for c in cl:
        assert all(g.has_edge(u, v) for u, v in combinations(c, 2))
        # maximal: nothing outside extends it
        assert not any(all(g.has_edge(x, u) for u in c) for x in g.vertices() if x not in c)
    assert not any(a < b for a in sets for b in sets)
    assert all(any({u, v} <= s for s in sets) for u, v in g.edges)
    assert cl == sorted(cl)


def test_bridges_examples(corpus):
    assert bridges(Graph.from_edges(3, [(1, 2), (2, 3)])) == [(1, 2), (2, 3)]
    assert bridges(corpus("triangle")) == []
    two_triangles = Graph.from_edges(6, [(1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6), (3, 4)])
    assert bridges(two_triangles) == [(3, 4)]


def test_bridges_needs_connected():
    with pytest.raises(GhrecError) as ei:
        bridges(Graph.from_edges(4, [(1, 2), (3, 4)]))
    assert ei.value.code == "NOT_CONNECTED"


@settings(max_examples=200)
@given(graphs(max_n=12))
def test_bridges_match_brute_force(g):
    if not is_connected_brute(g.n, g.edges):
        return
    brute = sorted(e for e in g.edges if not is_connected_brute(g.n, g.edges - {e}))
    assert bridges(g) == brute


@given(graphs(max_n=10))
def test_components_partition(g):
    comps = connected_components(g)
    assert sorted(v for c in comps for v in c) == list(g.vertices())
    for c in comps:
        sub, _ = g.induced(c)
        assert is_connected_brute(sub.n, sub.edges)
