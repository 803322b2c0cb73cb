from __future__ import annotations

from itertools import combinations
from pathlib import Path

import pytest
from hypothesis import strategies as st

from ghrec.graph import Graph, parse_graph

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def corpus_graph(name: str) -> Graph:
    return parse_graph((CORPUS / f"{name}.gr").read_text())


@pytest.fixture
def corpus():
    return corpus_graph


ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def criterion():
    """Record the one-line outcome of an acceptance criterion."""
    def record(k: int, ok: bool, detail: str) -> None:
        line = f"criterion {k}: {'PASS' if ok else 'FAIL'} {detail}"
        ACCEPTANCE[k] = line
        print(line)
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 8) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(1, n + 1), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, mask) if keep])


def is_connected_brute(n: int, edges) -> bool:
    if n <= 1:
        return True
    adj = {v: set() for v in range(1, n + 1)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    seen, stack = {1}, [1]
    while stack:
        for w in adj[stack.pop()] - seen:
            seen.add(w)
            stack.append(w)
    return len(seen) == n


@st.composite
def chordal_graphs(draw, min_n: int = 1, max_n: int = 10) -> Graph:
    """Connected chordal graphs: each new vertex is joined to a nonempty clique
    of the current graph, so reversing the insertion order is a perfect
    elimination ordering."""
    n = draw(st.integers(min_n, max_n))
    adj: dict[int, set[int]] = {1: set()}
    edges = []
    for v in range(2, n + 1):
        clique = [draw(st.integers(1, v - 1))]
        for w in range(1, v):
            if w not in clique and all(w in adj[c] for c in clique) and draw(st.booleans()):
                clique.append(w)
        adj[v] = set(clique)
        for c in clique:
            adj[c].add(v)
            edges.append((c, v))
    return Graph.from_edges(n, edges)


def is_chordless_cycle(g: Graph, cyc) -> bool:
    k = len(cyc)
    if k < 4 or len(set(cyc)) != k:
        return False
    for i in range(k):
        for j in range(i + 1, k):
            consecutive = j == i + 1 or (i == 0 and j == k - 1)
            if g.has_edge(cyc[i], cyc[j]) != consecutive:
                return False
    return True
