"""Triangle substitution for cubic graphs and an exact Hamiltonian cycle search."""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import GhrecError
from ..graph import Graph, is_connected
from ..hypergraph import Labelling

FOUND = "FOUND"
NONE = "NONE"
BUDGET_EXHAUSTED = "BUDGET_EXHAUSTED"

DP_LIMIT = 20
DEFAULT_BUDGET = 10_000_000


@dataclass(frozen=True)
class HamResult:
    status: str
    cycle: tuple[int, ...] | None = None


def ham_reduction(g: Graph) -> tuple[Graph, Labelling]:
    """Replace each vertex v of a cubic graph by a triangle labelled {v, v', u}
    for its three neighbours u, where v' = n + v.

    The copy of v facing u is vertex ``3(v-1) + i + 1`` when u is v's i-th
    neighbour in increasing order; it is joined to the copy of u facing v.
    """
    if any(g.degree(v) != 3 for v in g.vertices()):
        bad = next(v for v in g.vertices() if g.degree(v) != 3)
        raise GhrecError("NOT_CUBIC", f"vertex {bad} has degree {g.degree(bad)}", witness=bad)
    if not is_connected(g):
        raise GhrecError("NOT_CONNECTED", "the reduction expects a connected cubic graph")
    n = g.n
    copy: dict[tuple[int, int], int] = {}
    labels: dict[int, tuple[int, int, int]] = {}
    for v in g.vertices():
        for i, u in enumerate(sorted(g.adj[v])):
            vid = 3 * (v - 1) + i + 1
            copy[(v, u)] = vid
            labels[vid] = (v, n + v, u)
    edges = []
    for v in g.vertices():
        a, b, c = (copy[(v, u)] for u in sorted(g.adj[v]))
        edges += [(a, b), (a, c), (b, c)]
    for u, v in g.sorted_edges():
        edges.append((copy[(u, v)], copy[(v, u)]))
    return Graph.from_edges(3 * n, edges), Labelling.of(labels, 3)


def hamiltonian(g: Graph, budget: int = DEFAULT_BUDGET) -> HamResult:
    if g.n < 3 or not is_connected(g) or any(g.degree(v) < 2 for v in g.vertices()):
        return HamResult(NONE)
    if g.n <= DP_LIMIT:
        return _held_karp(g)
    return _backtrack(g, budget)


def _held_karp(g: Graph) -> HamResult:
    """reach[mask] = bitset of end vertices of paths from vertex 0 covering mask."""
    n = g.n
    nb = [0] * n
    for u, v in g.edges:
        nb[u - 1] |= 1 << (v - 1)
        nb[v - 1] |= 1 << (u - 1)
    full = (1 << n) - 1
    reach = [0] * (1 << n)
    reach[1] = 1
    for mask in range(1, full + 1, 2):  # only masks containing vertex 0
        ends = reach[mask]
        while ends:
            low = ends & -ends
            v = low.bit_length() - 1
            ends ^= low
            out = nb[v] & ~mask
            while out:
                w = out & -out
                out ^= w
                reach[mask | w] |= w
    closing = reach[full] & nb[0]
    if not closing:
        return HamResult(NONE)
    v = (closing & -closing).bit_length() - 1
    path = [v]
    mask = full
    while v != 0:
        mask ^= 1 << v
        prev = reach[mask] & nb[v]
        v = (prev & -prev).bit_length() - 1
        path.append(v)
    path.reverse()
    return HamResult(FOUND, tuple(x + 1 for x in path))


def _backtrack(g: Graph, budget: int) -> HamResult:
    n = g.n
    adj = [sorted(g.adj[v]) for v in range(n + 1)]
    start = 1
    on_path = [False] * (n + 1)
    on_path[start] = True
    path = [start]
    free_deg = [len(adj[v]) for v in range(n + 1)]
    nodes = 0

    def dead() -> bool:
        # an unvisited vertex needs two usable neighbours (unvisited, or a path end)
        for v in range(1, n + 1):
            if not on_path[v] and free_deg[v] < 2:
                ends = (path[-1] in g.adj[v]) + (start in g.adj[v])
                if free_deg[v] + ends < 2:
                    return True
        return False

    def visit(v: int, delta: int) -> None:
        for w in adj[v]:
            free_deg[w] += delta

    visit(start, -1)
    stack = [iter(adj[start])]
    while stack:
        nxt = None
        for w in stack[-1]:
            if not on_path[w]:
                nxt = w
                break
        if nxt is None:
            stack.pop()
            if len(path) > 1:
                v = path.pop()
                on_path[v] = False
                visit(v, 1)
            continue
        nodes += 1
        if nodes > budget:
            return HamResult(BUDGET_EXHAUSTED)
        path.append(nxt)
        on_path[nxt] = True
        visit(nxt, -1)
        if len(path) == n:
            if start in g.adj[nxt]:
                return HamResult(FOUND, tuple(path))
        elif not dead():
            stack.append(iter(adj[nxt]))
            continue
        path.pop()
        on_path[nxt] = False
        visit(nxt, 1)
    return HamResult(NONE)
