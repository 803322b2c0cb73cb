"""Simple undirected graphs over vertex ids ``1..n`` and their text format.

File format::

    # comment
    p ghrec <n> <m>
    e <u> <v>        (exactly m lines)
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import GhrecError, InputError

Edge = tuple[int, int]

DEFAULT_CLIQUE_LIMIT = 64


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[Edge]
    adj: tuple[frozenset[int], ...] = field(repr=False, compare=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 0:
            raise InputError("MALFORMED_LINE", f"negative vertex count {n}")
        nbrs: list[set[int]] = [set() for _ in range(n + 1)]
        es: set[Edge] = set()
        for u, v in edges:
            if u == v:
                raise InputError("SELF_LOOP", f"loop at {u}", witness=(u, v))
            if not (1 <= u <= n and 1 <= v <= n):
                raise InputError("VERTEX_OUT_OF_RANGE", f"edge {u} {v} with n={n}", witness=(u, v))
            e = _norm(u, v)
            if e in es:
                raise InputError("DUPLICATE_EDGE", f"edge {e[0]} {e[1]} repeated", witness=e)
            es.add(e)
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, frozenset(es), tuple(frozenset(s) for s in nbrs))

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph renumbered ``1..k``; also returns new-id -> old-id list (index 0 unused)."""
        old = sorted(set(vertices))
        new_of = {v: i for i, v in enumerate(old, 1)}
        adj = [frozenset()] + [frozenset(new_of[w] for w in self.adj[u] if w in new_of) for u in old]
        es = frozenset((i, j) for i in range(1, len(adj)) for j in adj[i] if i < j)
        return Graph(len(old), es, tuple(adj)), [0] + old


def parse_graph(text: str | Iterable[str]) -> Graph:
    lines = text.splitlines() if isinstance(text, str) else list(text)
    header = None
    pairs: list[tuple[int, int]] = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            if parts[0] == "p":
                if header is not None or len(parts) != 4 or parts[1] != "ghrec":
                    raise ValueError
                header = (int(parts[2]), int(parts[3]))
                if header[0] < 1 or header[1] < 0:
                    raise ValueError
            elif parts[0] == "e":
                if header is None or len(parts) != 3:
                    raise ValueError
                pairs.append((int(parts[1]), int(parts[2])))
            else:
                raise ValueError
        except ValueError:
            raise InputError("MALFORMED_LINE", f"line {lineno}: {line!r}") from None
    if header is None:
        raise InputError("MALFORMED_LINE", "missing 'p ghrec <n> <m>' header")
    n, m = header
    g = Graph.from_edges(n, pairs)
    if g.m != m:
        raise InputError("COUNT_MISMATCH", f"header declares {m} edges, found {g.m}")
    return g


def serialize_graph(g: Graph) -> str:
    out = [f"p ghrec {g.n} {g.m}"]
    out.extend(f"e {u} {v}" for u, v in g.sorted_edges())
    return "\n".join(out)


@dataclass(frozen=True)
class StructureReport:
    n: int
    m: int
    max_degree: int
    min_degree: int
    connected: bool
    is_tree: bool


def connected_components(g: Graph) -> list[list[int]]:
    """Vertex sets of the components, each sorted, ordered by least vertex."""
    seen = bytearray(g.n + 1)
    comps = []
    for s in g.vertices():
        if seen[s]:
            continue
        seen[s] = 1
        comp = [s]
        stack = [s]
        while stack:
            v = stack.pop()
            for w in g.adj[v]:
                if not seen[w]:
                    seen[w] = 1
                    comp.append(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


def classify_basic(g: Graph) -> StructureReport:
    degs = [g.degree(v) for v in g.vertices()]
    connected = is_connected(g)
    return StructureReport(
        n=g.n,
        m=g.m,
        max_degree=max(degs, default=0),
        min_degree=min(degs, default=0),
        connected=connected,
        is_tree=connected and g.m == g.n - 1,
    )


def maximal_cliques(g: Graph, limit: int = DEFAULT_CLIQUE_LIMIT) -> list[tuple[int, ...]]:
    """All inclusion-maximal cliques (Bron-Kerbosch with pivoting), sorted."""
    if g.n > limit:
        raise GhrecError("SIZE_LIMIT", f"n={g.n} exceeds clique enumeration bound {limit}")
    out: list[tuple[int, ...]] = []

    def expand(r: list[int], p: set[int], x: set[int]) -> None:
        if not p and not x:
            out.append(tuple(sorted(r)))
            return
        pivot = max(p | x, key=lambda u: len(g.adj[u] & p))
        for v in sorted(p - g.adj[pivot]):
            expand(r + [v], p & g.adj[v], x & g.adj[v])
            p = p - {v}
            x = x | {v}

    if g.n:
        expand([], set(g.vertices()), set())
    return sorted(out)


def bridges(g: Graph) -> list[Edge]:
    """Cut-edges of a connected graph by an iterative lowpoint DFS."""
    if not is_connected(g):
        raise GhrecError("NOT_CONNECTED", "bridges() requires a connected graph")
    return _bridges(g)


def _bridges(g: Graph) -> list[Edge]:
    disc = [0] * (g.n + 1)
    low = [0] * (g.n + 1)
    found: list[Edge] = []
    t = 0
    for root in g.vertices():
        if disc[root]:
            continue
        t += 1
        disc[root] = low[root] = t
        stack: list[tuple[int, int, Iterator[int]]] = [(root, 0, iter(sorted(g.adj[root])))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if disc[w]:
                    if disc[w] < low[v]:
                        low[v] = disc[w]
                else:
                    t += 1
                    disc[w] = low[w] = t
                    stack.append((w, v, iter(sorted(g.adj[w]))))
                    advanced = True
                    break
            if not advanced:
                stack.pop()
                if parent:
                    if low[v] < low[parent]:
                        low[parent] = low[v]
                    if low[v] > disc[parent]:
                        found.append(_norm(parent, v))
    return sorted(found)
