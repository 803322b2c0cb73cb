"""Chordality test, maximal cliques of chordal graphs, and clique trees."""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field

from .errors import GhrecError
from .graph import Graph, is_connected

STRONG = "strong"
WEAK = "weak"


@dataclass(frozen=True)
class EliminationOrder:
    order: tuple[int, ...]
    chordal: bool
    hole_witness: tuple[int, ...] | None = None

    def position(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.order)}


def _mcs_order(g: Graph) -> list[int]:
    """Maximum cardinality search; returns the reverse of the visit order."""
    n = g.n
    weight = [0] * (n + 1)
    done = bytearray(n + 1)
    buckets: list[set[int]] = [set(g.vertices())] + [set() for _ in range(n)]
    top = 0
    visit = []
    for _ in range(n):
        while top > 0 and not buckets[top]:
            top -= 1
        v = min(buckets[top]) if top == 0 else buckets[top].pop()
        if top == 0:
            buckets[0].discard(v)
        done[v] = 1
        visit.append(v)
        for w in g.adj[v]:
            if not done[w]:
                buckets[weight[w]].discard(w)
                weight[w] += 1
                buckets[weight[w]].add(w)
                if weight[w] > top:
                    top = weight[w]
    visit.reverse()
    return visit


def _later_neighbors(g: Graph, order: list[int] | tuple[int, ...]) -> tuple[dict[int, int], dict[int, list[int]]]:
    pos = {v: i for i, v in enumerate(order)}
    later = {v: [w for w in g.adj[v] if pos[w] > pos[v]] for v in order}
    return pos, later


def _peo_violation(g: Graph, order) -> int | None:
    pos, later = _later_neighbors(g, order)
    for v in order:
        lv = later[v]
        if len(lv) < 2:
            continue
        p = min(lv, key=pos.__getitem__)
        np_ = g.adj[p]
        for u in lv:
            if u != p and u not in np_:
                return v
    return None


def _hole_through(g: Graph, v: int) -> tuple[int, ...] | None:
    nv = sorted(g.adj[v])
    blocked = set(nv) | {v}
    for i, a in enumerate(nv):
        for b in nv[i + 1:]:
            if b in g.adj[a]:
                continue
            # shortest a-b path avoiding N[v] except a, b
            prev = {a: None}
            dq = deque([a])
            while dq and b not in prev:
                x = dq.popleft()
                for y in sorted(g.adj[x]):
                    if y not in prev and (y == b or y not in blocked):
                        prev[y] = x
                        dq.append(y)
            if b in prev:
                path = [b]
                while prev[path[-1]] is not None:
                    path.append(prev[path[-1]])
                return (v,) + tuple(reversed(path))
    return None


def find_hole(g: Graph, hint: int | None = None) -> tuple[int, ...] | None:
    """A chordless cycle of length >= 4 (vertex sequence), or None if chordal."""
    starts = ([hint] if hint else []) + list(g.vertices())
    for v in starts:
        h = _hole_through(g, v)
        if h:
            return h
    return None


def mcs_peo(g: Graph) -> EliminationOrder:
    if not is_connected(g):
        raise GhrecError("NOT_CONNECTED", "mcs_peo requires a connected graph")
    order = _mcs_order(g)
    bad = _peo_violation(g, order)
    if bad is None:
        return EliminationOrder(tuple(order), True)
    return EliminationOrder(tuple(order), False, find_hole(g, bad))


def chordal_maximal_cliques(g: Graph, ord: EliminationOrder) -> list[tuple[int, ...]]:
    if not ord.chordal:
        raise GhrecError("NOT_CHORDAL", "order is not a perfect elimination ordering", witness=ord.hole_witness)
    pos, later = _later_neighbors(g, ord.order)
    absorbed = set()
    for v in ord.order:
        lv = later[v]
        if lv:
            p = min(lv, key=pos.__getitem__)
            if len(lv) == len(later[p]) + 1:
                absorbed.add(p)
    return sorted(tuple(sorted([v] + later[v])) for v in ord.order if v not in absorbed)


@dataclass(frozen=True)
class TreeEdge:
    a: int
    b: int
    separator: tuple[int, ...]

    @property
    def kind(self) -> str:
        return STRONG if len(self.separator) == 2 else WEAK

    def other(self, c: int) -> int:
        return self.b if c == self.a else self.a


@dataclass(frozen=True)
class CliqueTree:
    cliques: tuple[tuple[int, ...], ...]
    edges: tuple[TreeEdge, ...]
    root: int = 0
    _incident: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        inc: dict[int, list[TreeEdge]] = {i: [] for i in range(len(self.cliques))}
        for e in self.edges:
            inc[e.a].append(e)
            inc[e.b].append(e)
        object.__setattr__(self, "_incident", inc)

    def incident(self, c: int) -> list[TreeEdge]:
        return self._incident[c]

    def cliques_of(self) -> dict[int, list[int]]:
        """vertex -> ids of the cliques containing it"""
        out: dict[int, list[int]] = {}
        for i, c in enumerate(self.cliques):
            for v in c:
                out.setdefault(v, []).append(i)
        return out

    def bfs(self, root: int | None = None) -> list[tuple[int, TreeEdge | None]]:
        """(clique id, edge to parent) in breadth-first order from the root."""
        r = self.root if root is None else root
        out = [(r, None)]
        seen = {r}
        i = 0
        while i < len(out):
            c = out[i][0]
            i += 1
            for e in self.incident(c):
                d = e.other(c)
                if d not in seen:
                    seen.add(d)
                    out.append((d, e))
        return out

    def dump(self) -> str:
        lines = [f"c {i} " + " ".join(map(str, c)) for i, c in enumerate(self.cliques)]
        lines += [f"t {e.a} {e.b} " + " ".join(map(str, e.separator)) for e in self.edges]
        return "\n".join(lines)


def clique_tree_from_cliques(cliques: list[tuple[int, ...]], seed: int | None = None) -> CliqueTree:
    """Maximum-weight spanning tree of the clique intersection graph."""
    by_vertex: dict[int, list[int]] = {}
    for i, c in enumerate(cliques):
        for v in c:
            by_vertex.setdefault(v, []).append(i)
    weight: dict[tuple[int, int], int] = {}
    for ids in by_vertex.values():
        for x in range(len(ids)):
            for y in range(x + 1, len(ids)):
                key = (ids[x], ids[y])
                weight[key] = weight.get(key, 0) + 1
    cand = list(weight.items())
    if seed is None:
        cand.sort(key=lambda kv: (-kv[1], kv[0]))
    else:
        rng = random.Random(seed)
        rng.shuffle(cand)
        cand.sort(key=lambda kv: -kv[1])
    parent = list(range(len(cliques)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges = []
    for (i, j), _ in cand:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            sep = tuple(sorted(set(cliques[i]) & set(cliques[j])))
            edges.append(TreeEdge(i, j, sep))
    return CliqueTree(tuple(cliques), tuple(edges))


def build_clique_tree(g: Graph, seed: int | None = None) -> CliqueTree:
    """Clique tree of a connected chordal graph; refuses separators of size >= 3."""
    return clique_tree_of_order(g, mcs_peo(g), seed)


def clique_tree_of_order(g: Graph, ord_: EliminationOrder, seed: int | None = None) -> CliqueTree:
    return checked_clique_tree(chordal_maximal_cliques(g, ord_), seed)


def checked_clique_tree(cliques: list[tuple[int, ...]], seed: int | None = None) -> CliqueTree:
    t = clique_tree_from_cliques(cliques, seed)
    for e in t.edges:
        if len(e.separator) >= 3:
            raise GhrecError(
                "SEPARATOR_TOO_BIG",
                f"cliques {e.a} and {e.b} share {e.separator}",
                witness=(t.cliques[e.a], t.cliques[e.b], e.separator),
            )
    return t
