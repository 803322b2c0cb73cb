"""Fixed small configurations and induced-copy search.

Template vertices are numbered so that every vertex after the first is adjacent
to an earlier one; the search assigns them in that order.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations

from .graph import Graph


class PatternName(enum.Enum):
    CLAW = "claw"
    K14 = "k14"
    DIAMOND = "diamond"
    BUTTERFLY = "butterfly"
    W4 = "w4"
    W5 = "w5"
    PRISM = "prism"
    SUN3 = "sun3"
    K4_PLUS_V = "k4+v"
    K5_MINUS_E = "k5-e"


@dataclass(frozen=True)
class Template:
    name: PatternName
    size: int
    edges: frozenset[tuple[int, int]]
    roles: dict[str, tuple[int, ...]]

    def adjacent(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self.edges

    def degree(self, a: int) -> int:
        return sum(1 for e in self.edges if a in e)

    def as_graph(self) -> Graph:
        """The template itself as a graph on ``1..size``."""
        return Graph.from_edges(self.size, [(a + 1, b + 1) for a, b in self.edges])


def _t(name, size, edges, roles) -> Template:
    return Template(name, size, frozenset((min(a, b), max(a, b)) for a, b in edges), roles)


def _cycle(vs):
    return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]


TEMPLATES: dict[PatternName, Template] = {
    t.name: t
    for t in [
        _t(PatternName.CLAW, 4, [(0, 1), (0, 2), (0, 3)], {"center": (0,), "leaves": (1, 2, 3)}),
        _t(PatternName.K14, 5, [(0, i) for i in range(1, 5)], {"center": (0,), "leaves": (1, 2, 3, 4)}),
        _t(
            PatternName.DIAMOND, 4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)],
            {"spine": (0, 1), "tips": (2, 3), "t1": (0, 1, 2), "t2": (0, 1, 3)},
        ),
        _t(
            PatternName.BUTTERFLY, 5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)],
            {"center": (0,), "t1": (0, 1, 2), "t2": (0, 3, 4)},
        ),
        _t(
            PatternName.W4, 5, [(0, i) for i in range(1, 5)] + _cycle([1, 2, 3, 4]),
            {"hub": (0,), "rim": (1, 2, 3, 4),
             "t1": (0, 1, 2), "t2": (0, 2, 3), "t3": (0, 3, 4), "t4": (0, 1, 4)},
        ),
        _t(
            PatternName.W5, 6, [(0, i) for i in range(1, 6)] + _cycle([1, 2, 3, 4, 5]),
            {"hub": (0,), "rim": (1, 2, 3, 4, 5)},
        ),
        _t(
            PatternName.PRISM, 6, _cycle([0, 1, 2]) + _cycle([3, 4, 5]) + [(0, 3), (1, 4), (2, 5)],
            {"t1": (0, 1, 2), "t2": (3, 4, 5)},
        ),
        _t(
            PatternName.SUN3, 6, _cycle([0, 1, 2]) + [(3, 0), (3, 1), (4, 0), (4, 2), (5, 1), (5, 2)],
            {"center": (0, 1, 2), "petals": (3, 4, 5),
             "t1": (0, 1, 2), "t2": (0, 1, 3), "t3": (0, 2, 4), "t4": (1, 2, 5)},
        ),
        _t(
            PatternName.K4_PLUS_V, 5, list(combinations(range(4), 2)) + [(0, 4)],
            {"k4": (0, 1, 2, 3), "attach": (0,), "pendant": (4,)},
        ),
        _t(
            PatternName.K5_MINUS_E, 5, [e for e in combinations(range(5), 2) if e != (3, 4)],
            {"common": (0, 1, 2), "missing": (3, 4)},
        ),
    ]
}


@dataclass(frozen=True)
class PatternOccurrence:
    pattern: PatternName
    embedding: tuple[int, ...]  # template vertex i -> graph vertex embedding[i]

    def role(self, name: str) -> tuple[int, ...]:
        return tuple(self.embedding[i] for i in TEMPLATES[self.pattern].roles[name])


def _find_star(g: Graph, leaves: int) -> tuple[int, ...] | None:
    """Least (centre, leaf, ...) induced star with set arithmetic only."""
    adj = g.adj

    def exists(pool, need: int) -> bool:
        # unordered existence test: ``need`` pairwise non-adjacent vertices in pool
        if need <= 1:
            return len(pool) >= need
        if need == 2:
            # pool is not a clique
            return any(len(pool - adj[a]) > 1 for a in pool)
        for a in pool:
            rest = pool - adj[a]
            if len(rest) >= need and exists(rest - {a}, need - 1):
                return True
        return False

    def least(pool, chosen: list[int]) -> bool:
        need = leaves + 1 - len(chosen)
        if need == 0:
            return True
        for a in sorted(pool):
            rest = pool - adj[a] - {a}
            if len(rest) >= need - 1 and exists(rest, need - 1):
                chosen.append(a)
                return least({x for x in rest if x > a}, chosen) or True
        return False

    # true twins are adjacent, so a set of leaves holds at most one of each
    # class; its smallest member stands for the class
    rep: dict[frozenset, int] = {}
    rep_of = [0] * (g.n + 1)
    for x in g.vertices():
        rep_of[x] = rep.setdefault(adj[x] | {x}, x)
    for v in rep.values():
        if len(adj[v]) < leaves:
            continue
        # twins of v see the same vertices, so only class leaders can be centres
        nv = {rep_of[x] for x in adj[v]}
        nv.discard(v)
        if len(nv) >= leaves and exists(nv, leaves):
            chosen = [v]
            least(nv, chosen)
            return tuple(chosen)
    return None


def find_induced_pattern(g: Graph, p: PatternName) -> PatternOccurrence | None:
    """Lexicographically least induced embedding of the template, or None."""
    t = TEMPLATES[p]
    k = t.size
    if k > g.n:
        return None
    if p in (PatternName.CLAW, PatternName.K14):
        star = _find_star(g, k - 1)
        return PatternOccurrence(p, star) if star else None
    return _backtrack(g, p)


def _backtrack(g: Graph, p: PatternName) -> PatternOccurrence | None:
    t = TEMPLATES[p]
    k = t.size
    if k > g.n:
        return None
    tdeg = [t.degree(i) for i in range(k)]
    earlier_nbrs = [[j for j in range(i) if t.adjacent(i, j)] for i in range(k)]
    earlier_non = [[j for j in range(i) if not t.adjacent(i, j)] for i in range(k)]
    img = [0] * k
    adj = g.adj

    def candidates(i: int) -> list[int]:
        if i == 0:
            return [v for v in g.vertices() if len(adj[v]) >= tdeg[0]]
        nb = earlier_nbrs[i]
        cand = set(adj[img[nb[0]]])
        for j in nb[1:]:
            cand &= adj[img[j]]
        for j in earlier_non[i]:
            cand -= adj[img[j]]
            cand.discard(img[j])
        return sorted(v for v in cand if len(adj[v]) >= tdeg[i])

    def search(i: int) -> bool:
        if i == k:
            return True
        for v in candidates(i):
            img[i] = v
            if search(i + 1):
                return True
        return False

    if search(0):
        return PatternOccurrence(p, tuple(img))
    return None
