"""Exhaustive search for realizations of small graphs.

Vertices receive 3-sets in a fixed order. Ground elements are introduced in
first-use order (a label may use any element already seen plus the next unused
ones), so every realization has exactly one renamed copy in the search space
modulo symmetries among already-seen elements, and at most 3n elements are
ever needed. A partial assignment is cut as soon as some decided pair has the
wrong intersection size.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations

from .graph import Graph
from .hypergraph import Labelling
from .errors import GhrecError

FOUND = "FOUND"
PROVEN_NO = "PROVEN_NO"
BUDGET_EXHAUSTED = "BUDGET_EXHAUSTED"

DEFAULT_BUDGET = 50_000_000


@dataclass(frozen=True)
class SearchStats:
    nodes: int
    max_depth: int
    elapsed: float


@dataclass(frozen=True)
class OracleOutcome:
    status: str
    labelling: Labelling | None
    stats: SearchStats


class _Budget(Exception):
    pass


def search_order(g: Graph) -> list[int]:
    """Most already-placed neighbours first, then higher degree, then smaller id."""
    placed = [0] * (g.n + 1)
    left = set(g.vertices())
    order = []
    while left:
        v = min(left, key=lambda x: (-placed[x], -g.degree(x), x))
        left.remove(v)
        order.append(v)
        for w in g.adj[v]:
            placed[w] += 1
    return order


def _bits(s) -> int:
    out = 0
    for x in s:
        out |= 1 << x
    return out


def _elems(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


class _Search:
    def __init__(self, g: Graph, budget: int):
        self.g = g
        self.order = search_order(g)
        self.budget = budget
        self.nodes = 0
        self.max_depth = 0
        pos = {v: i for i, v in enumerate(self.order)}
        # for each depth: earlier depths that are adjacent / not adjacent
        self.adj_before = []
        self.non_before = []
        self.anchor = []
        for i, v in enumerate(self.order):
            a = [pos[w] for w in g.adj[v] if pos[w] < i]
            self.adj_before.append(a)
            self.non_before.append([j for j in range(i) if j not in set(a)])
            self.anchor.append(min(a) if a else None)
        self.masks = [0] * g.n

    def candidates(self, depth: int, used: int):
        """(label mask, new used count) pairs allowed at this depth."""
        anchor = self.anchor[depth]
        if anchor is None:
            for j in range(4):
                new = list(range(used + 1, used + 1 + j))
                for old in combinations(range(1, used + 1), 3 - j):
                    yield _bits(old + tuple(new)), used + j
            return
        w = self.masks[anchor]
        we = _elems(w)
        for a, b in combinations(we, 2):
            base = (1 << a) | (1 << b)
            for c in range(1, used + 1):
                if not (w >> c) & 1:
                    yield base | (1 << c), used
            yield base | (1 << (used + 1)), used + 1

    def fits(self, depth: int, mask: int) -> bool:
        ms = self.masks
        for j in self.adj_before[depth]:
            if (ms[j] & mask).bit_count() != 2:
                return False
        for j in self.non_before[depth]:
            if (ms[j] & mask).bit_count() > 1:
                return False
        return True

    def run(self, depth: int, used: int, sink) -> bool:
        """Depth-first search; ``sink`` returns True to stop."""
        if depth == self.g.n:
            return sink(self.labelling())
        if depth > self.max_depth:
            self.max_depth = depth
        for mask, nused in self.candidates(depth, used):
            if not self.fits(depth, mask):
                continue
            self.nodes += 1
            if self.nodes > self.budget:
                raise _Budget
            self.masks[depth] = mask
            if self.run(depth + 1, nused, sink):
                return True
        self.masks[depth] = 0
        return False

    def labelling(self) -> Labelling:
        return Labelling.of({v: _elems(self.masks[i]) for i, v in enumerate(self.order)}, 3)


def oracle_search(g: Graph, budget: int = DEFAULT_BUDGET) -> OracleOutcome:
    t0 = time.perf_counter()
    s = _Search(g, budget)
    found: list[Labelling] = []

    def sink(lab):
        found.append(lab)
        return True

    try:
        s.run(0, 0, sink)
        status = FOUND if found else PROVEN_NO
    except _Budget:
        status = BUDGET_EXHAUSTED
    stats = SearchStats(s.nodes, s.max_depth, time.perf_counter() - t0)
    return OracleOutcome(status, found[0] if found else None, stats)


def renaming_class(lab: Labelling) -> tuple:
    """Invariant of a labelling under renaming of ground elements: the multiset of
    vertex sets containing each element."""
    holders: dict[int, list[int]] = {}
    for v, s in lab.labels.items():
        for x in s:
            holders.setdefault(x, []).append(v)
    return tuple(sorted(tuple(sorted(vs)) for vs in holders.values()))


def oracle_enumerate(g: Graph, budget: int = DEFAULT_BUDGET) -> list[Labelling]:
    """One representative per renaming class of realizations."""
    s = _Search(g, budget)
    out: dict[tuple, Labelling] = {}

    def sink(lab):
        out.setdefault(renaming_class(lab), lab)
        return False

    try:
        s.run(0, 0, sink)
    except _Budget:
        raise GhrecError("BUDGET_EXHAUSTED", f"enumeration stopped after {budget} nodes") from None
    return list(out.values())


def canonical_form(g: Graph, lab: Labelling) -> Labelling:
    """Rename elements in order of first use along the search order."""
    ren: dict[int, int] = {}
    for v in search_order(g):
        for x in sorted(lab[v]):
            if x not in ren:
                ren[x] = len(ren) + 1
    return lab.renamed(ren)


def is_reachable(g: Graph, lab: Labelling) -> bool:
    """Replay the canonical form of ``lab`` through the search's branching rule."""
    canon = canonical_form(g, lab)
    s = _Search(g, 1)
    used = 0
    for depth, v in enumerate(s.order):
        target = _bits(canon[v])
        nxt = None
        for mask, nused in s.candidates(depth, used):
            if mask == target:
                nxt = nused
                break
        if nxt is None or not s.fits(depth, target):
            return False
        s.masks[depth] = target
        used = nxt
    return True
