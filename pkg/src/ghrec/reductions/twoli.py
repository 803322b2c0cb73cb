"""Pair labellings with weak (disjoint) and strong (one common element) edges.

File format::

    p 2li <n> <weak count> <strong count>
    w <u> <v>
    s <u> <v>

Gadget numbering used by :func:`build_2li` for ``n`` variables and ``m`` clauses:

* variable ``x`` (1-based): vertices ``3(x-1)+1, +2, +3`` (apex first, then the
  positive and the negative literal vertex);
* clause ``c``: vertices ``3n + 5(c-1) + 1 .. +5``, the first three attached to
  the clause's literals in order;
* truth gadget: ``3n + 5m + 1`` (apex, holding both truth values), ``+2`` (true
  side), ``+3`` (false side).
"""
from __future__ import annotations

import sys
import time
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from ..errors import InputError
from ..graph import Graph
from .sat import Formula3CNF

FOUND = "FOUND"
PROVEN_NO = "PROVEN_NO"
BUDGET_EXHAUSTED = "BUDGET_EXHAUSTED"

DEFAULT_BUDGET = 50_000_000


@dataclass(frozen=True)
class TLIInstance:
    graph: Graph
    weak_edges: frozenset[tuple[int, int]]
    strong_edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.weak_edges & self.strong_edges:
            raise InputError("MALFORMED_LINE", "an edge cannot be both weak and strong")
        if self.weak_edges | self.strong_edges != self.graph.edges:
            raise InputError("MALFORMED_LINE", "weak and strong edges must partition the graph's edges")

    @classmethod
    def of(cls, n: int, weak: Iterable[tuple[int, int]], strong: Iterable[tuple[int, int]]) -> "TLIInstance":
        w = [tuple(sorted(e)) for e in weak]
        s = [tuple(sorted(e)) for e in strong]
        return cls(Graph.from_edges(n, w + s), frozenset(w), frozenset(s))

    @property
    def n(self) -> int:
        return self.graph.n

    def is_strong(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self.strong_edges


@dataclass(frozen=True)
class TwoLabelling:
    pairs: dict[int, tuple[int, int]]

    def __getitem__(self, v: int) -> tuple[int, int]:
        return self.pairs[v]

    def violations(self, inst: TLIInstance) -> list[tuple[str, tuple[int, ...]]]:
        bad: list[tuple[str, tuple[int, ...]]] = []
        seen: dict[frozenset, int] = {}
        for v in sorted(self.pairs):
            p = frozenset(self.pairs[v])
            if len(p) != 2:
                bad.append(("NOT_A_PAIR", (v,)))
            if p in seen:
                bad.append(("DUPLICATE_PAIR", (seen[p], v)))
            seen.setdefault(p, v)
        for u, v in sorted(inst.weak_edges):
            if set(self.pairs[u]) & set(self.pairs[v]):
                bad.append(("WEAK_EDGE_MEETS", (u, v)))
        for u, v in sorted(inst.strong_edges):
            if len(set(self.pairs[u]) & set(self.pairs[v])) != 1:
                bad.append(("STRONG_EDGE_MISSES", (u, v)))
        return bad


@dataclass(frozen=True)
class TwoLIOutcome:
    status: str
    labelling: TwoLabelling | None
    nodes: int
    elapsed: float


def parse_2li(text: str | Iterable[str]) -> TLIInstance:
    lines = text.splitlines() if isinstance(text, str) else list(text)
    header = None
    weak: list[tuple[int, int]] = []
    strong: list[tuple[int, int]] = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            if parts[0] == "p" and header is None and len(parts) == 5 and parts[1] == "2li":
                header = tuple(int(x) for x in parts[2:])
            elif parts[0] in ("w", "s") and header is not None and len(parts) == 3:
                (weak if parts[0] == "w" else strong).append((int(parts[1]), int(parts[2])))
            else:
                raise ValueError
        except ValueError:
            raise InputError("MALFORMED_LINE", f"line {lineno}: {line!r}") from None
    if header is None:
        raise InputError("MALFORMED_LINE", "missing 'p 2li <n> <mw> <ms>' header")
    n, mw, ms = header
    if len(weak) != mw or len(strong) != ms:
        raise InputError("COUNT_MISMATCH", f"header declares {mw}/{ms} edges, found {len(weak)}/{len(strong)}")
    return TLIInstance.of(n, weak, strong)


def serialize_2li(inst: TLIInstance) -> str:
    lines = [f"p 2li {inst.n} {len(inst.weak_edges)} {len(inst.strong_edges)}"]
    lines += [f"w {u} {v}" for u, v in sorted(inst.weak_edges)]
    lines += [f"s {u} {v}" for u, v in sorted(inst.strong_edges)]
    return "\n".join(lines)


def serialize_two_labelling(lab: TwoLabelling) -> str:
    return "\n".join(f"l {v} {lab[v][0]} {lab[v][1]}" for v in sorted(lab.pairs))


@dataclass(frozen=True)
class GadgetMap:
    """Vertex ids of the gadgets in a :func:`build_2li` instance."""
    nvars: int
    nclauses: int

    def var(self, x: int) -> tuple[int, int, int]:
        b = 3 * (x - 1)
        return b + 1, b + 2, b + 3

    def clause(self, c: int) -> tuple[int, int, int, int, int]:
        b = 3 * self.nvars + 5 * (c - 1)
        return b + 1, b + 2, b + 3, b + 4, b + 5

    def truth(self) -> tuple[int, int, int]:
        b = 3 * self.nvars + 5 * self.nclauses
        return b + 1, b + 2, b + 3

    @property
    def size(self) -> int:
        return 3 * self.nvars + 5 * self.nclauses + 3


def build_2li(f: Formula3CNF) -> TLIInstance:
    gm = GadgetMap(f.nvars, len(f.clauses))
    weak: set[tuple[int, int]] = set()
    strong: set[tuple[int, int]] = set()

    def add(kind: set, u: int, v: int) -> None:
        kind.add((min(u, v), max(u, v)))

    t1, t2, t3 = gm.truth()
    for apex, pos, neg in [gm.var(x) for x in range(1, f.nvars + 1)] + [gm.truth()]:
        add(weak, pos, neg)
        add(strong, apex, pos)
        add(strong, apex, neg)
    for c in range(1, len(f.clauses) + 1):
        c1, c2, c3, c4, c5 = gm.clause(c)
        for u, v in ((c1, c4), (c2, c4), (c3, c5), (c4, c5)):
            add(strong, u, v)
    # (1) variable apexes pairwise weak
    for x, y in combinations(range(1, f.nvars + 1), 2):
        add(weak, gm.var(x)[0], gm.var(y)[0])
    # (2) literal attachments
    for c, clause in enumerate(f.clauses, 1):
        cv = gm.clause(c)
        for i, lit in enumerate(clause):
            apex, pos, neg = gm.var(lit.var)
            add(weak, apex, cv[i])
            add(strong, neg if lit.negated else pos, cv[i])
    # (3) truth-value attachments
    for x in range(1, f.nvars + 1):
        _, pos, neg = gm.var(x)
        add(strong, pos, t1)
        add(strong, neg, t1)
    for c in range(1, len(f.clauses) + 1):
        _, _, _, c4, c5 = gm.clause(c)
        add(strong, c4, t1)
        add(strong, c5, t1)
        add(strong, c5, t2)
    return TLIInstance.of(gm.size, sorted(weak), sorted(strong))


class _PairSearch:
    """Depth-first search that always extends the most constrained vertex.

    A vertex with a placed strong neighbour must reuse exactly one of that
    neighbour's two elements, so its candidate list is short and is computed
    in full; an undecided vertex left without candidates cuts the branch.
    Vertices with no placed strong neighbour are taken last, most placed
    neighbours first.

    Reusing an existing element x is only tried when a placed strong
    neighbour holds x or some unplaced strong neighbour could still hold x;
    otherwise any completion stays valid with x replaced by a fresh element,
    so the fresh candidate covers that branch.

    Failures carry the set of placed vertices that caused them, and the
    search backs up directly to the most recent of those (conflict-directed
    backjumping).
    """

    def __init__(self, inst: TLIInstance, budget: int):
        self.inst = inst
        self.budget = budget
        self.nodes = 0
        g = inst.graph
        self.strong = [sorted(w for w in g.adj[v] if inst.is_strong(v, w)) for v in range(g.n + 1)]
        self.weak = [sorted(w for w in g.adj[v] if not inst.is_strong(v, w)) for v in range(g.n + 1)]
        self.pairs: list[tuple[int, int] | None] = [None] * (g.n + 1)
        self.owner: dict[tuple[int, int], int] = {}
        self.placed_nbrs = [0] * (g.n + 1)
        self.left = set(g.vertices())

    def culprit(self, v: int, p: tuple[int, int]) -> int | None:
        """A placed vertex ruling out pair ``p`` for ``v``, or None if it fits."""
        w = self.owner.get(p)
        if w is not None:
            return w
        a, b = p
        pairs = self.pairs
        for w in self.weak[v]:
            q = pairs[w]
            if q is not None and (a in q or b in q):
                return w
        for w in self.strong[v]:
            q = pairs[w]
            if q is not None and (a in q) + (b in q) != 1:
                return w
        return None

    def reusable(self, v: int, x: int, why: set[int] | None) -> bool:
        pairs = self.pairs
        blockers = []
        for u in self.strong[v]:
            q = pairs[u]
            if q is not None:
                if x in q:
                    return True
                continue
            w = next((w for w in self.weak[u] if pairs[w] is not None and x in pairs[w]), None)
            if w is None:
                return True
            blockers.append(w)
        if why is not None:
            why.update(blockers)
        return False

    def options(self, v: int, used: int, why: set[int] | None):
        """Candidate pairs of ``v`` with their new used counts; None if ``v`` is unanchored
        and ``why`` is None. Culprits of discarded candidates are added to ``why``."""
        pairs = self.pairs
        anchor = next((w for w in self.strong[v] if pairs[w] is not None), None)
        if anchor is None and why is None:
            return None
        out = []

        def consider(p, nused):
            w = self.culprit(v, p)
            if w is None:
                out.append((p, nused))
            elif why is not None:
                why.add(w)

        if anchor is not None:
            q = pairs[anchor]
            if why is not None:
                why.add(anchor)
            keep = [x for x in range(1, used + 1) if x not in q and self.reusable(v, x, why)]
            for e in q:
                consider((e, used + 1), used + 1)
            for e in q:
                for x in keep:
                    consider((e, x) if e < x else (x, e), used)
            return out
        keep = [x for x in range(1, used + 1) if self.reusable(v, x, why)]
        out.append(((used + 1, used + 2), used + 2))
        for a in keep:
            consider((a, used + 1), used + 1)
        for a, b in combinations(keep, 2):
            consider((a, b), used)
        return out

    def choose(self, used: int) -> int:
        best = None
        best_key = None
        for v in self.left:
            c = self.options(v, used, None)
            if c is None:
                continue
            if not c:
                return v
            key = (len(c), -self.placed_nbrs[v], v)
            if best_key is None or key < best_key:
                best, best_key = v, key
        if best is not None:
            return best
        g = self.inst.graph
        return min(self.left, key=lambda x: (-self.placed_nbrs[x], -g.degree(x), x))

    def place(self, v: int, p: tuple[int, int] | None) -> None:
        delta = 1 if p is not None else -1
        if p is None:
            del self.owner[self.pairs[v]]
            self.left.add(v)
        else:
            self.owner[p] = v
            self.left.discard(v)
        self.pairs[v] = p
        for w in self.inst.graph.adj[v]:
            self.placed_nbrs[w] += delta

    def run(self, used: int = 0) -> set[int] | None:
        """None on success, else the placed vertices jointly responsible for the failure."""
        if not self.left:
            return None
        v = self.choose(used)
        conflict: set[int] = set()
        for p, nused in self.options(v, used, conflict):
            self.nodes += 1
            if self.nodes > self.budget:
                raise _Budget
            self.place(v, p)
            sub = self.run(nused)
            if sub is None:
                return None
            self.place(v, None)
            if v not in sub:
                return sub
            sub.discard(v)
            conflict |= sub
        return conflict

    def solve(self) -> bool:
        return self.run() is None

    def labelling(self) -> TwoLabelling:
        return TwoLabelling({v: self.pairs[v] for v in self.inst.graph.vertices()})


class _SideSearch:
    """Search over which of its two elements each vertex shares along each strong edge.

    Vertex v owns two slots, ``2v`` and ``2v + 1``. Deciding a strong edge
    glues one slot of each endpoint; elements are the resulting classes
    (kept in a union-find with undo). Every valid labelling refines to such a
    gluing, since splitting elements never creates a weak-edge meeting or a
    repeated pair, so the search is complete. Each merge is rejected at once
    if it puts both slots of a vertex into one class, makes weak neighbours
    meet, or gives two vertices the same pair. The next edge is the one with
    the fewest surviving options.
    """

    def __init__(self, inst: TLIInstance, budget: int):
        self.inst = inst
        self.budget = budget
        self.nodes = 0
        g = inst.graph
        n = g.n
        self.weak = [[w for w in g.adj[v] if not inst.is_strong(v, w)] for v in range(n + 1)]
        self.edges = sorted(inst.strong_edges)
        self.parent = list(range(2 * n + 2))
        self.holders: list[list[int]] = [[v // 2] if v >= 2 else [] for v in range(2 * n + 2)]
        self.key: dict[tuple[int, int], int] = {(2 * v, 2 * v + 1): v for v in range(1, n + 1)}
        self.decided = [0] * (n + 1)
        self.undo: list[tuple[int, int, list] | None] = []

    def find(self, c: int) -> int:
        parent = self.parent
        while parent[c] != c:
            c = parent[c]
        return c

    def _pair(self, v: int) -> tuple[int, int]:
        a, b = self.find(2 * v), self.find(2 * v + 1)
        return (a, b) if a < b else (b, a)

    def merge(self, x: int, y: int) -> bool:
        a, b = self.find(x), self.find(y)
        if a == b:
            self.undo.append(None)
            return True
        if len(self.holders[a]) > len(self.holders[b]):
            a, b = b, a
        find = self.find
        moved = []
        for h in self.holders[a]:
            r0, r1 = find(2 * h), find(2 * h + 1)
            other = r1 if r0 == a else r0
            if other == b:
                return False
            for w in self.weak[h]:
                if find(2 * w) == b or find(2 * w + 1) == b:
                    return False
            new = (b, other) if b < other else (other, b)
            if new in self.key:
                return False
            moved.append(((a, other) if a < other else (other, a), new, h))
        for old, new, h in moved:
            del self.key[old]
            self.key[new] = h
        self.parent[a] = b
        self.holders[b].extend(self.holders[a])
        self.undo.append((a, b, moved))
        return True

    def unmerge(self) -> None:
        rec = self.undo.pop()
        if rec is None:
            return
        a, b, moved = rec
        self.parent[a] = a
        del self.holders[b][len(self.holders[b]) - len(self.holders[a]):]
        for old, new, h in moved:
            del self.key[new]
            self.key[old] = h

    def sides(self, e: int):
        u, v = self.edges[e]
        for su in ((0,) if self.decided[u] == 0 else (0, 1)):
            for sv in ((0,) if self.decided[v] == 0 else (0, 1)):
                yield 2 * u + su, 2 * v + sv

    def options(self, e: int) -> list[tuple[int, int]]:
        out = []
        for x, y in self.sides(e):
            if self.merge(x, y):
                self.unmerge()
                out.append((x, y))
        return out

    def run(self, todo: set[int]) -> bool:
        if not todo:
            return True
        best = None
        best_key = None
        for e in todo:
            opts = self.options(e)
            if not opts:
                return False
            u, v = self.edges[e]
            k = (len(opts), -(self.decided[u] + self.decided[v]), e)
            if best_key is None or k < best_key:
                best, best_key = (e, opts), k
        e, opts = best
        u, v = self.edges[e]
        todo.discard(e)
        self.decided[u] += 1
        self.decided[v] += 1
        for x, y in opts:
            self.nodes += 1
            if self.nodes > self.budget:
                raise _Budget
            self.merge(x, y)
            if self.run(todo):
                return True
            self.unmerge()
        self.decided[u] -= 1
        self.decided[v] -= 1
        todo.add(e)
        return False

    def solve(self) -> bool:
        return self.run(set(range(len(self.edges))))

    def labelling(self) -> TwoLabelling:
        """Classes renamed to 1, 2, ... in first-use order over the vertices."""
        name: dict[int, int] = {}
        pairs = {}
        for v in self.inst.graph.vertices():
            p = []
            for c in (2 * v, 2 * v + 1):
                r = self.find(c)
                p.append(name.setdefault(r, len(name) + 1))
            pairs[v] = (min(p), max(p))
        return TwoLabelling(pairs)


class _Budget(Exception):
    pass


def solve_2li(inst: TLIInstance, budget: int = DEFAULT_BUDGET, method: str = "sides") -> TwoLIOutcome:
    """Complete search for a 2-labelling.

    ``method="sides"`` (default) branches on slot gluings along strong edges;
    ``method="pairs"`` assigns pairs vertex by vertex with elements introduced
    in first-use order. Both use at most 2n elements.
    """
    t0 = time.perf_counter()
    if method not in ("sides", "pairs"):
        raise ValueError(f"unknown method {method!r}")
    s = _SideSearch(inst, budget) if method == "sides" else _PairSearch(inst, budget)
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * inst.n + 4 * len(inst.strong_edges) + 100))
    try:
        ok = s.solve()
        status = FOUND if ok else PROVEN_NO
    except _Budget:
        status = BUDGET_EXHAUSTED
    finally:
        sys.setrecursionlimit(limit)
    lab = s.labelling() if status == FOUND else None
    return TwoLIOutcome(status, lab, s.nodes, time.perf_counter() - t0)
