"""Seeded instance generators. Every generator takes an explicit seed and
draws all randomness from one ``random.Random``."""
from __future__ import annotations

import random
from collections import defaultdict
from itertools import combinations

from .chordal import _mcs_order, _peo_violation
from .errors import GhrecError
from .graph import Graph, connected_components
from .hypergraph import Labelling, image
from .patterns import PatternName, find_induced_pattern

DEFAULT_TRIES = 10_000


def _timeout(what: str, tries: int) -> GhrecError:
    return GhrecError("GENERATION_TIMEOUT", f"{what}: no acceptable sample in {tries} tries")


def is_chordal(g: Graph) -> bool:
    for comp in connected_components(g):
        sub = g if len(comp) == g.n else g.induced(comp)[0]
        if _peo_violation(sub, _mcs_order(sub)) is not None:
            return False
    return True


def is_chordal_clawfree(g: Graph) -> bool:
    return is_chordal(g) and find_induced_pattern(g, PatternName.CLAW) is None


class _Grower:
    """Grows a labelling whose image stays chordal and claw-free.

    Each new label must make its vertex simplicial (neighbours form a clique),
    which keeps a perfect elimination ordering, and must not be the third leaf
    of a claw centred at one of its neighbours.
    """

    def __init__(self, rng: random.Random):
        self.rng = rng
        self.labels: list[tuple[int, ...]] = [()]
        self.index: set[tuple[int, ...]] = set()
        self.holders: dict[tuple[int, int], list[int]] = defaultdict(list)
        self.adj: list[set[int]] = [set()]
        self.next_elem = 1

    def fresh(self) -> int:
        self.next_elem += 1
        return self.next_elem - 1

    def seed(self) -> None:
        self._add(tuple(self.fresh() for _ in range(3)), set())

    def _add(self, lab: tuple[int, ...], nbrs: set[int]) -> None:
        v = len(self.labels)
        self.labels.append(lab)
        self.index.add(lab)
        for p in combinations(lab, 2):
            self.holders[p].append(v)
        self.adj.append(set(nbrs))
        for w in nbrs:
            self.adj[w].add(v)

    def neighbours(self, lab: tuple[int, ...]) -> set[int] | None:
        s = set(lab)
        out = set()
        for p in combinations(lab, 2):
            for w in self.holders.get(p, ()):
                if len(s.intersection(self.labels[w])) != 2:
                    return None
                out.add(w)
        return out

    def acceptable(self, nbrs: set[int]) -> bool:
        if not nbrs:
            return False
        nl = sorted(nbrs)
        for a, b in combinations(nl, 2):
            if b not in self.adj[a]:
                return False
        for y in nl:
            outside = [z for z in self.adj[y] if z not in nbrs]
            for a, b in combinations(outside, 2):
                if b not in self.adj[a]:
                    return False
        return True

    def propose(self, neg_bias: float, reuse_bias: float) -> tuple[int, ...]:
        rng = self.rng
        y = rng.randrange(1, len(self.labels))
        ly = self.labels[y]
        if self.adj[y] and rng.random() < neg_bias:
            z = rng.choice(sorted(self.adj[y]))
            pool = sorted(set(ly) | set(self.labels[z]))
            lab = tuple(rng.sample(pool, 3))
        else:
            p = rng.sample(ly, 2)
            if rng.random() < reuse_bias:
                third = rng.randrange(1, self.next_elem)
            else:
                third = self.fresh()
            lab = (p[0], p[1], third)
        return tuple(sorted(lab))

    def step(self, neg_bias: float, reuse_bias: float, tries: int) -> None:
        for _ in range(tries):
            lab = self.propose(neg_bias, reuse_bias)
            if len(set(lab)) < 3 or lab in self.index:
                continue
            nbrs = self.neighbours(lab)
            if nbrs is not None and self.acceptable(nbrs):
                self._add(lab, nbrs)
                return
        raise _timeout("chordal-clawfree step", tries)

    def labelling(self) -> Labelling:
        return Labelling.of({v: lab for v, lab in enumerate(self.labels) if v}, 3)


def chordal_clawfree_yes(n: int, seed: int, neg_bias: float = 0.3, reuse_bias: float = 0.15,
                         tries: int = DEFAULT_TRIES, screen: bool = True) -> tuple[Graph, Labelling]:
    """A connected chordal claw-free graph together with a realization of it."""
    if n < 1:
        raise GhrecError("BAD_SIZE", "n must be positive")
    gr = _Grower(random.Random(seed))
    gr.seed()
    for _ in range(n - 1):
        gr.step(neg_bias, reuse_bias, tries)
    lab = gr.labelling()
    g = image(lab, 2)
    if screen and not is_chordal_clawfree(g):
        raise GhrecError("GENERATION_TIMEOUT", "screen rejected a grown instance")
    return g, lab


def perturbed(g: Graph, seed: int, flips: int = 1, tries: int = DEFAULT_TRIES) -> Graph:
    """Flip random vertex pairs until the result is again connected, chordal and claw-free."""
    rng = random.Random(seed)
    pairs = [(u, v) for u in range(1, g.n + 1) for v in range(u + 1, g.n + 1)]
    for _ in range(tries):
        edges = set(g.edges)
        for e in rng.sample(pairs, min(flips, len(pairs))):
            edges ^= {e}
        h = Graph.from_edges(g.n, sorted(edges))
        if len(connected_components(h)) == 1 and is_chordal_clawfree(h):
            return h
    raise _timeout("perturbation", tries)


def random_labelling(n: int, seed: int, ground: int | None = None) -> Labelling:
    """n distinct uniformly random 3-subsets of a ground set of size ``ground``."""
    rng = random.Random(seed)
    ground = ground or max(4, n)
    pool: set[tuple[int, ...]] = set()
    cap = ground * (ground - 1) * (ground - 2) // 6
    if n > cap:
        raise GhrecError("BAD_SIZE", f"only {cap} distinct 3-sets over {ground} elements")
    while len(pool) < n:
        pool.add(tuple(sorted(rng.sample(range(1, ground + 1), 3))))
    items = sorted(pool)
    rng.shuffle(items)
    return Labelling.of(items, 3)


def random_tree(n: int, seed: int, max_degree: int | None = None) -> Graph:
    """Random recursive tree; ``max_degree`` caps every degree."""
    rng = random.Random(seed)
    deg = [0] * (n + 1)
    edges = []
    for v in range(2, n + 1):
        cand = [u for u in range(1, v) if max_degree is None or deg[u] < max_degree]
        u = rng.choice(cand)
        deg[u] += 1
        deg[v] += 1
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def random_cubic(n: int, seed: int, tries: int = DEFAULT_TRIES, connected: bool = True) -> Graph:
    """Random simple 3-regular graph by the pairing model with rejection."""
    if n < 4 or n % 2:
        raise GhrecError("BAD_SIZE", "cubic graphs need an even n >= 4")
    rng = random.Random(seed)
    for _ in range(tries):
        points = [v for v in range(1, n + 1) for _ in range(3)]
        rng.shuffle(points)
        edges = set()
        ok = True
        for a, b in zip(points[::2], points[1::2]):
            e = (min(a, b), max(a, b))
            if a == b or e in edges:
                ok = False
                break
            edges.add(e)
        if ok:
            g = Graph.from_edges(n, sorted(edges))
            if not connected or len(connected_components(g)) == 1:
                return g
    raise _timeout("cubic", tries)


def random_cnf3(nvars: int, nclauses: int, seed: int):
    """Random 3-CNF with three distinct variables per clause."""
    from .reductions.sat import Formula3CNF, Literal

    if nvars < 3:
        raise GhrecError("BAD_SIZE", "need at least 3 variables")
    rng = random.Random(seed)
    clauses = []
    for _ in range(nclauses):
        vs = rng.sample(range(1, nvars + 1), 3)
        clauses.append(tuple(Literal(v, rng.random() < 0.5) for v in vs))
    return Formula3CNF(nvars, tuple(clauses))
