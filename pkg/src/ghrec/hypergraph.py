"""Uniform hypergraphs given as vertex labellings, and their intersection graphs.

A labelling assigns each graph vertex a k-set of ground elements (the hyperedge
it stands for). File format::

    # comment
    l <vertex> <e1> <e2> ... <ek>
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping

from .errors import GhrecError, InputError
from .graph import Graph


@dataclass(frozen=True, eq=False)
class Labelling:
    k: int
    labels: Mapping[int, tuple[int, ...]]

    def __post_init__(self):
        if self.k < 1:
            raise InputError("BAD_ARITY", f"uniformity {self.k}")
        seen: dict[tuple[int, ...], int] = {}
        for v, lab in self.labels.items():
            if len(lab) != self.k:
                raise InputError("BAD_ARITY", f"vertex {v} has {len(lab)} elements, expected {self.k}", witness=v)
            if len(set(lab)) != len(lab):
                raise InputError("DUPLICATE_ELEMENT_IN_LABEL", f"vertex {v}: {lab}", witness=v)
            if any(x < 0 for x in lab):
                raise InputError("MALFORMED_LINE", f"vertex {v}: negative element", witness=v)
            key = tuple(sorted(lab))
            if key in seen:
                raise InputError("DUPLICATE_LABEL", f"vertices {seen[key]} and {v} share {key}",
                                 witness=(seen[key], v))
            seen[key] = v

    @classmethod
    def of(cls, labels: Mapping[int, Iterable[int]] | Iterable[Iterable[int]], k: int | None = None) -> "Labelling":
        """Build from a vertex->set mapping, or a sequence assigned to vertices 1, 2, ..."""
        if not isinstance(labels, Mapping):
            labels = dict(enumerate(labels, 1))
        norm = {v: tuple(sorted(s)) for v, s in sorted(labels.items())}
        if k is None:
            k = len(next(iter(norm.values()))) if norm else 3
        return cls(k, norm)

    def __eq__(self, other):
        return isinstance(other, Labelling) and self.k == other.k and dict(self.labels) == dict(other.labels)

    def __getitem__(self, v: int) -> tuple[int, ...]:
        return self.labels[v]

    def __len__(self) -> int:
        return len(self.labels)

    def vertices(self) -> list[int]:
        return sorted(self.labels)

    def ground(self) -> set[int]:
        return {x for lab in self.labels.values() for x in lab}

    def renamed(self, mapping: Mapping[int, int]) -> "Labelling":
        return Labelling.of({v: [mapping.get(x, x) for x in lab] for v, lab in self.labels.items()}, self.k)


def parse_labelling(text: str | Iterable[str]) -> Labelling:
    lines = text.splitlines() if isinstance(text, str) else list(text)
    labels: dict[int, tuple[int, ...]] = {}
    k = None
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            if parts[0] != "l" or len(parts) < 3:
                raise ValueError
            v = int(parts[1])
            elems = [int(x) for x in parts[2:]]
        except ValueError:
            raise InputError("MALFORMED_LINE", f"line {lineno}: {line!r}") from None
        if v in labels:
            raise InputError("MALFORMED_LINE", f"line {lineno}: vertex {v} labelled twice")
        if k is None:
            k = len(elems)
        elif len(elems) != k:
            raise InputError("BAD_ARITY", f"line {lineno}: {len(elems)} elements, expected {k}", witness=v)
        if len(set(elems)) != len(elems):
            raise InputError("DUPLICATE_ELEMENT_IN_LABEL", f"line {lineno}: {line!r}", witness=v)
        labels[v] = tuple(sorted(elems))
    return Labelling.of(labels, k)


def serialize_labelling(lab: Labelling) -> str:
    return "\n".join(f"l {v} " + " ".join(map(str, lab[v])) for v in lab.vertices())


def _vertex_range_check(lab: Labelling) -> int:
    n = len(lab)
    if lab.vertices() != list(range(1, n + 1)):
        raise GhrecError("VERTEX_MISMATCH", "labelled vertices must be exactly 1..n")
    return n


def intersecting_pairs(lab: Labelling, l: int) -> dict[tuple[int, int], int]:
    """Vertex pairs whose labels meet in at least ``l`` elements, with the meet size."""
    buckets: dict[tuple[int, ...], list[int]] = defaultdict(list)
    for v, s in lab.labels.items():
        for sub in combinations(s, l):
            buckets[sub].append(v)
    out: dict[tuple[int, int], int] = {}
    for vs in buckets.values():
        for i, u in enumerate(vs):
            su = set(lab[u])
            for w in vs[i + 1:]:
                e = (u, w) if u < w else (w, u)
                if e not in out:
                    out[e] = len(su.intersection(lab[w]))
    return out


def image(lab: Labelling, l: int) -> Graph:
    """The l-intersection graph: vertices adjacent iff their labels share exactly l elements."""
    if not 1 <= l < lab.k:
        raise GhrecError("BAD_L", f"l={l} not in [1, {lab.k - 1}]")
    n = _vertex_range_check(lab)
    return Graph.from_edges(n, [e for e, size in intersecting_pairs(lab, l).items() if size == l])


@dataclass(frozen=True)
class Violation:
    kind: str  # MISSING_EDGE | EXTRA_EDGE | DUPLICATE_LABEL | BAD_ARITY
    vertices: tuple[int, ...]
    intersection: int


@dataclass(frozen=True)
class VerificationReport:
    violations: tuple[Violation, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_labelling(g: Graph, lab: Labelling) -> VerificationReport:
    """Check that ``lab`` is a realization of ``g`` (adjacent iff labels share exactly 2)."""
    if set(lab.labels) != set(g.vertices()):
        raise GhrecError("VERTEX_MISMATCH", f"labelling covers {len(lab)} vertices, graph has {g.n}")
    if lab.k != 3:
        return VerificationReport(tuple(Violation("BAD_ARITY", (v,), lab.k) for v in lab.vertices()))
    if _quick_verified(g, lab):
        return VerificationReport()
    meets = intersecting_pairs(lab, 2)
    bad: list[Violation] = []
    for e, size in sorted(meets.items()):
        if size == 3:
            bad.append(Violation("DUPLICATE_LABEL", e, 3))
        elif e not in g.edges:
            bad.append(Violation("EXTRA_EDGE", e, size))
    for u, v in g.sorted_edges():
        if meets.get((u, v)) != 2:
            bad.append(Violation("MISSING_EDGE", (u, v), len(set(lab[u]) & set(lab[v]))))
    return VerificationReport(tuple(bad))


def _quick_verified(g: Graph, lab: Labelling) -> bool:
    """Counting shortcut: with distinct labels any two share at most one pair, so
    the pairs sharing two elements number sum C(holders, 2) and must all be edges."""
    labels = lab.labels
    if len(set(labels.values())) != len(labels):
        return False
    holders: Counter = Counter()
    for s in labels.values():
        holders.update(combinations(s, 2))
    if sum(c * (c - 1) // 2 for c in holders.values()) != g.m:
        return False
    sets = {v: set(s) for v, s in labels.items()}
    return all(len(sets[u].intersection(labels[v])) == 2 for u, v in g.edges)


def multiplicity(lab: Labelling) -> int:
    """Largest number of labels containing a common pair of elements."""
    counts = Counter(p for s in lab.labels.values() for p in combinations(s, 2))
    return max(counts.values(), default=0)


def is_linear(lab: Labelling) -> bool:
    return multiplicity(lab) <= 1


def lift(lab: Labelling) -> Labelling:
    """Add a distinct fresh element to every label (k-uniform -> (k+1)-uniform)."""
    nxt = max(lab.ground(), default=-1) + 1
    out = {}
    for i, v in enumerate(lab.vertices()):
        out[v] = lab[v] + (nxt + i,)
    return Labelling.of(out, lab.k + 1)
