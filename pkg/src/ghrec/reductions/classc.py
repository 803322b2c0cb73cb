"""Graphs made of large cliques joined by small links, one clique per 2LI vertex.

A strong edge ``ij`` becomes two vertices ``i1, i2`` of clique ``C_i`` matched
to two vertices ``j1, j2`` of ``C_j`` (edges ``i1j1`` and ``i2j2``), so that
``i1 i2 j2 j1`` is an induced 4-cycle. A weak edge joins two such vertices on
each side by all four cross edges, forming a K4. Links never share vertices,
so ``C_i`` has ``max(5, 2 deg(i))`` vertices.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import GhrecError
from ..graph import Graph
from ..hypergraph import Labelling, verify_labelling
from .twoli import TLIInstance, TwoLabelling

STRONG = "strong"
WEAK = "weak"


@dataclass(frozen=True)
class Link:
    kind: str
    a: int  # 2LI vertex owning ``a_side``
    b: int
    a_side: tuple[int, int]
    b_side: tuple[int, int]


@dataclass(frozen=True)
class ClassCGraph:
    graph: Graph
    components: tuple[tuple[int, ...], ...]  # index 0 unused; components[i] belongs to 2LI vertex i
    links: tuple[Link, ...]


def component_size(degree: int) -> int:
    return max(5, 2 * degree)


def li_to_clawfree(inst: TLIInstance) -> ClassCGraph:
    g = inst.graph
    comps: list[tuple[int, ...]] = [()]
    nxt = 1
    for i in g.vertices():
        size = component_size(g.degree(i))
        comps.append(tuple(range(nxt, nxt + size)))
        nxt += size
    slot = [0] * (g.n + 1)

    def take(i: int) -> tuple[int, int]:
        k = slot[i]
        slot[i] += 2
        return comps[i][k], comps[i][k + 1]

    edges: list[tuple[int, int]] = []
    for c in comps[1:]:
        edges += [(u, v) for k, u in enumerate(c) for v in c[k + 1:]]
    links = []
    for u, v in g.sorted_edges():
        kind = STRONG if inst.is_strong(u, v) else WEAK
        (i1, i2), (j1, j2) = take(u), take(v)
        if kind == STRONG:
            edges += [(i1, j1), (i2, j2)]
        else:
            edges += [(i1, j1), (i1, j2), (i2, j1), (i2, j2)]
        links.append(Link(kind, u, v, (i1, i2), (j1, j2)))
    return ClassCGraph(Graph.from_edges(nxt - 1, edges), tuple(comps), tuple(links))


def lift_2li_solution(inst: TLIInstance, sol: TwoLabelling, cg: ClassCGraph) -> Labelling:
    """3-set labels for the clique graph from a pair labelling of the instance.

    Every vertex of ``C_i`` extends the pair of ``i``. A strong link shares one
    fresh element per matched pair; a weak link borrows the other side's
    elements, one per vertex.
    """
    bad = sol.violations(inst)
    if bad:
        raise GhrecError("VERIFICATION_FAILED", f"not a 2-labelling of the instance: {bad[:3]}", witness=bad)
    fresh = max((x for p in sol.pairs.values() for x in p), default=0) + 1
    labels: dict[int, tuple[int, ...]] = {}
    for link in cg.links:
        pa, pb = sol[link.a], sol[link.b]
        (i1, i2), (j1, j2) = link.a_side, link.b_side
        if link.kind == STRONG:
            x, y = fresh, fresh + 1
            fresh += 2
            labels[i1], labels[i2] = pa + (x,), pa + (y,)
            labels[j1], labels[j2] = pb + (x,), pb + (y,)
        else:
            labels[i1], labels[i2] = pa + (pb[0],), pa + (pb[1],)
            labels[j1], labels[j2] = pb + (pa[0],), pb + (pa[1],)
    for i in range(1, len(cg.components)):
        for v in cg.components[i]:
            if v not in labels:
                labels[v] = sol[i] + (fresh,)
                fresh += 1
    try:
        lab = Labelling.of(labels, 3)
    except GhrecError as exc:
        raise GhrecError("VERIFICATION_FAILED", f"lifted labels collide: {exc}", witness=exc.witness) from None
    rep = verify_labelling(cg.graph, lab)
    if not rep.ok:
        raise GhrecError("VERIFICATION_FAILED", f"{len(rep.violations)} violations, first {rep.violations[0]}",
                         witness=rep.violations)
    return lab
