"""Polynomial recognition for trees and chordal claw-free graphs.

Pipeline per connected component: trivial sizes, trees, K_{1,4} and claw
screens, chordality, then the graph is cut at its bridges. Every 2-edge-connected
piece gets a clique tree, sign constraints, a sign assignment and an explicit
labelling; pieces are glued back along the bridges by renaming ground
elements, and the result is verified before it is reported.
"""
from __future__ import annotations

import gc
import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Iterator

from .chordal import (STRONG, CliqueTree, EliminationOrder, _mcs_order, _peo_violation, checked_clique_tree,
                      chordal_maximal_cliques, find_hole)
from .errors import ConstructionError, GhrecError
from .graph import Graph, _bridges, connected_components
from .hypergraph import Labelling, verify_labelling
from .patterns import PatternName, find_induced_pattern
from .signs import Conflict, Sign, SignAssignment, clique_sign_of_labelling, derive_constraints, solve_sign_csp

YES = "YES"
NO = "NO"
INAPPLICABLE = "INAPPLICABLE"


@dataclass(frozen=True)
class Refusal:
    code: str
    witness: object = None

    def witness_lines(self) -> list[str]:
        w = self.witness
        if w is None:
            return []
        if isinstance(w, (list, tuple)) and w and all(isinstance(x, (list, tuple)) for x in w):
            return ["w " + " ".join(map(str, x)) for x in w]
        if isinstance(w, (list, tuple)):
            return ["w " + " ".join(map(str, w))]
        return [f"w {w}"]


@dataclass(frozen=True)
class Recognition:
    verdict: str
    labelling: Labelling | None = None
    refusal: Refusal | None = None
    inapplicable: Refusal | None = None
    clique_signs: tuple[tuple[tuple[int, ...], Sign], ...] = field(default=(), compare=False)

    def render(self) -> str:
        if self.verdict == YES:
            lines = ["YES"]
            lines += [f"l {v} " + " ".join(map(str, self.labelling[v])) for v in self.labelling.vertices()]
            return "\n".join(lines)
        r = self.refusal if self.verdict == NO else self.inapplicable
        detail = getattr(r.witness, "describe", None)
        lines = [f"{self.verdict} {r.code}"]
        lines += [f"# {detail()}"] if detail else r.witness_lines()
        return "\n".join(lines)


class _Fresh:
    """Monotone source of unused ground elements."""

    def __init__(self, start: int = 1):
        self._it = itertools.count(start)

    def __call__(self) -> int:
        return next(self._it)

    def take(self, k: int) -> list[int]:
        return [next(self._it) for _ in range(k)]


class _LabelBoard:
    """Labels placed so far with a pair -> holders index for O(1) clash checks."""

    def __init__(self):
        self.labels: dict[int, tuple[int, ...]] = {}
        self.holders: dict[tuple[int, int], set[int]] = defaultdict(set)

    def fits(self, lab: tuple[int, ...], members: set[int], checked: list[int]) -> bool:
        """No non-member may share a pair with ``lab``; ``checked`` members must share exactly one."""
        for p in combinations(lab, 2):
            h = self.holders.get(p)
            if h and not h <= members:
                return False
        s = set(lab)
        return all(len(s.intersection(self.labels[y])) == 2 for y in checked)

    def put(self, x: int, lab: tuple[int, ...]) -> None:
        lab = tuple(sorted(lab))
        self.labels[x] = lab
        for p in combinations(lab, 2):
            self.holders[p].add(x)

    def drop(self, x: int) -> None:
        lab = self.labels.pop(x)
        for p in combinations(lab, 2):
            self.holders[p].discard(x)

    def free_pairs(self, x: int) -> list[tuple[int, int]]:
        return [p for p in combinations(self.labels[x], 2) if len(self.holders[p]) == 1]


def _clique_options(board: _LabelBoard, sign: Sign, sep: list[int], new_count: int,
                    fresh: _Fresh) -> Iterator[list[tuple[int, ...]]]:
    """Candidate label tuples for the unlabelled members of one clique."""
    if not sep:
        if sign is Sign.POS:
            a, b = fresh.take(2)
            yield [(a, b, fresh()) for _ in range(new_count)]
        else:
            q = fresh.take(4)
            yield [tuple(s) for s in combinations(q, 3)][:new_count]
        return
    if sign is Sign.POS:
        if len(sep) == 2:
            common = tuple(sorted(set(board.labels[sep[0]]) & set(board.labels[sep[1]])))
            pairs = [common] if len(common) == 2 else []
        else:
            pairs = list(combinations(board.labels[sep[0]], 2))
        for p in pairs:
            yield [p + (fresh(),) for _ in range(new_count)]
        return
    if len(sep) == 2:
        q = sorted(set(board.labels[sep[0]]) | set(board.labels[sep[1]]))
    else:
        q = sorted(board.labels[sep[0]]) + [fresh()]
    taken = {board.labels[v] for v in sep}
    opts = [s for s in combinations(sorted(q), 3) if s not in taken]
    for chosen in permutations(opts, new_count):
        yield list(chosen)


def construct_labelling(t: CliqueTree, s: SignAssignment, fresh: _Fresh | None = None) -> Labelling:
    """Label the vertices clique by clique from the root down.

    A positive clique gets its common pair (the separator's shared pair, or a
    free pair of a weak attachment vertex) plus one fresh element per new
    vertex; a negative clique takes 3-subsets of the 4-set spanned by its
    separator (a fresh fourth element for a weak attachment). Strong children
    are placed before weak ones so that the latter take the pairs left over.
    """
    if not s.ok:
        raise GhrecError("SIGN_CONFLICT", "cannot construct from a conflicting assignment", witness=s.conflict)
    board = _LabelBoard()
    _construct(t, s, fresh or _Fresh(), board)
    return Labelling.of(dict(board.labels), 3)


def _construct(t: CliqueTree, s: SignAssignment, fresh: _Fresh, board: _LabelBoard) -> None:
    order = [(t.root, None)]
    seen = {t.root}
    i = 0
    while i < len(order):
        c, _ = order[i]
        i += 1
        kids = [e for e in t.incident(c) if e.other(c) not in seen]
        kids.sort(key=lambda e: (e.kind != STRONG, e.other(c)))
        for e in kids:
            seen.add(e.other(c))
            order.append((e.other(c), e))
    for c, e in order:
        members = set(t.cliques[c])
        sep = [v for v in t.cliques[c] if v in board.labels]
        new = [v for v in t.cliques[c] if v not in board.labels]
        placed = False
        for option in _clique_options(board, s.signs[c], sep, len(new), fresh):
            if len(option) < len(new):
                continue
            done = []
            # labels drawn from one pattern meet each other in a pair by construction
            for x, lab in zip(new, option):
                if not board.fits(lab, members, sep):
                    break
                board.put(x, lab)
                done.append(x)
            if len(done) == len(new):
                placed = True
                break
            for x in done:
                board.drop(x)
        if not placed:
            raise ConstructionError(
                "INTERNAL_CONSTRUCTION_FAILURE",
                f"no labels for clique {t.cliques[c]} ({s.signs[c].value}) given separator {sep}",
                witness=t.cliques[c],
            )


def tree_labelling(g: Graph) -> Recognition:
    """Trees are realizable exactly when every degree is at most 3."""
    if g.n and (g.m != g.n - 1 or len(connected_components(g)) != 1):
        raise GhrecError("NOT_A_TREE", "tree_labelling needs a tree")
    for v in g.vertices():
        if g.degree(v) >= 4:
            return Recognition(NO, refusal=Refusal("TREE_DEGREE", (v,)))
    board = _LabelBoard()
    fresh = _Fresh()
    if g.n == 0:
        return Recognition(YES, Labelling.of({}, 3))
    board.put(1, tuple(fresh.take(3)))
    stack = [1]
    while stack:
        w = stack.pop()
        for v in sorted(g.adj[w]):
            if v in board.labels:
                continue
            p = board.free_pairs(w)[0]
            board.put(v, p + (fresh(),))
            stack.append(v)
    lab = Labelling.of(board.labels, 3)
    _check(g, lab)
    return Recognition(YES, lab)


def _check(g: Graph, lab: Labelling) -> None:
    rep = verify_labelling(g, lab)
    if not rep.ok:
        raise ConstructionError("INTERNAL_CONSTRUCTION_FAILURE", f"{len(rep.violations)} violations",
                                witness=rep.violations[:5])


@dataclass(frozen=True)
class AttachInfo:
    """Size and sign of the clique on each side of a bridge (size 1 for a leaf end)."""
    left_size: int
    left_sign: Sign | None
    right_size: int
    right_sign: Sign | None

    @property
    def case(self) -> str:
        def side(size, sign):
            return f"K{size}" if size <= 2 else f"{sign.name}{size}"
        return f"{side(self.left_size, self.left_sign)}/{side(self.right_size, self.right_sign)}"

    def supported(self) -> bool:
        # a negative K4 uses every pair of its members, leaving none for the bridge
        return not any(size == 4 and sign is Sign.NEG
                       for size, sign in ((self.left_size, self.left_sign), (self.right_size, self.right_sign)))


def attach_info(g: Graph, lab: Labelling, bridge: tuple[int, int]) -> AttachInfo:
    """Describe the cliques that ``bridge`` leaves on either side in a realized graph."""
    sides = []
    for v, other in (bridge, bridge[::-1]):
        clique = [v] + sorted(w for w in g.adj[v] if w != other)
        if len(clique) <= 2:
            sides.append((len(clique), None))
        else:
            sides.append((len(clique), clique_sign_of_labelling(lab, clique)))
    return AttachInfo(sides[0][0], sides[0][1], sides[1][0], sides[1][1])


def merge_at_bridge(left: Recognition | Labelling, right: Recognition | Labelling, bridge: tuple[int, int],
                    info: AttachInfo | None = None) -> Recognition:
    """Join two realizations with disjoint vertex sets through the edge ``bridge``.

    The right side is renamed onto fresh elements, then a pair of the left
    endpoint's label used by no other left label is identified with such a pair
    of the right endpoint. Only the two endpoints then share two elements.
    """
    L = left.labelling if isinstance(left, Recognition) else left
    R = right.labelling if isinstance(right, Recognition) else right
    if L is None or R is None:
        raise GhrecError("CASE_UNMATCHED", "both sides must be realized")
    u, w = bridge
    if u not in L.labels:
        u, w = w, u
    if u not in L.labels or w not in R.labels or set(L.labels) & set(R.labels):
        raise GhrecError("CASE_UNMATCHED", "bridge must join the two vertex sets")
    if info is not None and not info.supported():
        raise GhrecError("CASE_UNMATCHED", f"no merge for case {info.case}", witness=(u, w))
    fresh = _Fresh(max(L.ground(), default=0) + 1)
    ren = {x: fresh() for x in sorted(R.ground())}
    labels = dict(L.labels)
    labels.update((v, tuple(ren[x] for x in lab)) for v, lab in R.labels.items())
    count = _pair_count(labels.values())
    _attach(labels, count, u, w, list(R.labels))
    return Recognition(YES, Labelling.of(labels, 3))


def _pair_count(labels) -> Counter:
    count: Counter = Counter()
    for lab in labels:
        count.update(combinations(lab, 2))
    return count


def _attach(labels: dict[int, tuple[int, ...]], count: Counter, u: int, w: int, right: list[int]) -> None:
    """Rename the right side (vertices ``right``, elements disjoint from the rest)
    so that a free pair of ``w`` becomes a free pair of ``u``."""
    lp = next((p for p in combinations(labels[u], 2) if count[p] == 1), None)
    rp = next((p for p in combinations(labels[w], 2) if count[p] == 1), None)
    if lp is None or rp is None:
        raise ConstructionError("CASE_UNMATCHED", f"no unused label pair at bridge end {w if lp else u}",
                                witness=(u, w))
    ren = {rp[0]: lp[0], rp[1]: lp[1]}
    for v in right:
        lab = labels[v]
        if ren.keys() & set(lab):
            new = tuple(sorted(ren.get(x, x) for x in lab))
            count.subtract(combinations(lab, 2))
            count.update(combinations(new, 2))
            labels[v] = new


def _trivial(n: int) -> Labelling:
    return Labelling.of({1: (1, 2, 3), 2: (1, 2, 4)} if n == 2 else ({1: (1, 2, 3)} if n == 1 else {}), 3)


def recognize(g: Graph) -> Recognition:
    # millions of short-lived tuples and sets; cyclic collection only adds rescans
    paused = gc.isenabled()
    gc.disable()
    try:
        return _recognize(g)
    finally:
        if paused:
            gc.enable()


def _recognize(g: Graph) -> Recognition:
    comps = connected_components(g)
    if len(comps) <= 1:
        return _recognize_connected(g, _Fresh())
    fresh = _Fresh()
    labels: dict[int, tuple[int, ...]] = {}
    signs = []
    pending = None
    for comp in comps:
        sub, back = g.induced(comp)
        r = _recognize_connected(sub, fresh)
        if r.verdict == NO:
            return Recognition(NO, refusal=_map_refusal(r.refusal, back))
        if r.verdict == INAPPLICABLE:
            pending = pending or Recognition(INAPPLICABLE, inapplicable=_map_refusal(r.inapplicable, back))
            continue
        for v, lab in r.labelling.labels.items():
            labels[back[v]] = lab
        signs += [(tuple(back[v] for v in c), sg) for c, sg in r.clique_signs]
    if pending:
        return pending
    lab = Labelling.of(labels, 3)
    _check(g, lab)
    return Recognition(YES, lab, clique_signs=tuple(signs))


def _map_refusal(r: Refusal, back: list[int]) -> Refusal:
    def m(x):
        if isinstance(x, int) and 0 < x < len(back):
            return back[x]
        if isinstance(x, (list, tuple)):
            return type(x)(m(y) for y in x) if isinstance(x, tuple) else [m(y) for y in x]
        return x
    if hasattr(r.witness, "describe"):
        return r
    return Refusal(r.code, m(r.witness))


def _recognize_connected(g: Graph, fresh: _Fresh) -> Recognition:
    if g.n <= 2:
        lab = _trivial(g.n)
        return Recognition(YES, lab.renamed({x: fresh() for x in sorted(lab.ground())}))
    if g.m == g.n - 1:
        r = tree_labelling(g)
        if r.verdict == YES:
            lab = r.labelling.renamed({x: fresh() for x in sorted(r.labelling.ground())})
            return Recognition(YES, lab)
        return r
    cut = _bridges(g)
    pieces, piece_of = _split_at_bridges(g, cut)

    # a cycle never crosses a bridge, so chordality can be decided piece by piece
    prepared = []
    hole = None
    for comp in pieces:
        if len(comp) == 1:
            prepared.append((comp, None, None, None))
            continue
        sub, back = g.induced(comp) if len(pieces) > 1 else (g, list(range(g.n + 1)))
        order = _mcs_order(sub)
        bad = _peo_violation(sub, order)
        if bad is not None:
            hole = tuple(back[v] for v in find_hole(sub, bad))
            break
        cliques = chordal_maximal_cliques(sub, EliminationOrder(tuple(order), True))
        prepared.append((comp, sub, back, cliques))

    # stars are screened before chordality; a chordal graph with a two-clique
    # cover of every neighbourhood is claw-free, so only suspects get searched
    if hole is not None or not _clawfree_by_cover(g, prepared, cut):
        refusal = _star_refusal(g)
        if refusal is not None:
            return refusal
    if hole is not None:
        return Recognition(INAPPLICABLE, inapplicable=Refusal("NOT_CHORDAL", hole))

    bridge_ends: dict[int, int] = defaultdict(int)
    for a, b in cut:
        bridge_ends[a] += 1
        bridge_ends[b] += 1
    piece_labels: list[dict[int, tuple[int, ...]]] = []
    signs: list = []
    for comp, sub, back, cliques in prepared:
        if sub is None:
            piece_labels.append({comp[0]: tuple(fresh.take(3))})
            continue
        out = _label_piece(sub, back, cliques, bridge_ends, fresh)
        if isinstance(out, Recognition):
            return out
        labels, piece_signs = out
        piece_labels.append(labels)
        signs += piece_signs

    lab = _glue(pieces, piece_of, piece_labels, cut)
    _check(g, lab)
    return Recognition(YES, lab, clique_signs=tuple(signs))


def _star_refusal(g: Graph) -> Recognition | None:
    claw = find_induced_pattern(g, PatternName.CLAW)
    if claw is None:
        return None
    occ = find_induced_pattern(g, PatternName.K14)
    if occ:
        return Recognition(NO, refusal=Refusal("K14_FOUND", occ.embedding))
    return Recognition(INAPPLICABLE, inapplicable=Refusal("CLAW_FOUND_NOT_TREE", claw.embedding))


def _clawfree_by_cover(g: Graph, prepared, cut) -> bool:
    """Chordal graphs are perfect, so a claw-free neighbourhood splits into two
    cliques: two maximal cliques through v must contain all others through v."""
    through: dict[int, list[frozenset]] = defaultdict(list)
    for _, sub, back, cliques in prepared:
        if sub is None:
            continue
        for c in cliques:
            fc = frozenset(back[v] for v in c)
            for v in fc:
                through[v].append(fc)
    for a, b in cut:
        e = frozenset((a, b))
        through[a].append(e)
        through[b].append(e)
    for v, cs in through.items():
        if len(cs) <= 2:
            continue
        need = len(g.adj[v]) + 1
        if not any(len(x | y) == need for x, y in combinations(cs, 2)):
            return False
    return True


def _split_at_bridges(g: Graph, cut: list[tuple[int, int]]) -> tuple[list[list[int]], list[int]]:
    """2-edge-connected pieces, and the 1-based piece id of every vertex."""
    cut_set = set(cut)
    piece_of = [0] * (g.n + 1)
    pieces: list[list[int]] = []
    for s in g.vertices():
        if piece_of[s]:
            continue
        pid = len(pieces) + 1
        piece_of[s] = pid
        comp = [s]
        stack = [s]
        while stack:
            v = stack.pop()
            for x in g.adj[v]:
                if not piece_of[x] and ((v, x) if v < x else (x, v)) not in cut_set:
                    piece_of[x] = pid
                    comp.append(x)
                    stack.append(x)
        pieces.append(comp)
    return pieces, piece_of


def _label_piece(sub: Graph, back: list[int], cliques: list[tuple[int, ...]], bridge_ends: dict[int, int],
                 fresh: _Fresh):
    """Labels of one bridgeless piece in original ids, or a refusal."""
    local_ends = {i: bridge_ends[back[i]] for i in range(1, sub.n + 1) if back[i] in bridge_ends}
    try:
        t = checked_clique_tree(cliques)
    except GhrecError as exc:
        if exc.code != "SEPARATOR_TOO_BIG":
            raise
        w = tuple(tuple(back[v] for v in part) for part in exc.witness)
        return Recognition(NO, refusal=Refusal("SEPARATOR_TOO_BIG", w))
    try:
        cs = derive_constraints(t, sub, local_ends)
    except GhrecError as exc:
        if exc.code != "IMMEDIATE_CONFLICT":
            raise
        conflict = Conflict((exc.witness[0].clique,), tuple(exc.witness))
        return Recognition(NO, refusal=Refusal("SIGN_CONFLICT", _Chain(conflict, t, back)))
    sa = solve_sign_csp(t, cs)
    if not sa.ok:
        return Recognition(NO, refusal=Refusal("SIGN_CONFLICT", _Chain(sa.conflict, t, back)))
    board = _LabelBoard()
    _construct(t, sa, fresh, board)
    labels = {back[v]: lab for v, lab in board.labels.items()}
    return labels, [(tuple(back[v] for v in c), sa.signs[i]) for i, c in enumerate(t.cliques)]


def _glue(pieces, piece_of, piece_labels, cut) -> Labelling:
    """Attach pieces along the bridges, walking outwards from the first piece."""
    labels: dict[int, tuple[int, ...]] = {}
    for pl in piece_labels:
        labels.update(pl)
    if len(pieces) > 1:
        count = _pair_count(labels.values())
        across: dict[int, list[tuple[int, int]]] = defaultdict(list)
        for a, b in cut:
            across[piece_of[a]].append((a, b))
            across[piece_of[b]].append((b, a))
        done = {1}
        stack = [1]
        while stack:
            p = stack.pop()
            for a, b in across[p]:
                q = piece_of[b]
                if q in done:
                    continue
                done.add(q)
                _attach(labels, count, a, b, pieces[q - 1])
                stack.append(q)
    return Labelling.of(labels, 3)


@dataclass(frozen=True)
class _Chain:
    """Conflict certificate with clique ids translated to vertex sets."""
    conflict: Conflict
    tree: CliqueTree
    back: list[int]

    def describe(self) -> str:
        names = "; ".join(f"{k}={{{','.join(str(self.back[v]) for v in self.tree.cliques[k])}}}"
                          for k in self.conflict.cliques)
        return f"{self.conflict.describe()} | {names}"
