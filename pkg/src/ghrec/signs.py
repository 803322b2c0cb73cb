"""Signs of maximal cliques in a realization and the constraints they obey.

A clique is positive when all its labels contain one common pair of elements,
negative otherwise (then its labels are 3-subsets of a single 4-set). Along a
clique tree, strongly intersecting cliques (2 shared vertices) have opposite
signs and weakly intersecting ones (1 shared vertex) are never both negative.

Each label has exactly three element pairs. A positive clique consumes one pair
of each of its vertices, a negative clique of size s consumes s-1, a clique
strongly adjacent to another through the separator {v, w} shares the pair of
v with it, and each bridge at v consumes one more. Hence the capacity rule:
at every vertex at most three pairs may be consumed.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations, product

from .chordal import STRONG, CliqueTree
from .errors import GhrecError
from .graph import Graph
from .hypergraph import Labelling

MUST_DIFFER = "MUST_DIFFER"
NOT_BOTH_NEG = "NOT_BOTH_NEG"

BIG_CLIQUE = "BIG_CLIQUE"
K4_WEAK = "K4_WEAK"
SUN_CENTER = "SUN_CENTER"
SUN_PETAL = "SUN_PETAL"
BRIDGE_SIDE_CONDITION = "BRIDGE_SIDE_CONDITION"


class Sign(enum.Enum):
    POS = "+"
    NEG = "-"

    def flip(self) -> "Sign":
        return Sign.NEG if self is Sign.POS else Sign.POS


def clique_sign_of_labelling(lab: Labelling, clique) -> Sign:
    vs = list(clique)
    if len(vs) < 2:
        raise GhrecError("NOT_A_REALIZED_CLIQUE", "a clique needs at least two vertices")
    for u, w in combinations(vs, 2):
        if len(set(lab[u]) & set(lab[w])) != 2:
            raise GhrecError("NOT_A_REALIZED_CLIQUE", f"labels of {u} and {w} do not share exactly two elements",
                             witness=(u, w))
    common = set(lab[vs[0]]).intersection(*(lab[v] for v in vs[1:]))
    return Sign.POS if len(common) >= 2 else Sign.NEG


def pair_demand(size: int, sign: Sign) -> int:
    """Pairs of a member's label consumed by a clique of this size and sign."""
    if size <= 2 or sign is Sign.POS:
        return 1
    return size - 1


@dataclass(frozen=True)
class Unary:
    clique: int
    sign: Sign
    tag: str


@dataclass(frozen=True)
class Binary:
    a: int
    b: int
    relation: str

    def holds(self, sa: Sign, sb: Sign) -> bool:
        if self.relation == MUST_DIFFER:
            return sa is not sb
        return not (sa is Sign.NEG and sb is Sign.NEG)


@dataclass(frozen=True)
class Capacity:
    vertex: int
    cliques: tuple[int, ...]
    sizes: tuple[int, ...]
    shared: int  # strong tree edges whose separator contains the vertex
    external: int = 0  # bridges at the vertex

    def load(self, signs) -> int:
        return sum(pair_demand(s, sg) for s, sg in zip(self.sizes, signs)) - self.shared + self.external

    def holds(self, signs) -> bool:
        return self.load(signs) <= 3


@dataclass
class SignConstraintSet:
    unary: dict[int, Unary] = field(default_factory=dict)
    binary: list[Binary] = field(default_factory=list)
    capacity: list[Capacity] = field(default_factory=list)

    def force(self, clique: int, sign: Sign, tag: str) -> None:
        old = self.unary.get(clique)
        if old is not None and old.sign is not sign:
            raise GhrecError(
                "IMMEDIATE_CONFLICT",
                f"clique {clique} forced {old.sign.value} by {old.tag} and {sign.value} by {tag}",
                witness=(old, Unary(clique, sign, tag)),
            )
        if old is None:
            self.unary[clique] = Unary(clique, sign, tag)

    def violations(self, signs: dict[int, Sign]) -> list:
        bad: list = [u for u in self.unary.values() if signs[u.clique] is not u.sign]
        bad += [b for b in self.binary if not b.holds(signs[b.a], signs[b.b])]
        bad += [c for c in self.capacity if not c.holds([signs[k] for k in c.cliques])]
        return bad


def derive_constraints(t: CliqueTree, g: Graph | None = None, bridge_ends: dict[int, int] | None = None) -> SignConstraintSet:
    """Forced signs and pairwise/capacity constraints for a clique tree.

    ``bridge_ends`` maps a vertex to the number of bridges leaving it; such a
    vertex must keep that many label pairs unused inside the tree.
    """
    bridge_ends = bridge_ends or {}
    cs = SignConstraintSet()
    sizes = [len(c) for c in t.cliques]
    for i, s in enumerate(sizes):
        if s >= 5:
            cs.force(i, Sign.POS, BIG_CLIQUE)
        elif s == 4 and any(e.kind != STRONG for e in t.incident(i)):
            cs.force(i, Sign.POS, K4_WEAK)
        elif s == 4 and any(v in bridge_ends for v in t.cliques[i]):
            cs.force(i, Sign.POS, BRIDGE_SIDE_CONDITION)
    for i, s in enumerate(sizes):
        if s != 3:
            continue
        petals = [e.other(i) for e in t.incident(i) if e.kind == STRONG and sizes[e.other(i)] == 3]
        seps = {e.separator for e in t.incident(i) if e.kind == STRONG and sizes[e.other(i)] == 3}
        if len(petals) == 3 and len(seps) == 3:
            cs.force(i, Sign.NEG, SUN_CENTER)
            for p in petals:
                cs.force(p, Sign.POS, SUN_PETAL)
    for e in t.edges:
        cs.binary.append(Binary(e.a, e.b, MUST_DIFFER if e.kind == STRONG else NOT_BOTH_NEG))
    shared: dict[int, int] = {}
    for e in t.edges:
        if e.kind == STRONG:
            for v in e.separator:
                shared[v] = shared.get(v, 0) + 1
    for v, ids in sorted(t.cliques_of().items()):
        ext = bridge_ends.get(v, 0)
        worst = sum(max(sizes[k] - 1, 1) for k in ids) - shared.get(v, 0) + ext
        if worst > 3:
            cs.capacity.append(Capacity(v, tuple(ids), tuple(sizes[k] for k in ids), shared.get(v, 0), ext))
    return cs


@dataclass(frozen=True)
class Conflict:
    cliques: tuple[int, ...]
    constraints: tuple

    def describe(self) -> str:
        parts = []
        for c in self.constraints:
            if isinstance(c, Unary):
                parts.append(f"{c.tag}({c.clique}{c.sign.value})")
            elif isinstance(c, Binary):
                parts.append(f"{c.relation}({c.a},{c.b})")
            elif isinstance(c, Capacity):
                parts.append(f"PAIR_CAPACITY(v{c.vertex}:{','.join(map(str, c.cliques))})")
            else:
                parts.append(str(c))
        return " ".join(parts)


@dataclass(frozen=True)
class SignAssignment:
    signs: dict[int, Sign]
    conflict: Conflict | None = None

    @property
    def ok(self) -> bool:
        return self.conflict is None

    def dump(self) -> str:
        return "\n".join(f"s {c} {s.value}" for c, s in sorted(self.signs.items()))


def solve_sign_csp(t: CliqueTree, cs: SignConstraintSet) -> SignAssignment:
    """Exact solver. MUST_DIFFER chains fix each strongly connected group of
    cliques up to one global flip; the remaining constraints are tables over
    those groups and are solved by arc consistency plus root-first assignment."""
    n = len(t.cliques)
    order = [c for c, _ in t.bfs()]
    in_tree = set(order)
    order += [c for c in range(n) if c not in in_tree]

    diff_adj: dict[int, list[tuple[int, Binary]]] = {c: [] for c in range(n)}
    for b in cs.binary:
        if b.relation == MUST_DIFFER:
            diff_adj[b.a].append((b.b, b))
            diff_adj[b.b].append((b.a, b))
    group = [-1] * n
    parity = [0] * n
    groups: list[list[int]] = []
    for s in order:
        if group[s] >= 0:
            continue
        gid = len(groups)
        groups.append([s])
        group[s] = gid
        dq = deque([s])
        while dq:
            c = dq.popleft()
            for d, b in diff_adj[c]:
                if group[d] < 0:
                    group[d] = gid
                    parity[d] = parity[c] ^ 1
                    groups[gid].append(d)
                    dq.append(d)
                elif parity[d] == parity[c]:
                    return SignAssignment({}, Conflict((c, d), (b,)))

    def sign_of(c: int, state: int) -> Sign:
        return Sign.POS if parity[c] == state else Sign.NEG

    # constraint tables over group states
    cons: list[tuple[tuple[int, ...], object, set]] = []
    for u in cs.unary.values():
        cons.append(((group[u.clique],), u, {(st,) for st in (0, 1) if sign_of(u.clique, st) is u.sign}))
    for b in cs.binary:
        if b.relation == MUST_DIFFER:
            continue
        if any(cs.unary.get(k) is not None and cs.unary[k].sign is Sign.POS for k in (b.a, b.b)):
            continue  # a forced positive side satisfies it outright
        scope = tuple(sorted({group[b.a], group[b.b]}))
        # the only excluded combination puts both cliques in their negative state
        neg = {group[b.a]: parity[b.a] ^ 1}
        if neg.setdefault(group[b.b], parity[b.b] ^ 1) != parity[b.b] ^ 1:
            table = {(0,), (1,)}
        else:
            table = set(product((0, 1), repeat=len(scope))) - {tuple(neg[x] for x in scope)}
        cons.append((scope, b, table))
    for cap in cs.capacity:
        scope = tuple(sorted({group[k] for k in cap.cliques}))
        cons.append((scope, cap, _table(scope, group, cap.cliques, cap.holds, sign_of)))

    domains = [{0, 1} for _ in groups]
    reasons: list[list] = [[] for _ in groups]
    by_var: dict[int, list[int]] = {}
    for ci, (scope, _, _) in enumerate(cons):
        for gv in scope:
            by_var.setdefault(gv, []).append(ci)

    def conflict_for(gv: int) -> Conflict:
        seen_c, seen_g = [], set()
        stack = [gv]
        while stack:
            x = stack.pop()
            if x in seen_g:
                continue
            seen_g.add(x)
            for ci in reasons[x]:
                scope, obj, _ = cons[ci]
                if obj not in seen_c:
                    seen_c.append(obj)
                stack.extend(scope)
        cl = sorted({c for x in seen_g for c in groups[x]})
        return Conflict(tuple(cl), tuple(seen_c))

    queue = deque(range(len(cons)))
    queued = set(queue)
    while queue:
        ci = queue.popleft()
        queued.discard(ci)
        scope, _, table = cons[ci]
        for idx, gv in enumerate(scope):
            supported = {row[idx] for row in table if all(row[j] in domains[scope[j]] for j in range(len(scope)))}
            lost = domains[gv] - supported
            if lost:
                domains[gv] -= lost
                reasons[gv].append(ci)
                if not domains[gv]:
                    return SignAssignment({}, conflict_for(gv))
                for cj in by_var.get(gv, ()):
                    if cj not in queued:
                        queue.append(cj)
                        queued.add(cj)

    # root-first assignment, preferring each group's first clique positive
    state: dict[int, int] = {}
    gorder_seen: set[int] = set()
    gorder: list[int] = []
    for c in order:
        if group[c] not in gorder_seen:
            gorder_seen.add(group[c])
            gorder.append(group[c])

    def consistent(gv: int) -> bool:
        for ci in by_var.get(gv, ()):
            scope, _, table = cons[ci]
            if all(x in state for x in scope) and tuple(state[x] for x in scope) not in table:
                return False
        return True

    # iterative backtracking; never backtracks on tree-shaped constraint graphs
    choices: list[list[int]] = []
    i = 0
    while 0 <= i < len(gorder):
        gv = gorder[i]
        if len(choices) == i:
            first = groups[gv][0]
            choices.append(sorted(domains[gv], key=lambda st: sign_of(first, st) is not Sign.POS))
        placed = False
        while choices[i]:
            state[gv] = choices[i].pop(0)
            if consistent(gv):
                placed = True
                break
            del state[gv]
        if placed:
            i += 1
        else:
            choices.pop()
            state.pop(gv, None)
            i -= 1
            if i >= 0:
                state.pop(gorder[i], None)
    if i < 0:
        return SignAssignment({}, Conflict(tuple(range(n)), tuple(obj for _, obj, _ in cons)))
    return SignAssignment({c: sign_of(c, state[group[c]]) for c in range(n)})


def _table(scope: tuple[int, ...], group: list[int], cliques, pred, sign_of) -> set[tuple[int, ...]]:
    """Rows of group states over ``scope`` for which ``pred`` accepts the cliques' signs."""
    where = [scope.index(group[k]) for k in cliques]
    return {row for row in product((0, 1), repeat=len(scope))
            if pred([sign_of(k, row[i]) for k, i in zip(cliques, where)])}
