from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import CORPUS, is_connected_brute
from ghrec.errors import GhrecError
from ghrec.generators import random_cnf3, random_cubic
from ghrec.graph import Graph
from ghrec.hypergraph import multiplicity, verify_labelling
from ghrec.oracle import PROVEN_NO, oracle_search
from ghrec.patterns import PatternName, find_induced_pattern
from ghrec.reductions import (Formula3CNF, TLIInstance, TwoLabelling, brute_force_sat, build_2li, ham_reduction,
                              hamiltonian, li_to_clawfree, lift_2li_solution, parse_2li, parse_cnf, serialize_2li,
                              serialize_cnf, solve_2li)
from ghrec.reductions.classc import STRONG, WEAK, component_size
from ghrec.reductions.hamilton import FOUND as HAM_FOUND, NONE
from ghrec.reductions.twoli import BUDGET_EXHAUSTED, FOUND, PROVEN_NO as TLI_NO


def brute_2li(inst: TLIInstance) -> bool:
    """Exhaustive check with elements introduced in order of first use."""
    n = inst.n
    pairs: dict[int, frozenset[int]] = {}

    def go(v: int, used: int) -> bool:
        if v > n:
            return True
        for p in combinations(range(1, used + 3), 2):
            new = [x for x in p if x > used]
            if new != list(range(used + 1, used + 1 + len(new))):
                continue
            s = frozenset(p)
            if s in pairs.values():
                continue
            ok = True
            for u in inst.graph.adj[v]:
                if u in pairs:
                    k = len(s & pairs[u])
                    if (k != 1) if inst.is_strong(u, v) else (k != 0):
                        ok = False
                        break
            if ok:
                pairs[v] = s
                if go(v + 1, used + len(new)):
                    return True
                del pairs[v]
        return False

    return go(1, 0)


@st.composite
def tli_instances(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    all_edges = list(combinations(range(1, n + 1), 2))
    kinds = draw(st.lists(st.sampled_from(["", "w", "s"]), min_size=len(all_edges), max_size=len(all_edges)))
    weak = [e for e, k in zip(all_edges, kinds) if k == "w"]
    strong = [e for e, k in zip(all_edges, kinds) if k == "s"]
    return TLIInstance.of(n, weak, strong)


# ---- 3-SAT ----

def test_parse_cnf_and_round_trip():
    f = parse_cnf((CORPUS / "sat_single.cnf").read_text())
    assert f.nvars == 3 and len(f.clauses) == 1
    assert [lit.dimacs() for lit in f.clauses[0]] == [-1, 2, 3]
    assert parse_cnf(serialize_cnf(f)) == f


@pytest.mark.parametrize("text, code", [
    ("1 2 3 0\n", "MALFORMED"),
    ("p cnf 3 1\n1 2 0\n", "NOT_3SAT"),
    ("p cnf 3 2\n1 2 3 0\n", "MALFORMED"),
    ("p cnf 3 1\n1 2 4 0\n", "MALFORMED"),
    ("p cnf 3 1\n1 2 3\n", "MALFORMED"),
])
def test_parse_cnf_errors(text, code):
    with pytest.raises(GhrecError) as ei:
        parse_cnf(text)
    assert ei.value.code == code


def test_brute_force_fixtures():
    for name, sat in (("sat_single", True), ("sat_seven", True), ("unsat_eight", False), ("unsat_split", False)):
        f = parse_cnf((CORPUS / f"{name}.cnf").read_text())
        a = brute_force_sat(f)
        assert (a is not None) == sat, name
        if a is not None:
            assert f.satisfied_by(a)


# ---- 2LI ----

def test_parse_2li_round_trip_and_errors():
    inst = parse_2li("p 2li 3 1 1\nw 1 2\ns 2 3\n")
    assert inst.weak_edges == {(1, 2)} and inst.strong_edges == {(2, 3)}
    assert parse_2li(serialize_2li(inst)) == inst
    for text, code in (("w 1 2\n", "MALFORMED_LINE"), ("p 2li 3 2 0\nw 1 2\n", "COUNT_MISMATCH"),
                       ("p 2li 2 1 1\nw 1 2\ns 1 2\n", "DUPLICATE_EDGE")):
        with pytest.raises(GhrecError) as ei:
            parse_2li(text)
        assert ei.value.code == code


def test_build_2li_sizes():
    f = Formula3CNF.of(3, [[-1, 2, 3]])
    inst = build_2li(f)
    assert inst.n == 3 * 3 + 5 * 1 + 3
    f2 = parse_cnf((CORPUS / "unsat_split.cnf").read_text())
    assert build_2li(f2).n == 3 * 5 + 5 * 8 + 3


def test_solve_examples():
    tri = TLIInstance.of(3, [], [(1, 2), (2, 3), (1, 3)])
    out = solve_2li(tri)
    assert out.status == FOUND and out.labelling.violations(tri) == []
    # pairs through one common element
    k4 = TLIInstance.of(4, [], list(combinations(range(1, 5), 2)))
    assert solve_2li(k4).status == FOUND
    # weak triangle forces three disjoint pairs, and a strong vertex meeting all is impossible
    claw = TLIInstance.of(4, [(1, 2), (1, 3), (2, 3)], [(1, 4), (2, 4), (3, 4)])
    assert solve_2li(claw).status == TLI_NO


def test_solve_budget_and_method():
    inst = build_2li(parse_cnf((CORPUS / "sat_seven.cnf").read_text()))
    assert solve_2li(inst, budget=1).status == BUDGET_EXHAUSTED
    with pytest.raises(ValueError):
        solve_2li(inst, method="magic")


@settings(max_examples=200, deadline=None)
@given(tli_instances())
def test_solvers_match_brute_force(inst):
    expect = brute_2li(inst)
    for method in ("sides", "pairs"):
        out = solve_2li(inst, method=method)
        assert out.status == (FOUND if expect else TLI_NO), method
        if expect:
            assert out.labelling.violations(inst) == []


@settings(max_examples=25, deadline=None)
@given(st.integers(3, 6), st.integers(1, 4), st.integers(0, 2**32))
def test_gadget_found_on_satisfiable(nvars, ncl, seed):
    f = random_cnf3(nvars, ncl, seed)
    assert brute_force_sat(f) is not None
    out = solve_2li(build_2li(f))
    assert out.status == FOUND and out.labelling.violations(build_2li(f)) == []


# ---- clique graphs ----

def test_strong_link_shape():
    inst = TLIInstance.of(2, [], [(1, 2)])
    cg = li_to_clawfree(inst)
    assert [len(c) for c in cg.components[1:]] == [5, 5]
    (link,) = cg.links
    assert link.kind == STRONG
    (i1, i2), (j1, j2) = link.a_side, link.b_side
    g = cg.graph
    assert g.has_edge(i1, j1) and g.has_edge(i2, j2)
    assert not g.has_edge(i1, j2) and not g.has_edge(i2, j1)
    assert g.m == 2 * 10 + 2


def test_weak_link_shape():
    cg = li_to_clawfree(TLIInstance.of(2, [(1, 2)], []))
    (link,) = cg.links
    assert link.kind == WEAK
    assert cg.graph.m == 2 * 10 + 4


def test_component_size():
    assert [component_size(d) for d in (0, 2, 3, 4)] == [5, 5, 6, 8]


@settings(max_examples=40, deadline=None)
@given(tli_instances(max_n=5))
def test_class_c_graphs_are_claw_free(inst):
    cg = li_to_clawfree(inst)
    assert find_induced_pattern(cg.graph, PatternName.CLAW) is None
    for i in range(1, inst.n + 1):
        comp = cg.components[i]
        assert all(cg.graph.has_edge(u, v) for u, v in combinations(comp, 2))


def test_lift_single_links():
    for inst in (TLIInstance.of(2, [], [(1, 2)]), TLIInstance.of(2, [(1, 2)], [])):
        sol = solve_2li(inst).labelling
        cg = li_to_clawfree(inst)
        lab = lift_2li_solution(inst, sol, cg)
        assert verify_labelling(cg.graph, lab).ok


def test_lift_isolated_vertex():
    inst = TLIInstance.of(1, [], [])
    cg = li_to_clawfree(inst)
    lab = lift_2li_solution(inst, TwoLabelling({1: (1, 2)}), cg)
    assert sorted(lab[v] for v in cg.components[1]) == [(1, 2, k) for k in range(3, 8)]


def test_lift_rejects_bad_solution():
    inst = TLIInstance.of(2, [(1, 2)], [])
    with pytest.raises(GhrecError) as ei:
        lift_2li_solution(inst, TwoLabelling({1: (1, 2), 2: (2, 3)}), li_to_clawfree(inst))
    assert ei.value.code == "VERIFICATION_FAILED"


def test_weak_neighbours_sharing_an_element_do_not_lift():
    # two weak neighbours of vertex 1 whose pairs meet: the class-C graph has no realization
    inst = TLIInstance.of(3, [(1, 2), (1, 3)], [(2, 3)])
    sol = TwoLabelling({1: (1, 2), 2: (3, 4), 3: (3, 5)})
    assert sol.violations(inst) == []
    cg = li_to_clawfree(inst)
    with pytest.raises(GhrecError) as ei:
        lift_2li_solution(inst, sol, cg)
    assert ei.value.code == "VERIFICATION_FAILED"
    assert oracle_search(cg.graph).status == PROVEN_NO


# ---- Hamiltonian cycles ----

def test_ham_reduction_counts(corpus):
    g, lab = ham_reduction(corpus("k4"))
    assert g.n == 12 and g.m == 4 * 3 + 6
    assert verify_labelling(g, lab).ok and multiplicity(lab) == 3
    g, lab = ham_reduction(corpus("k33"))
    assert g.n == 18 and g.m == 6 * 3 + 9
    assert verify_labelling(g, lab).ok


def test_ham_reduction_needs_cubic(corpus):
    with pytest.raises(GhrecError) as ei:
        ham_reduction(corpus("c4"))
    assert ei.value.code == "NOT_CUBIC"


def test_hamiltonian_examples(corpus):
    c5 = Graph.from_edges(5, [(i, i % 5 + 1) for i in range(1, 6)])
    r = hamiltonian(c5)
    assert r.status == HAM_FOUND and sorted(r.cycle) == [1, 2, 3, 4, 5]
    k13 = Graph.from_edges(4, [(1, 2), (1, 3), (1, 4)])
    assert hamiltonian(k13).status == NONE
    assert hamiltonian(corpus("petersen")).status == NONE
    assert hamiltonian(ham_reduction(corpus("petersen"))[0]).status == NONE
    assert hamiltonian(ham_reduction(corpus("k4"))[0]).status == HAM_FOUND


def _is_ham_cycle(g: Graph, cyc) -> bool:
    return (sorted(cyc) == list(g.vertices())
            and all(g.has_edge(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc))))


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([4, 6, 8]), st.integers(0, 2**32))
def test_reduction_preserves_hamiltonicity(n, seed):
    g = random_cubic(n, seed)
    assert is_connected_brute(g.n, g.sorted_edges())
    h, lab = ham_reduction(g)
    assert verify_labelling(h, lab).ok
    a, b = hamiltonian(g), hamiltonian(h)
    assert (a.status == HAM_FOUND) == (b.status == HAM_FOUND)
    if a.status == HAM_FOUND:
        assert _is_ham_cycle(g, a.cycle) and _is_ham_cycle(h, b.cycle)
