from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import chordal_graphs, graphs
from ghrec.errors import GhrecError
from ghrec.generators import chordal_clawfree_yes, random_tree
from ghrec.graph import Graph
from ghrec.hypergraph import Labelling, image, verify_labelling
from ghrec.oracle import FOUND, PROVEN_NO, oracle_search
from ghrec.recognizer import INAPPLICABLE, NO, YES, merge_at_bridge, recognize, tree_labelling

VERDICTS = {
    "butterfly": (YES, None), "claw": (YES, None), "diamond": (YES, None), "k4": (YES, None),
    "showcase": (YES, None), "sun3": (YES, None), "triangle": (YES, None),
    "k14": (NO, "TREE_DEGREE"), "k5me": (NO, "SEPARATOR_TOO_BIG"),
    "c4": (INAPPLICABLE, "NOT_CHORDAL"), "w4": (INAPPLICABLE, "NOT_CHORDAL"),
    "w5": (INAPPLICABLE, "NOT_CHORDAL"), "prism": (INAPPLICABLE, "NOT_CHORDAL"),
    "k33": (INAPPLICABLE, "CLAW_FOUND_NOT_TREE"), "petersen": (INAPPLICABLE, "CLAW_FOUND_NOT_TREE"),
}


@pytest.mark.parametrize("name", sorted(VERDICTS))
def test_corpus_verdicts(corpus, name):
    g = corpus(name)
    r = recognize(g)
    verdict, code = VERDICTS[name]
    assert r.verdict == verdict
    if verdict == YES:
        assert verify_labelling(g, r.labelling).ok
    elif verdict == NO:
        assert r.refusal.code == code
    else:
        assert r.inapplicable.code == code


def test_k5me_witness(corpus):
    r = recognize(corpus("k5me"))
    assert r.render().splitlines()[0] == "NO SEPARATOR_TOO_BIG"


def test_small_cases():
    assert recognize(Graph.from_edges(0, [])).verdict == YES
    assert recognize(Graph.from_edges(1, [])).verdict == YES
    assert recognize(Graph.from_edges(2, [(1, 2)])).verdict == YES


def test_disconnected_components_labelled_apart():
    g = Graph.from_edges(6, [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)])
    r = recognize(g)
    assert r.verdict == YES and verify_labelling(g, r.labelling).ok


def test_tree_labelling_star():
    star = Graph.from_edges(4, [(1, 2), (1, 3), (1, 4)])
    r = tree_labelling(star)
    assert r.verdict == YES and verify_labelling(star, r.labelling).ok
    big = Graph.from_edges(5, [(1, 2), (1, 3), (1, 4), (1, 5)])
    r = tree_labelling(big)
    assert r.verdict == NO and r.refusal.code == "TREE_DEGREE" and r.refusal.witness == (1,)


def test_tree_labelling_rejects_cycle(corpus):
    with pytest.raises(GhrecError) as ei:
        tree_labelling(corpus("c4"))
    assert ei.value.code == "NOT_A_TREE"


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 60), st.integers(0, 2**32))
def test_trees_of_degree_three(n, seed):
    t = random_tree(n, seed, max_degree=3)
    r = recognize(t)
    assert r.verdict == YES and verify_labelling(t, r.labelling).ok


def test_merge_at_bridge_triangles():
    left = Labelling.of({1: (1, 2, 3), 2: (1, 2, 4), 3: (1, 2, 5)}, 3)
    right = Labelling.of({4: (1, 2, 3), 5: (1, 2, 4), 6: (1, 3, 4)}, 3)
    g = Graph.from_edges(6, [(1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6), (3, 4)])
    merged = merge_at_bridge(left, right, (3, 4))
    assert verify_labelling(g, merged.labelling).ok


def test_merge_needs_disjoint_sides():
    lab = Labelling.of({1: (1, 2, 3)}, 3)
    with pytest.raises(GhrecError) as ei:
        merge_at_bridge(lab, lab, (1, 1))
    assert ei.value.code == "CASE_UNMATCHED"


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 80), st.integers(0, 2**32))
def test_generated_yes_instances(n, seed):
    g, _ = chordal_clawfree_yes(n, seed)
    r = recognize(g)
    assert r.verdict == YES and verify_labelling(g, r.labelling).ok


@settings(max_examples=150, deadline=None)
@given(chordal_graphs(min_n=1, max_n=8))
def test_agrees_with_oracle_on_chordal(g):
    r = recognize(g)
    if r.verdict == INAPPLICABLE:
        assert r.inapplicable.code == "CLAW_FOUND_NOT_TREE"
        return
    expect = oracle_search(g).status
    assert expect in (FOUND, PROVEN_NO)
    assert (r.verdict == YES) == (expect == FOUND)


@settings(max_examples=150, deadline=None)
@given(graphs(min_n=1, max_n=7))
def test_yes_is_sound_and_no_is_proven(g):
    r = recognize(g)
    if r.verdict == YES:
        assert verify_labelling(g, r.labelling).ok
    elif r.verdict == NO:
        assert oracle_search(g).status == PROVEN_NO


@settings(max_examples=50, deadline=None)
@given(st.integers(3, 40), st.integers(0, 2**32))
def test_labelling_image_is_the_input(n, seed):
    g, _ = chordal_clawfree_yes(n, seed)
    r = recognize(g)
    assert r.verdict == YES
    assert image(r.labelling, 2).sorted_edges() == g.sorted_edges()
