from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ghrec.errors import GhrecError
from ghrec.generators import (chordal_clawfree_yes, is_chordal_clawfree, perturbed, random_cnf3, random_cubic,
                              random_labelling, random_tree)
from ghrec.graph import connected_components
from ghrec.hypergraph import verify_labelling

seeds = st.integers(0, 2**64 - 1)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 60), seeds)
def test_yes_generator(n, seed):
    g, lab = chordal_clawfree_yes(n, seed)
    assert g.n == n and len(connected_components(g)) == 1
    assert is_chordal_clawfree(g)
    assert verify_labelling(g, lab).ok
    assert chordal_clawfree_yes(n, seed)[0] == g


def test_yes_generator_size():
    with pytest.raises(GhrecError) as ei:
        chordal_clawfree_yes(0, 1)
    assert ei.value.code == "BAD_SIZE"


@settings(max_examples=15, deadline=None)
@given(st.integers(6, 15), seeds)
def test_perturbed_stays_in_class(n, seed):
    g, _ = chordal_clawfree_yes(n, seed)
    try:
        h = perturbed(g, seed, flips=1, tries=200)
    except GhrecError as exc:
        assert exc.code == "GENERATION_TIMEOUT"
        return
    assert h.n == n and len(connected_components(h)) == 1 and is_chordal_clawfree(h)
    assert len(g.edges ^ h.edges) == 1


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 30), seeds)
def test_random_labelling(n, seed):
    lab = random_labelling(n, seed)
    assert len(lab.labels) == n and len(set(lab.labels.values())) == n
    assert lab.ground() <= set(range(1, max(4, n) + 1))
    assert random_labelling(n, seed).labels == lab.labels


def test_random_labelling_capacity():
    with pytest.raises(GhrecError):
        random_labelling(5, 0, ground=4)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 50), seeds, st.sampled_from([None, 2, 3]))
def test_random_tree(n, seed, cap):
    t = random_tree(n, seed, max_degree=cap)
    assert t.m == n - 1 and len(connected_components(t)) == 1
    if cap:
        assert all(t.degree(v) <= cap for v in t.vertices())


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([4, 6, 10, 20]), seeds)
def test_random_cubic(n, seed):
    g = random_cubic(n, seed)
    assert all(g.degree(v) == 3 for v in g.vertices())
    assert len(connected_components(g)) == 1


def test_random_cubic_size():
    with pytest.raises(GhrecError):
        random_cubic(5, 0)


@settings(max_examples=20, deadline=None)
@given(st.integers(3, 9), st.integers(0, 12), seeds)
def test_random_cnf3(nvars, ncl, seed):
    f = random_cnf3(nvars, ncl, seed)
    assert f.nvars == nvars and len(f.clauses) == ncl
    assert all(len({lit.var for lit in c}) == 3 for c in f.clauses)
    assert random_cnf3(nvars, ncl, seed) == f
