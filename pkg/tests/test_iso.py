import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symquandle.alexander import alexander_quandle
from symquandle.autgroup import Inner, compose_aut, eta, inverse_aut, xi
from symquandle.iso import (
    are_isomorphic,
    conjugate_iso_witness,
    cycle_length_matrix,
    element_invariants,
    orbit_labels,
)
from symquandle.perm import CycleType, Permutation, parse_cycles
from symquandle.quandle import FiniteQuandle, check_axioms, general_alexander, is_homomorphism, trivial_quandle
from symquandle.symgroup import BudgetExceeded, class_representative, group_tables, partitions


def relabel(q: FiniteQuandle, sigma) -> FiniteQuandle:
    """The isomorphic copy with x renamed sigma[x]."""
    sigma = np.asarray(sigma)
    inv = np.argsort(sigma)
    table = sigma[q.table[inv[:, None], inv[None, :]]]
    return FiniteQuandle(table)


def pool():
    out = [trivial_quandle(3), alexander_quandle(3, 2), alexander_quandle(5, 2), alexander_quandle(5, 3)]
    out += [alexander_quandle(9, a) for a in (2, 4, 7)]
    out += [general_alexander(3, Inner(class_representative(t))) for t in partitions(3)]
    return out


def test_examples():
    q = general_alexander(4, Inner(parse_cycles("(1 2 3)", 4)))
    r = are_isomorphic(q, q)
    assert r.isomorphic and is_homomorphism(np.array(r.witness), q, q)
    assert are_isomorphic(alexander_quandle(9, 4), alexander_quandle(9, 7)).isomorphic
    three = general_alexander(3, Inner(parse_cycles("(1 2 3)", 3)))
    two = general_alexander(3, Inner(parse_cycles("(1 2)", 3)))
    assert not are_isomorphic(three, two).isomorphic


def test_size_mismatch_and_cap():
    assert not are_isomorphic(trivial_quandle(2), trivial_quandle(3))
    big = general_alexander(6, xi())
    with pytest.raises(BudgetExceeded):
        are_isomorphic(big, big)


def test_reflexive_and_symmetric_on_pool():
    qs = pool()
    for q in qs:
        assert are_isomorphic(q, q).isomorphic
    for a, b in itertools.combinations(qs, 2):
        assert are_isomorphic(a, b).isomorphic == are_isomorphic(b, a).isomorphic


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(9, 2), (8, 3), (7, 3), (12, 5), (10, 3)]), st.randoms(use_true_random=False))
def test_relabelled_copies_are_found(na, rng):
    n, a = na
    q = alexander_quandle(n, a)
    sigma = list(range(n))
    rng.shuffle(sigma)
    r = relabel(q, sigma)
    assert check_axioms(r).valid
    res = are_isomorphic(q, r)
    assert res.isomorphic and is_homomorphism(np.array(res.witness), q, r)


def test_s4_inner_classes_pairwise_non_isomorphic():
    qs = {t: general_alexander(4, Inner(class_representative(t))) for t in partitions(4)}
    pairs = list(itertools.combinations(qs, 2))
    assert len(pairs) == 10
    for s, t in pairs:
        assert not are_isomorphic(qs[s], qs[t]).isomorphic


def test_conjugate_witness_examples():
    pi = parse_cycles("(1 2 3)", 4)
    assert conjugate_iso_witness(4, pi, Permutation.identity(4)) == list(range(24))
    w = conjugate_iso_witness(4, pi, parse_cycles("(3 4)", 4))
    q = general_alexander(4, Inner(pi))
    r = general_alexander(4, Inner(parse_cycles("(1 2 4)", 4)))
    assert is_homomorphism(np.array(w), q, r)


def test_conjugate_pairs_isomorphic_up_to_5():
    rng = random.Random(11)
    for n in (3, 4, 5):
        tables = group_tables(n)
        for t in partitions(n):
            pi = class_representative(t)
            tau = tables.element(rng.randrange(tables.size))
            q = general_alexander(n, Inner(pi))
            r = general_alexander(n, Inner(tau * pi * tau.inverse()))
            res = are_isomorphic(q, r)
            assert res.isomorphic
            assert is_homomorphism(np.array(res.witness), q, r)
            assert is_homomorphism(np.array(conjugate_iso_witness(n, pi, tau)), q, r)


def test_invariants_are_isomorphism_invariant():
    q = alexander_quandle(12, 5)
    sigma = [3, 7, 1, 0, 11, 2, 9, 4, 6, 10, 8, 5]
    r = relabel(q, sigma)
    assert sorted(element_invariants(q)) == sorted(element_invariants(r))
    cl_q, cl_r = cycle_length_matrix(q), cycle_length_matrix(r)
    s = np.array(sigma)
    assert np.array_equal(cl_r[s[:, None], s[None, :]], cl_q)
    assert len(set(orbit_labels(q).tolist())) == len(set(orbit_labels(r).tolist()))


def test_node_limit():
    q = general_alexander(5, Inner(parse_cycles("(1 2)", 5)))
    r = general_alexander(5, Inner(parse_cycles("(2 3)", 5)))
    with pytest.raises(BudgetExceeded):
        are_isomorphic(q, r, node_limit=1)


@pytest.mark.slow
def test_merged_s6_pair_isomorphic():
    q = general_alexander(6, Inner(parse_cycles("(1 2 3 4 5 6)", 6)))
    r = general_alexander(6, Inner(parse_cycles("(1 2 3)(4 5)", 6)))
    res = are_isomorphic(q, r, cap=720)
    assert res.isomorphic and is_homomorphism(np.array(res.witness), q, r)


@pytest.mark.slow
def test_eta_quandles_not_isomorphic():
    q0 = general_alexander(6, eta(0))
    q1 = general_alexander(6, eta(1))
    assert not are_isomorphic(q0, q1, cap=720).isomorphic


@pytest.mark.slow
def test_s6_transposition_classes_merge():
    q = general_alexander(6, Inner(parse_cycles("(1 2)", 6)))
    r = general_alexander(6, Inner(parse_cycles("(1 2)(3 4)(5 6)", 6)))
    assert are_isomorphic(q, r, cap=720).isomorphic
