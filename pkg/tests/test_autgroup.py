import itertools
import random
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symquandle.autgroup import (
    OUTER_TAGS,
    AutClassLabel,
    Composite,
    Inner,
    apply,
    aut_class_label,
    aut_class_labels,
    aut_order,
    aut_power,
    aut_rank_map,
    aut_s6_conjugacy_classes,
    compose_aut,
    eta,
    fix_subgroup,
    identity_aut,
    inverse_aut,
    outer_order_histogram,
    parse_automorphism,
    xi,
    xi_image,
)
from symquandle.perm import CycleType, Permutation, parse_cycles
from symquandle.symgroup import centralizer_order, class_representative, group_tables, partitions

S6 = group_tables(6)


def p6(text):
    return parse_cycles(text, 6)


def s6_perms():
    return st.permutations(list(range(6))).map(Permutation)


def automorphisms():
    return st.tuples(s6_perms(), st.integers(0, 1)).map(lambda ge: Composite(*ge))


# -- xi ---------------------------------------------------------------------


def test_xi_examples():
    assert xi_image(p6("(1 2)")) == p6("(1 2)(3 4)(5 6)")
    assert xi_image(p6("(1 2 3 4 5 6)")) == p6("(2 6)(3 5 4)")
    assert compose_aut(xi(), xi()) == identity_aut(6)
    assert aut_order(xi()) == 2


def test_xi_is_homomorphism_on_all_generator_pairs():
    table = aut_rank_map(xi())
    # table-driven check over all of S_6 x S_6
    assert np.array_equal(table[S6.mult], S6.mult[table[:, None], table[None, :]])


def test_xi_swaps_classes():
    pairs = {(6,): (3, 2, 1), (3, 3): (3, 1, 1, 1), (2, 2, 2): (2, 1, 1, 1, 1)}
    swap = {**{CycleType(a): CycleType(b) for a, b in pairs.items()},
            **{CycleType(b): CycleType(a) for a, b in pairs.items()}}
    table = aut_rank_map(xi())
    for r in range(S6.size):
        t = S6.element(r).cycle_type()
        image = S6.element(int(table[r])).cycle_type()
        assert image == swap.get(t, t)


# -- apply and compose ------------------------------------------------------


def test_apply_examples():
    x = p6("(1 3 5)(2 4)")
    assert apply(Inner(Permutation.identity(6)), x) == x
    assert apply(Composite(Permutation.identity(6), 1), p6("(1 2)")) == p6("(1 2)(3 4)(5 6)")
    g = p6("(1 2 3)")
    assert apply(Inner(g), x) == g * x * g.inverse()
    with pytest.raises(ValueError):
        apply(Inner(g), Permutation.identity(5))


def test_compose_examples():
    p, q = p6("(1 2)"), p6("(2 3 4)")
    assert compose_aut(Inner(p), Inner(q)) == Inner(p * q)
    assert compose_aut(xi(), xi()) == Inner(Permutation.identity(6))
    assert compose_aut(xi(), Inner(q)) == Composite(xi_image(q), 1)


def test_outer_only_in_degree_6():
    with pytest.raises(ValueError):
        Composite(Permutation.identity(5), 1)


@settings(max_examples=60)
@given(automorphisms(), automorphisms(), s6_perms())
def test_compose_is_function_composition(a, b, x):
    assert apply(compose_aut(a, b), x) == apply(a, apply(b, x))


@settings(max_examples=60)
@given(automorphisms(), s6_perms())
def test_inverse_aut(a, x):
    assert compose_aut(a, inverse_aut(a)) == identity_aut(6)
    assert apply(inverse_aut(a), apply(a, x)) == x


def test_named_automorphisms_are_homomorphisms_sampled():
    rng = random.Random(7)
    for psi in (xi(), eta(0), eta(1)):
        table = aut_rank_map(psi)
        a = np.array([rng.randrange(720) for _ in range(10**4)])
        b = np.array([rng.randrange(720) for _ in range(10**4)])
        assert np.array_equal(table[S6.mult[a, b]], S6.mult[table[a], table[b]])


@pytest.mark.slow
def test_named_automorphisms_are_homomorphisms_exhaustive():
    for psi in (xi(), eta(0), eta(1)):
        table = aut_rank_map(psi)
        assert np.array_equal(table[S6.mult], S6.mult[table[:, None], table[None, :]])


def test_outer_times_xi_inverse_is_inner():
    for r in range(S6.size):
        psi = Composite(S6.element(r), 1)
        assert compose_aut(psi, inverse_aut(xi())).is_inner


# -- orders, fix subgroups, eta ---------------------------------------------


def test_aut_order_examples():
    assert aut_order(Inner(class_representative(CycleType((3, 2))))) == 6
    assert aut_order(eta(0)) == aut_order(eta(1)) == 8


def test_aut_order_matches_pointwise_order():
    for psi in (xi(), eta(0), eta(1), Composite(p6("(1 2 3 4 5)"), 1)):
        table = aut_rank_map(psi)
        m, power = 1, table.copy()
        while not np.array_equal(power, np.arange(720)):
            power = table[power]
            m += 1
        assert m == aut_order(psi)


def test_fix_subgroup_examples():
    assert len(fix_subgroup(Inner(p6("(1 2)(3 4)(5 6)")))) == 48
    assert len(fix_subgroup(xi())) == 20


def test_fix_inner_matches_centralizer_order():
    for n in range(3, 9):
        for t in partitions(n):
            if centralizer_order(t) > 10**4:
                continue
            assert len(fix_subgroup(Inner(class_representative(t)))) == centralizer_order(t)


def test_eta_fix_and_square():
    sigma = p6("(1 2 3 4)(5 6)")
    generated = {sigma**i for i in range(4)}
    for k in (0, 1):
        assert set(fix_subgroup(eta(k))) == generated
        # left-to-right notation (.)^sigma means x -> sigma^-1 x sigma, i.e. Inner(sigma^-1) here
        assert aut_power(eta(k), 2) == Inner(sigma.inverse())
        assert aut_power(eta(k), 2).g in generated
    assert aut_class_label(eta(0)).tag == "O(4,2)E"
    assert aut_class_label(eta(1)).tag == "O(4,2)O"
    with pytest.raises(ValueError):
        eta(2)


# -- labels and the thirteen classes ----------------------------------------


def test_labels():
    a = aut_class_label(Inner(p6("(1 2 3 4 5 6)")))
    b = aut_class_label(Inner(p6("(1 2 3)(4 5)")))
    assert a == b and str(a) == "6|3,2,1"
    assert aut_class_label(xi()).tag == "O(1^6)"
    assert [str(l) for l in aut_class_labels(6)][-5:] == list(OUTER_TAGS)
    assert len(aut_class_labels(6)) == 13
    assert len(aut_class_labels(7)) == 15
    for label in aut_class_labels(6):
        assert AutClassLabel.parse(str(label)) == label


def test_thirteen_classes():
    classes = aut_s6_conjugacy_classes()
    assert len(classes) == 13
    assert sum(c.size for c in classes) == 1440
    assert sum(1 for c in classes if c.label.is_inner) == 8
    for c in classes:
        assert aut_class_label(c.representative) == c.label


def test_lam_leep_outer_orders():
    hist = outer_order_histogram()
    assert set(hist) == {10, 8, 4, 2}
    assert sum(hist.values()) == 720


def test_inner_class_sizes_merge_under_xi():
    sizes = {str(c.label): c.size for c in aut_s6_conjugacy_classes()}
    assert sizes["6|3,2,1"] == 120 + 120
    assert sizes["2^3|2,1^4"] == 15 + 15
    assert sizes["1^6"] == 1


def test_parse_automorphism():
    assert parse_automorphism("xi", 6) == xi()
    assert parse_automorphism("eta0", 6) == eta(0)
    assert parse_automorphism("eta1", 6) == eta(1)
    assert parse_automorphism("inner:(1 2 3)", 5) == Inner(parse_cycles("(1 2 3)", 5))
    assert parse_automorphism("outer:(2 5 6 4 3)", 6) == Composite(p6("(2 5 6 4 3)"), 1)
    for bad in ["outer:(1 2)", "wat", "inner:(1 9)"]:
        with pytest.raises(ValueError):
            parse_automorphism(bad, 5)
