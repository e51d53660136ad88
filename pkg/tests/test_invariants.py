import itertools
import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import naive_double_cosets
from symquandle.autgroup import AutClassLabel, aut_class_labels, class_representative_aut, eta
from symquandle.invariants import (
    DC_FULL_FLAG,
    burnside_count,
    dc_alt_invariant,
    dc_full_diagnostic,
    double_coset_count,
    inn_descriptor,
    profile,
    profile_of,
)
from symquandle.perm import CycleType, Parity, Permutation
from symquandle.quandle import distinct_symmetry_count, general_alexander, power_quandle, quandle_order
from symquandle.symgroup import (
    BudgetExceeded,
    centralizer_elements,
    centralizer_order,
    class_representative,
    enumerate_group,
    partitions,
)


def even(elements):
    return [p for p in elements if p.parity() is Parity.EVEN]


def test_double_coset_examples():
    n = 4
    e = [Permutation.identity(n)]
    whole = list(enumerate_group(n))
    assert double_coset_count(e, e, n) == 24
    assert double_coset_count(whole, whole, n) == 1
    k = centralizer_elements(class_representative(CycleType((4, 2, 2, 2))))
    assert double_coset_count(even(k), k, 10) == 240
    k = centralizer_elements(class_representative(CycleType((4, 2, 1, 1, 1, 1))))
    assert double_coset_count(even(k), k, 10) == 291


def test_burnside_matches_naive_orbits_all_centralizer_pairs():
    for n in range(2, 7):
        cents = {t: centralizer_elements(class_representative(t)) for t in partitions(n)}
        for s, t in itertools.product(cents, repeat=2):
            H, K = cents[s], cents[t]
            assert double_coset_count(H, K, n, check=True) == naive_double_cosets(H, K, n)
            assert double_coset_count(even(H), K, n) == naive_double_cosets(even(H), K, n)


def test_non_subgroup_rejected():
    n = 4
    bogus = [Permutation.identity(n), Permutation.from_cycles(n, [[0, 1, 2]])]
    with pytest.raises(ValueError):
        double_coset_count(bogus, bogus, n, check=True)
    with pytest.raises(ArithmeticError):
        burnside_count({CycleType((1, 1)): 1}, {CycleType((1, 1)): 1}, 3, 1)


def test_dc_examples():
    assert dc_alt_invariant(10, CycleType((4, 2, 2, 2))) == 240
    assert dc_alt_invariant(10, CycleType((4, 2, 1, 1, 1, 1))) == 291
    assert dc_alt_invariant(15, CycleType((9, 3, 3))) == 101_415_520
    assert dc_alt_invariant(15, CycleType((9, 3, 1, 1, 1))) == 101_415_520
    assert dc_full_diagnostic(15, CycleType((9, 3, 3))) == 50_716_744
    assert dc_full_diagnostic(15, CycleType((9, 3, 1, 1, 1))) == 55_008_600
    for n in range(2, 9):
        assert dc_full_diagnostic(n, CycleType((1,) * n)) == 1


def test_symbolic_and_enumerated_routes_agree():
    for n in range(3, 9):
        for t in partitions(n):
            if centralizer_order(t) > 5000:
                continue
            assert dc_alt_invariant(n, t, method="symbolic") == dc_alt_invariant(n, t, method="enumerate")
            assert dc_full_diagnostic(n, t, method="symbolic") == dc_full_diagnostic(n, t, method="enumerate")


def test_dc_budget_and_method_errors():
    with pytest.raises(BudgetExceeded):
        dc_alt_invariant(8, CycleType((1,) * 8), budget=1000, method="enumerate")
    with pytest.raises(ValueError):
        dc_alt_invariant(5, CycleType((5,)), method="gap")
    with pytest.raises(ValueError):
        dc_alt_invariant(6, CycleType((5,)))


def test_inn_descriptor():
    assert inn_descriptor(6, CycleType((4, 2))).semidirect is False
    assert inn_descriptor(6, CycleType((4, 1, 1))).semidirect is True
    a = inn_descriptor(8, CycleType((3, 3, 2)))
    b = inn_descriptor(8, CycleType((3, 2, 1, 1, 1)))
    assert a.semidirect and b.semidirect and (a.m, a.n) == (b.m, b.n) == (6, 8)
    assert not inn_descriptor(4, CycleType((2, 1, 1))).applicable


def test_profile_examples():
    p = profile(6, AutClassLabel.parse("2^3|2,1^4"))
    assert (p.ord, p.fix_size) == (2, 48)
    p = profile(6, AutClassLabel.parse("O(5,1)"))
    assert (p.ord, p.fix_size, p.parity) == (10, 5, None)
    p = profile(8, CycleType((5, 3)))
    assert (p.ord, p.fix_size) == (15, 15)
    with pytest.raises(ValueError):
        profile(2, CycleType((2,)))
    with pytest.raises(ValueError):
        profile(7, AutClassLabel.parse("O(5,1)"))


def test_profile_matches_materialized_quandles():
    for n in range(3, 7):
        for label in aut_class_labels(n):
            psi = class_representative_aut(n, label)
            q = general_alexander(n, psi)
            p = profile(n, label)
            assert p.ord == quandle_order(q)
            assert p.fix_size == math.factorial(n) // distinct_symmetry_count(q)
            for d, triple in p.power_divisor_chain():
                qd = power_quandle(q, d)
                assert triple.ord == quandle_order(qd)
                assert triple.fix == math.factorial(n) // distinct_symmetry_count(qd)


def test_power_chain_depends_on_gcd():
    for n in (7, 8, 12):
        for t in partitions(n):
            p = profile(n, t)
            for i in range(2, p.ord):
                assert p.power_triple(i) == p.power_triple(math.gcd(i, p.ord))
            assert len(p.power_chain()) == max(0, p.ord - 2)


def test_profile_of_eta():
    p = profile_of(eta(0))
    assert str(p.label) == "O(4,2)E" and p.ord == 8 and p.fix_size == 4


def test_profile_json():
    p = profile(15, CycleType((9, 3, 3)), with_double_cosets=True)
    data = json.loads(json.dumps(p.to_json()))
    assert set(data) == {"label", "ord", "fix", "parity", "inn", "powers", "dc_alt", "dc_full", "flags"}
    assert data["dc_alt"] == 101_415_520 and data["dc_full"] == 50_716_744
    assert DC_FULL_FLAG in data["flags"]
    assert data["inn"] == {"n": 15, "m": 9, "semidirect": False}
    assert [e["i"] for e in data["powers"]] == [3]


@settings(max_examples=40)
@given(st.integers(3, 12).flatmap(lambda n: st.sampled_from(partitions(n))))
def test_profile_invariants(t):
    p = profile(t.n, t)
    assert math.factorial(t.n) % p.fix_size == 0
    assert p.ord == math.lcm(*t.parts)
