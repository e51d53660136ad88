import itertools
import math
from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from symquandle.perm import CycleType, Parity, Permutation, from_cycles
from symquandle.symgroup import (
    BudgetExceeded,
    ElementIndexer,
    GroupTables,
    centralizer_class_distribution,
    centralizer_elements,
    centralizer_of_alternating,
    centralizer_order,
    class_representative,
    class_size,
    enumerate_alternating,
    enumerate_group,
    partitions,
)


def test_partition_counts():
    assert partitions(3) == [CycleType((3,)), CycleType((2, 1)), CycleType((1, 1, 1))]
    assert len(partitions(5)) == 7
    assert len(partitions(8)) == 22
    # OEIS A000041
    assert [len(partitions(n)) for n in range(1, 13)] == [1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]


def test_partitions_reverse_lexicographic_and_distinct():
    for n in range(1, 11):
        parts = [t.parts for t in partitions(n)]
        assert parts == sorted(parts, reverse=True)
        assert len(set(parts)) == len(parts)
        assert all(sum(p) == n for p in parts)


def test_class_representative_examples():
    assert class_representative(CycleType((1, 1, 1))) == Permutation.identity(3)
    assert class_representative(CycleType((3, 2))) == from_cycles(5, [[0, 1, 2], [3, 4]])
    assert class_representative(CycleType((2, 2, 2))) == from_cycles(6, [[0, 1], [2, 3], [4, 5]])
    for n in range(1, 9):
        for t in partitions(n):
            assert class_representative(t).cycle_type() == t


def test_centralizer_order_examples():
    assert centralizer_order(CycleType((4, 2, 2, 2))) == 192
    assert centralizer_order(CycleType((9, 3, 3))) == 162
    for n in range(1, 8):
        assert centralizer_order(CycleType((1,) * n)) == math.factorial(n)


def test_class_equation():
    for n in range(1, 11):
        assert sum(math.factorial(n) // centralizer_order(t) for t in partitions(n)) == math.factorial(n)
        assert sum(class_size(t) for t in partitions(n)) == math.factorial(n)


def test_centralizer_elements_examples():
    assert sorted(centralizer_elements(Permutation.identity(3))) == sorted(enumerate_group(3))
    pi = class_representative(CycleType((4, 2, 2, 2)))
    k = centralizer_elements(pi)
    assert len(k) == 192 and all(x * pi == pi * x for x in k)
    five = from_cycles(5, [[0, 1, 2, 3, 4]])
    assert set(centralizer_elements(five)) == {five**l for l in range(5)}


def test_centralizer_elements_all_shapes_up_to_8():
    for n in range(1, 9):
        for t in partitions(n):
            if centralizer_order(t) > 10**4:
                continue
            pi = class_representative(t)
            k = centralizer_elements(pi)
            assert len(k) == len(set(k)) == centralizer_order(t)
            assert all(x * pi == pi * x for x in k)


def test_centralizer_budget_refuses():
    with pytest.raises(BudgetExceeded) as err:
        centralizer_elements(Permutation.identity(6), budget=100)
    assert err.value.needed == 720 and err.value.budget == 100


def test_centralizer_class_distribution_matches_enumeration():
    for n in range(1, 8):
        for t in partitions(n):
            k = centralizer_elements(class_representative(t))
            assert centralizer_class_distribution(t) == Counter(p.cycle_type() for p in k)


def test_enumeration():
    assert len(list(enumerate_group(3))) == 6
    alt = list(enumerate_alternating(6))
    assert len(alt) == 360
    assert all(p.parity() is Parity.EVEN for p in alt)
    with pytest.raises(BudgetExceeded):
        enumerate_group(5, cap=100)


def test_enumeration_order_matches_indexer():
    idx = ElementIndexer(5)
    assert [idx.rank(p) for p in enumerate_group(5)] == list(range(120))


def test_rank_unrank_inverse_s7():
    idx = ElementIndexer(7)
    for r in range(idx.size):
        assert idx.rank(idx.unrank(r)) == r


@given(st.permutations(list(range(8))))
def test_unrank_rank_round_trip(images):
    idx = ElementIndexer(8)
    p = Permutation(images)
    assert idx.unrank(idx.rank(p)) == p


def test_centralizer_of_alternating():
    assert centralizer_of_alternating(5) == [Permutation.identity(5)]
    assert centralizer_of_alternating(6) == [Permutation.identity(6)]
    c3 = centralizer_of_alternating(3)
    assert set(c3) == set(enumerate_alternating(3))


def test_conjugate_iff_same_shape_bruteforce():
    for n in range(1, 6):
        group = list(enumerate_group(n))
        classes = {}
        for p in group:
            classes.setdefault(p.cycle_type(), set()).add(p)
        for a, b in itertools.product(group[:: max(1, len(group) // 12)], repeat=2):
            conj = any(h * a * h.inverse() == b for h in group)
            assert conj == (a.cycle_type() == b.cycle_type())


def test_group_tables_consistent():
    tables = GroupTables(4)
    idx = ElementIndexer(4)
    for a in range(24):
        pa = tables.element(a)
        assert idx.rank(pa) == a
        assert tables.inv[a] == idx.rank(pa.inverse())
        assert tables.parity[a] == (pa.parity() is Parity.ODD)
        for b in range(24):
            assert tables.mult[a, b] == idx.rank(pa * tables.element(b))
    assert len(tables.even_ranks()) == 12
    with pytest.raises(BudgetExceeded):
        GroupTables(7)
