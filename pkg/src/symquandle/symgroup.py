"""Structure of S_n and A_n: partitions, ranking, centralizers, group tables."""

from __future__ import annotations

import itertools
import math
from collections import Counter, defaultdict
from functools import lru_cache
from typing import Iterator

import numpy as np

from .perm import CycleType, Parity, Permutation

DEFAULT_ENUMERATION_CAP = math.factorial(10)


class BudgetExceeded(RuntimeError):
    """Raised instead of partially enumerating something larger than allowed."""

    def __init__(self, what: str, needed: int, budget: int):
        super().__init__(f"{what} needs {needed} elements, budget is {budget}")
        self.what = what
        self.needed = needed
        self.budget = budget


def partitions(n: int) -> list[CycleType]:
    """All partitions of n in reverse-lexicographic order, e.g. (3), (2,1), (1,1,1)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return [CycleType(p) for p in _partitions(n, n)]


@lru_cache(maxsize=None)
def _partitions(n: int, largest: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    out = []
    for k in range(min(n, largest), 0, -1):
        out.extend((k,) + rest for rest in _partitions(n - k, k))
    return tuple(out)


def class_representative(t: CycleType) -> Permutation:
    """(0 1 .. l1-1)(l1 .. l1+l2-1)... filling cycles left to right."""
    cycles = []
    start = 0
    for length in t.parts:
        cycles.append(range(start, start + length))
        start += length
    return Permutation.from_cycles(t.n, cycles)


def centralizer_order(t: CycleType) -> int:
    """|C_{S_n}(pi)| = prod_i i^{a_i} a_i! for pi of cycle type t."""
    out = 1
    for i, a in t.multiplicities.items():
        out *= i**a * math.factorial(a)
    return out


def class_size(t: CycleType) -> int:
    return math.factorial(t.n) // centralizer_order(t)


def centralizer_elements(pi: Permutation, budget: int = 10**6) -> list[Permutation]:
    """Every element of C_{S_n}(pi), built as a product of wreath-type factors.

    For each cycle length i the a_i cycles of that length may be permuted
    among themselves and each may be rotated independently. Raises
    BudgetExceeded rather than enumerating more than ``budget`` elements.
    """
    t = pi.cycle_type()
    size = centralizer_order(t)
    if size > budget:
        raise BudgetExceeded(f"centralizer of shape {t}", size, budget)

    by_length: dict[int, list[tuple[int, ...]]] = defaultdict(list)
    for cycle in pi.cycles(include_fixed=True):
        by_length[len(cycle)].append(cycle)

    # each factor: list of partial image maps (lists of (point, image) pairs)
    factors = []
    for length in sorted(by_length):
        cycles = by_length[length]
        a = len(cycles)
        options = []
        for sigma in itertools.permutations(range(a)):
            for rotations in itertools.product(range(length), repeat=a):
                pairs = []
                for j, cycle in enumerate(cycles):
                    target = cycles[sigma[j]]
                    r = rotations[j]
                    for k, point in enumerate(cycle):
                        pairs.append((point, target[(k + r) % length]))
                options.append(pairs)
        factors.append(options)

    n = pi.degree
    out = []
    for choice in itertools.product(*factors):
        images = [0] * n
        for pairs in choice:
            for point, image in pairs:
                images[point] = image
        out.append(Permutation(images, check=False))
    return out


def _divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


def _merge_types(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(sorted(a + b, reverse=True))


def _convolve(left: dict, right: dict) -> dict:
    out: dict[tuple[int, ...], int] = defaultdict(int)
    for ta, ca in left.items():
        for tb, cb in right.items():
            out[_merge_types(ta, tb)] += ca * cb
    return out


@lru_cache(maxsize=None)
def _wreath_distribution(i: int, a: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    """Cycle-type counts of C_i wr S_a acting on i*a points.

    A cycle of length l in the block permutation whose rotations add up to
    rho (mod i) becomes d = gcd(rho, i) cycles of length l*i/d; there are
    phi(i/d) * i^(l-1) rotation choices giving each d.
    """
    divisors = _divisors(i)
    totals: dict[tuple[int, ...], int] = defaultdict(int)
    for mu in _partitions(a, a):
        weight = math.factorial(a) // centralizer_order(CycleType(mu))
        dist: dict[tuple[int, ...], int] = {(): weight}
        for length in mu:
            options = {
                (length * i // d,) * d: _totient(i // d) * i ** (length - 1)
                for d in divisors
            }
            dist = _convolve(dist, options)
        for key, count in dist.items():
            totals[key] += count
    return tuple(sorted(totals.items()))


@lru_cache(maxsize=None)
def _totient(m: int) -> int:
    return sum(1 for k in range(1, m + 1) if math.gcd(k, m) == 1)


@lru_cache(maxsize=None)
def _class_distribution(parts: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], int], ...]:
    dist: dict[tuple[int, ...], int] = {(): 1}
    for i, a in CycleType(parts).multiplicities.items():
        dist = _convolve(dist, dict(_wreath_distribution(i, a)))
    return tuple(sorted(dist.items()))


def centralizer_class_distribution(t: CycleType) -> dict[CycleType, int]:
    """Number of elements of each cycle type inside C_{S_n}(pi), pi of shape t.

    Computed from the wreath-product cycle index; no element is enumerated.
    """
    return {CycleType(k): c for k, c in _class_distribution(t.parts)}


# -- ranking and enumeration ------------------------------------------------


class ElementIndexer:
    """Lehmer-code ranking of S_n; rank order equals lexicographic image order."""

    def __init__(self, n: int):
        self.n = n
        self.size = math.factorial(n)

    def rank(self, p: Permutation) -> int:
        images = p.images
        n = self.n
        r = 0
        for i in range(n):
            smaller = sum(1 for j in range(i + 1, n) if images[j] < images[i])
            r += smaller * math.factorial(n - 1 - i)
        return r

    def unrank(self, r: int) -> Permutation:
        if not 0 <= r < self.size:
            raise ValueError(f"rank {r} out of range for S_{self.n}")
        pool = list(range(self.n))
        images = []
        for i in range(self.n - 1, -1, -1):
            q, r = divmod(r, math.factorial(i))
            images.append(pool.pop(q))
        return Permutation(images, check=False)


def _check_cap(what: str, size: int, cap: int) -> None:
    if size > cap:
        raise BudgetExceeded(what, size, cap)


def enumerate_group(n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> Iterator[Permutation]:
    """All of S_n in rank order."""
    _check_cap(f"S_{n}", math.factorial(n), cap)
    return (Permutation(images, check=False) for images in itertools.permutations(range(n)))


def enumerate_alternating(n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> Iterator[Permutation]:
    """All of A_n, in the rank order inherited from S_n."""
    _check_cap(f"A_{n}", max(1, math.factorial(n) // 2), cap)
    return (p for p in enumerate_group(n, cap=math.factorial(n)) if p.parity() is Parity.EVEN)


def centralizer_of_alternating(n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> list[Permutation]:
    """All x in S_n commuting with every element of A_n (brute force)."""
    _check_cap(f"S_{n}", math.factorial(n), cap)
    generators = alternating_generators(n)
    return [
        x for x in enumerate_group(n, cap) if all(x * g == g * x for g in generators)
    ]


def alternating_generators(n: int) -> list[Permutation]:
    """The 3-cycles (0 1 j), j >= 2, which generate A_n."""
    return [Permutation.from_cycles(n, [(0, 1, j)]) for j in range(2, n)]


# -- dense tables -----------------------------------------------------------


class GroupTables:
    """Dense numpy tables for S_n indexed by ElementIndexer rank.

    ``mult[a, b]`` is the rank of a∘b, ``inv[a]`` the rank of a^-1.
    Memory is n!^2 entries, so this is meant for n <= 6 (7 with patience).
    """

    def __init__(self, n: int, cap: int = 720):
        size = math.factorial(n)
        _check_cap(f"dense tables for S_{n}", size, cap)
        self.n = n
        self.size = size
        self.elements = np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(size, n)
        self._weights = n ** np.arange(n - 1, -1, -1, dtype=np.int64)
        self._codes = self.elements @ self._weights
        composed = self.elements[:, self.elements]  # [a, b, i] = a(b(i))
        self.mult = self.rank_array(composed)
        identity = np.arange(n)
        self.identity = int(self.rank_array(identity))
        self.inv = np.argmax(self.mult == self.identity, axis=1)
        self.parity = np.array(
            [Permutation(row, check=False).parity() is Parity.ODD for row in self.elements],
            dtype=bool,
        )
        for arr in (self.elements, self.mult, self.inv, self.parity):
            arr.setflags(write=False)

    def rank_array(self, images: np.ndarray) -> np.ndarray:
        """Ranks of permutations given as an array whose last axis is the image list."""
        codes = np.asarray(images, dtype=np.int64) @ self._weights
        return np.searchsorted(self._codes, codes)

    def rank(self, p: Permutation) -> int:
        return int(self.rank_array(np.array(p.images)))

    def element(self, r: int) -> Permutation:
        return Permutation(self.elements[r].tolist(), check=False)

    def index_map(self, func) -> np.ndarray:
        """Tabulate a map S_n -> S_n given as a Python callable on Permutations."""
        images = np.array([func(self.element(r)).images for r in range(self.size)], dtype=np.int64)
        return self.rank_array(images)

    def even_ranks(self) -> np.ndarray:
        return np.flatnonzero(~self.parity)


@lru_cache(maxsize=8)
def group_tables(n: int, cap: int = 720) -> GroupTables:
    return GroupTables(n, cap=cap)


def cycle_type_counts(elements) -> Counter:
    """Counter of cycle types over an iterable of Permutations."""
    return Counter(p.cycle_type() for p in elements)
