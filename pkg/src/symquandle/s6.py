"""The groups A_n x|_psi C_m that realize inn(Q(S_n, psi)), and the S_6 separators.

An element (g, i) with g in A_n and i in Z/m is stored as the index
i * |A_n| + pos(g), where pos numbers the even permutations in rank order.
Multiplication is (g, i)(h, j) = (g psi^i(h), i + j).
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .autgroup import Automorphism, Inner, aut_order, aut_power, aut_rank_map, eta, identity_aut
from .perm import CycleType, Parity, Permutation, parse_cycles
from .symgroup import BudgetExceeded, class_representative, group_tables

SPECTRUM_CAP = 10**4


class SemiDirectGroup:
    def __init__(self, n: int, twist: Automorphism, m: int | None = None, cap: int = SPECTRUM_CAP):
        """A_n x| C_m twisted by ``twist``; m defaults to the order of the twist.

        Passing a larger m whose value is a multiple of ord(twist) is allowed;
        with the identity twist this gives the direct product A_n x C_m.
        """
        if twist.n != n:
            raise ValueError("twist degree does not match n")
        order_twist = aut_order(twist)
        m = order_twist if m is None else m
        if m % order_twist:
            raise ValueError(f"m = {m} is not a multiple of ord(twist) = {order_twist}")
        size = (math.factorial(n) // 2) * m
        if size > cap:
            raise BudgetExceeded(f"A_{n} x| C_{m}", size, cap)
        self.n = n
        self.m = m
        self.twist = twist
        self.size = size
        tables = group_tables(n)
        self._tables = tables
        self.alt = tables.even_ranks()  # S_n ranks of A_n, ascending
        self.alt_size = len(self.alt)
        pos = np.full(tables.size, -1, dtype=np.int64)
        pos[self.alt] = np.arange(self.alt_size)
        self._pos = pos
        self.alt_mult = pos[tables.mult[self.alt[:, None], self.alt[None, :]]]
        self.alt_inv = pos[tables.inv[self.alt]]
        # psi^i restricted to A_n, for i < m
        self.twist_maps = np.array(
            [pos[aut_rank_map(aut_power(twist, i))[self.alt]] for i in range(m)]
        )
        if (self.twist_maps < 0).any():
            raise AssertionError("twist does not preserve A_n")
        self.identity = self.encode(Permutation.identity(n), 0)
        self._mult = None

    # -- encoding --------------------------------------------------------

    def encode(self, g: Permutation, i: int) -> int:
        p = self._pos[self._tables.rank(g)]
        if p < 0:
            raise ValueError(f"{g} is not an even permutation")
        return int((i % self.m) * self.alt_size + p)

    def decode(self, x: int) -> tuple[Permutation, int]:
        i, p = divmod(int(x), self.alt_size)
        return self._tables.element(int(self.alt[p])), i

    # -- arithmetic ------------------------------------------------------

    def multiply(self, a: int, b: int) -> int:
        i, g = divmod(a, self.alt_size)
        j, h = divmod(b, self.alt_size)
        return ((i + j) % self.m) * self.alt_size + int(self.alt_mult[g, self.twist_maps[i][h]])

    def inverse(self, a: int) -> int:
        # (g, i)^-1 = (psi^-i(g^-1), -i)
        i, g = divmod(a, self.alt_size)
        back = (-i) % self.m
        return back * self.alt_size + int(self.twist_maps[back][self.alt_inv[g]])

    @property
    def mult_table(self) -> np.ndarray:
        """Full multiplication table, built on first use."""
        if self._mult is None:
            a_size, m = self.alt_size, self.m
            g = np.arange(a_size)
            table = np.empty((m, a_size, m, a_size), dtype=np.int32)
            for i in range(m):
                twisted = self.alt_mult[g[:, None], self.twist_maps[i][None, :]]  # [g, h]
                for j in range(m):
                    table[i, :, j, :] = ((i + j) % m) * a_size + twisted
            self._mult = table.reshape(self.size, self.size)
            self._mult.setflags(write=False)
        return self._mult

    def element_orders(self) -> np.ndarray:
        table = self.mult_table
        idx = np.arange(self.size)
        orders = np.zeros(self.size, dtype=np.int64)
        current = idx.copy()
        k = 1
        while True:
            hit = (current == self.identity) & (orders == 0)
            orders[hit] = k
            if orders.all():
                return orders
            current = table[current, idx]
            k += 1

    def centralizer_sizes(self) -> np.ndarray:
        table = self.mult_table
        return (table == table.T).sum(axis=1)

    def center_size(self) -> int:
        return int((self.centralizer_sizes() == self.size).sum())

    def fingerprint(self) -> tuple[int, tuple[tuple[int, int], ...]]:
        """(center size, element-order histogram)."""
        hist = Counter(self.element_orders().tolist())
        return self.center_size(), tuple(sorted(hist.items()))


def build(n: int, twist: Automorphism, cap: int = SPECTRUM_CAP) -> SemiDirectGroup:
    return SemiDirectGroup(n, twist, cap=cap)


def conjugate_sd(a: int, b: int, G: SemiDirectGroup) -> int:
    """b a b^-1 by the closed form (g, i)^(h, j) = (h psi^j(g) psi^i(h^-1), i)."""
    i, g = divmod(a, G.alt_size)
    j, h = divmod(b, G.alt_size)
    first = G.alt_mult[h, G.twist_maps[j][g]]
    second = G.twist_maps[i][G.alt_inv[h]]
    return i * G.alt_size + int(G.alt_mult[first, second])


def centralizer_size_spectrum(G: SemiDirectGroup) -> Counter:
    """Multiset of centralizer sizes |C_G(a)| over all a in G."""
    return Counter(G.centralizer_sizes().tolist())


def centralizer_size(G: SemiDirectGroup, a: int) -> int:
    return int(G.centralizer_sizes()[a])


def direct_vs_semidirect_check(n: int, t: CycleType) -> str:
    """'semidirect' when A_n x| C_m and A_n x C_m have different fingerprints."""
    if n not in (5, 6):
        raise ValueError("only n = 5 and n = 6 are materialized")
    pi = class_representative(t)
    twisted = build(n, Inner(pi))
    direct = SemiDirectGroup(n, identity_aut(n), m=twisted.m)
    differs = twisted.fingerprint() != direct.fingerprint()
    expected = t.parity is Parity.ODD
    if differs != expected:
        raise AssertionError(
            f"fingerprints {'differ' if differs else 'agree'} but {t} is {t.parity.value}"
        )
    return "semidirect" if differs else "direct"


# -- A_6 classes ------------------------------------------------------------

# representatives naming the seven classes of A_6; the 5-cycles split in two
_A6_CLASS_NAMES = ("e", "(1 2)(3 4)", "(1 2 3)", "(1 2 3)(4 5 6)", "(1 2 3 4)(5 6)", "(1 2 3 4 5)", "(1 2 3 4 6)")


def alternating_classes(n: int) -> list[np.ndarray]:
    """Conjugacy classes of A_n as arrays of S_n ranks, by orbit partition."""
    tables = group_tables(n)
    alt = tables.even_ranks()
    gens = [tables.rank(parse_cycles(f"(1 2 {j})", n)) for j in range(3, n + 1)]
    label = np.full(tables.size, -1, dtype=np.int64)
    classes = []
    for start in alt.tolist():
        if label[start] >= 0:
            continue
        orbit = [start]
        label[start] = len(classes)
        k = 0
        while k < len(orbit):
            x = orbit[k]
            for g in gens:
                y = int(tables.mult[tables.mult[g, x], tables.inv[g]])
                if label[y] < 0:
                    label[y] = len(classes)
                    orbit.append(y)
            k += 1
        classes.append(np.array(sorted(orbit)))
    return classes


def a6_classes() -> dict[str, np.ndarray]:
    """The seven A_6 classes keyed by a representative in cycle notation."""
    tables = group_tables(6)
    classes = alternating_classes(6)
    if len(classes) != 7:
        raise AssertionError(f"A_6 has {len(classes)} classes, expected 7")
    named = {}
    for name in _A6_CLASS_NAMES:
        r = tables.rank(parse_cycles(name, 6))
        (cls,) = [c for c in classes if r in c]
        named[name] = cls
    if len({id(c) for c in named.values()}) != 7:
        raise AssertionError("class representatives do not name seven distinct classes")
    return named


def eta_action_on_A6_classes(k: int) -> dict[str, str]:
    """The permutation of A_6 classes induced by eta_k."""
    named = a6_classes()
    images = aut_rank_map(eta(k))
    lookup = {}
    for name, cls in named.items():
        for r in cls.tolist():
            lookup[r] = name
    action = {}
    for name, cls in named.items():
        targets = {lookup[int(r)] for r in images[cls]}
        if len(targets) != 1:
            raise AssertionError(f"eta_{k} splits the class of {name}")
        action[name] = targets.pop()
    return action


# -- the O(4,2) separator ---------------------------------------------------

SPECTRUM_WITNESS = "(1 2 3 4 5)"
SPECTRUM_TARGET = 40


@dataclass
class SpectrumSeparation:
    spectrum_e: Counter
    spectrum_o: Counter
    witness_size: int

    @property
    def separated(self) -> bool:
        return self.spectrum_e != self.spectrum_o

    def to_json(self) -> dict:
        return {
            "spectrum_eta0": {str(k): v for k, v in sorted(self.spectrum_e.items())},
            "spectrum_eta1": {str(k): v for k, v in sorted(self.spectrum_o.items())},
            "witness": f"({SPECTRUM_WITNESS}, 0)",
            "witness_centralizer_size": self.witness_size,
            "eta0_has_40": SPECTRUM_TARGET in self.spectrum_e,
            "eta1_has_40": SPECTRUM_TARGET in self.spectrum_o,
            "separated": self.separated,
        }


_separation_cache: SpectrumSeparation | None = None


def eta_spectrum_separation() -> SpectrumSeparation:
    """Centralizer spectra of A_6 x|_{phi_k} C_8 for k = 0, 1."""
    global _separation_cache
    if _separation_cache is None:
        g0 = build(6, eta(0))
        g1 = build(6, eta(1))
        witness = g0.encode(parse_cycles(SPECTRUM_WITNESS, 6), 0)
        _separation_cache = SpectrumSeparation(
            centralizer_size_spectrum(g0),
            centralizer_size_spectrum(g1),
            centralizer_size(g0, witness),
        )
    return _separation_cache
