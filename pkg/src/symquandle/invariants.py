"""Quandle invariants of Q(S_n, psi) computed from cycle types, without building tables.

For an inner class with cycle type t the invariants are ord = lcm(t),
fix = |C(pi)|, the parity of pi (meaningful for n >= 5), the same data for
every power pi^i, and the double-coset count |K_alt \\ S_n / K| with
K = C(pi). The outer classes of S_6 are handled concretely through autgroup.

Double cosets are counted with Burnside's lemma: (h, k) fixes g under
g -> h g k^-1 exactly when k^g = h, so the fixed-point count is |C(h)| when h
and k share a cycle type and 0 otherwise.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

from .autgroup import (
    AutClassLabel,
    Automorphism,
    aut_class_label,
    aut_order,
    aut_power,
    class_representative_aut,
    fix_subgroup,
    inner_label,
)
from .perm import CycleType, Parity, Permutation, power_cycle_type
from .symgroup import (
    BudgetExceeded,
    centralizer_class_distribution,
    centralizer_elements,
    centralizer_order,
    class_representative,
)

DEFAULT_BUDGET = 10**6
DC_FULL_FLAG = "dc_full is diagnostic only (not proven invariant)"
DC_METHODS = ("symbolic", "enumerate")


@dataclass(frozen=True)
class InnDescriptor:
    """(n, m, semidirect) for inn(Q) = A_n x| C_m; semidirect is None when not applicable."""

    n: int
    m: int
    semidirect: bool | None

    @property
    def applicable(self) -> bool:
        return self.semidirect is not None

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "semidirect": self.semidirect}


def inn_descriptor(n: int, t: CycleType) -> InnDescriptor:
    """Odd pi gives A_n x| C_m not isomorphic to A_n x C_m; even pi gives the direct product.

    The dichotomy is only established for n >= 5; below that the flag is None.
    """
    if t.n != n:
        raise ValueError(f"{t} is not a partition of {n}")
    semidirect = None if n < 5 else t.parity is Parity.ODD
    return InnDescriptor(n, t.order, semidirect)


@dataclass(frozen=True)
class PowerTriple:
    ord: int
    fix: int
    parity: Parity | None

    def to_json(self) -> dict:
        return {"ord": self.ord, "fix": self.fix, "parity": _parity_json(self.parity)}


def _parity_json(p: Parity | None):
    return None if p is None else p.value


@lru_cache(maxsize=None)
def _inner_triple(parts: tuple[int, ...], d: int) -> PowerTriple:
    t = power_cycle_type(CycleType(parts), d)
    parity = t.parity if t.n >= 5 else None
    return PowerTriple(t.order, centralizer_order(t), parity)


@lru_cache(maxsize=None)
def _outer_triple(tag: str, d: int) -> PowerTriple:
    label = AutClassLabel("outer", (), tag)
    psi = aut_power(class_representative_aut(6, label), d)
    parity = psi.g.parity() if psi.is_inner else None
    return PowerTriple(aut_order(psi), len(fix_subgroup(psi)), parity)


def _divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


@dataclass
class InvariantProfile:
    n: int
    label: AutClassLabel
    ord: int
    fix_size: int
    parity: Parity | None
    inn: InnDescriptor
    dc_alt: int | None = None
    dc_full: int | None = None
    flags: list[str] = field(default_factory=list)

    def power_triple(self, i: int) -> PowerTriple:
        """(ord, fix, parity) of psi^i; only gcd(i, ord) matters."""
        d = math.gcd(i, self.ord)
        if self.label.kind == "outer":
            return _outer_triple(self.label.tag, d)
        return _inner_triple(self.label.shape.parts, d)

    def power_chain(self) -> tuple[PowerTriple, ...]:
        """Triples for i = 2, ..., ord - 1."""
        return tuple(self.power_triple(i) for i in range(2, self.ord))

    def power_divisor_chain(self) -> tuple[tuple[int, PowerTriple], ...]:
        """The distinct entries of power_chain, keyed by the divisors 1 < d < ord."""
        return tuple((d, self.power_triple(d)) for d in _divisors(self.ord) if 1 < d < self.ord)

    def to_json(self) -> dict:
        return {
            "label": str(self.label),
            "ord": self.ord,
            "fix": self.fix_size,
            "parity": _parity_json(self.parity),
            "inn": self.inn.to_json(),
            "powers": [{"i": d, **t.to_json()} for d, t in self.power_divisor_chain()],
            "dc_alt": self.dc_alt,
            "dc_full": self.dc_full,
            "flags": list(self.flags),
        }


def profile(
    n: int,
    label: AutClassLabel | CycleType,
    with_double_cosets: bool = False,
    budget: int = DEFAULT_BUDGET,
    dc_method: str = "symbolic",
) -> InvariantProfile:
    if n < 3:
        raise ValueError("profiles are defined for n >= 3")
    if isinstance(label, CycleType):
        label = inner_label(label)
    if label.kind == "outer":
        if n != 6:
            raise ValueError("outer classes exist only for n = 6")
        psi = class_representative_aut(6, label)
        m = aut_order(psi)
        return InvariantProfile(
            n=n,
            label=label,
            ord=m,
            fix_size=len(fix_subgroup(psi)),
            parity=None,
            inn=InnDescriptor(n, m, None),
        )
    t = label.shape
    if t.n != n:
        raise ValueError(f"{t} is not a partition of {n}")
    prof = InvariantProfile(
        n=n,
        label=label,
        ord=t.order,
        fix_size=centralizer_order(t),
        parity=t.parity if n >= 5 else None,
        inn=inn_descriptor(n, t),
    )
    if with_double_cosets:
        prof.dc_alt = dc_alt_invariant(n, t, budget, method=dc_method)
        prof.dc_full = dc_full_diagnostic(n, t, budget, method=dc_method)
        prof.flags.append(DC_FULL_FLAG)
    return prof


def profile_of(psi: Automorphism, **kwargs) -> InvariantProfile:
    return profile(psi.n, aut_class_label(psi), **kwargs)


# -- double cosets ----------------------------------------------------------


def _is_subgroup(elements: list[Permutation]) -> bool:
    members = set(elements)
    return all(a * b in members for a in elements for b in elements)


def burnside_count(h_types: Counter | dict, k_types: Counter | dict, h_size: int, k_size: int) -> int:
    """|H \\ S_n / K| from the cycle-type distributions of H and K."""
    total = 0
    for t, count in h_types.items():
        other = k_types.get(t, 0)
        if other:
            total += count * other * centralizer_order(t)
    quotient, remainder = divmod(total, h_size * k_size)
    if remainder:
        raise ArithmeticError("Burnside sum not divisible by |H||K|; inputs are not subgroups")
    return quotient


def double_coset_count(H: list[Permutation], K: list[Permutation], n: int, check: bool = False) -> int:
    """Number of double cosets H g K in S_n, by bucketing H and K by cycle type."""
    if any(p.degree != n for p in H) or any(p.degree != n for p in K):
        raise ValueError(f"all elements must have degree {n}")
    if check and not (_is_subgroup(H) and _is_subgroup(K)):
        raise ValueError("H and K must be subgroups")
    h_types = Counter(p.cycle_type() for p in H)
    k_types = Counter(p.cycle_type() for p in K)
    return burnside_count(h_types, k_types, len(H), len(K))


def _check_method(method: str) -> None:
    if method not in DC_METHODS:
        raise ValueError(f"unknown double-coset method {method!r}; expected one of {DC_METHODS}")


def _enumerated_centralizer(n: int, t: CycleType, budget: int) -> list[Permutation]:
    if t.n != n:
        raise ValueError(f"{t} is not a partition of {n}")
    return centralizer_elements(class_representative(t), budget=budget)


def dc_alt_invariant(n: int, t: CycleType, budget: int = DEFAULT_BUDGET, method: str = "symbolic") -> int:
    """|K_alt \\ S_n / K| for K = C(pi), K_alt = K ∩ A_n.

    ``enumerate`` lists K (BudgetExceeded above ``budget``); ``symbolic``
    reads the cycle-type distribution of K off its wreath-product structure
    and needs no budget.
    """
    _check_method(method)
    if method == "enumerate":
        k = _enumerated_centralizer(n, t, budget)
        k_alt = [p for p in k if p.parity() is Parity.EVEN]
        return double_coset_count(k_alt, k, n)
    if t.n != n:
        raise ValueError(f"{t} is not a partition of {n}")
    dist = centralizer_class_distribution(t)
    alt = {s: c for s, c in dist.items() if s.parity is Parity.EVEN}
    return burnside_count(alt, dist, sum(alt.values()), centralizer_order(t))


def dc_full_diagnostic(n: int, t: CycleType, budget: int = DEFAULT_BUDGET, method: str = "symbolic") -> int:
    """|K \\ S_n / K| for K = C(pi). Not known to be a quandle invariant."""
    _check_method(method)
    if method == "enumerate":
        k = _enumerated_centralizer(n, t, budget)
        return double_coset_count(k, k, n)
    if t.n != n:
        raise ValueError(f"{t} is not a partition of {n}")
    dist = centralizer_class_distribution(t)
    size = centralizer_order(t)
    return burnside_count(dist, dist, size, size)


__all__ = [
    "BudgetExceeded",
    "DC_FULL_FLAG",
    "InnDescriptor",
    "InvariantProfile",
    "PowerTriple",
    "burnside_count",
    "dc_alt_invariant",
    "dc_full_diagnostic",
    "double_coset_count",
    "inn_descriptor",
    "profile",
    "profile_of",
]
