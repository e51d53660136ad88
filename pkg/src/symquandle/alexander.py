"""Alexander quandles Q(C_n, a) on Z/n with s_x(y) = x + a(y - x)."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .quandle import FiniteQuandle


@dataclass(frozen=True)
class CyclicAutomorphism:
    """Multiplication by the unit a on Z/n."""

    n: int
    a: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if math.gcd(self.a, self.n) != 1:
            raise ValueError(f"{self.a} is not a unit mod {self.n}")

    def __call__(self, x: int) -> int:
        return (self.a * x) % self.n


def units(n: int) -> list[int]:
    if n == 1:
        return [0]
    return [a for a in range(1, n) if math.gcd(a, n) == 1]


def _check_unit(n: int, a: int) -> None:
    if math.gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit mod {n}")


def alexander_quandle(n: int, a: int) -> FiniteQuandle:
    _check_unit(n, a)
    x = np.arange(n)
    table = (x[:, None] + a * (x[None, :] - x[:, None])) % n
    return FiniteQuandle(table, {"n": n, "a": a % n, "convention": "s-map"})


def nelson_modulus(n: int, a: int) -> int:
    """N(n, a) = n / gcd(n, 1 - a), with 1 - a reduced mod n first."""
    return n // math.gcd(n, (1 - a) % n)


def nelson_equivalent(n: int, a: int, b: int) -> bool:
    """Nelson's criterion for Q(C_n, a) and Q(C_n, b) to be isomorphic."""
    _check_unit(n, a)
    _check_unit(n, b)
    big_n = nelson_modulus(n, a)
    return big_n == nelson_modulus(n, b) and (a - b) % big_n == 0


def classify_cyclic(n: int) -> list[list[int]]:
    """Units of Z/n grouped into isomorphism classes of their Alexander quandles."""
    if n < 2:
        raise ValueError("n must be >= 2")
    classes: list[list[int]] = []
    for a in units(n):
        for cls in classes:
            if nelson_equivalent(n, cls[0], a):
                cls.append(a)
                break
        else:
            classes.append([a])
    return classes
