"""Permutations of {0, ..., n-1} and their cycle types.

Points are 0-based internally. The text helpers ``parse_cycles`` and
``Permutation.cycle_string`` use 1-based cycle notation such as ``(1 2 3)(4 5)``.
Composition applies the right factor first: ``(p * q)(i) == p(q(i))``.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from enum import Enum
from functools import reduce
from typing import Iterable, Sequence

# text input larger than this is rejected rather than expanded
MAX_PARSE_DEGREE = 10**4


class Parity(str, Enum):
    EVEN = "even"
    ODD = "odd"

    def __xor__(self, other: "Parity") -> "Parity":
        return Parity.ODD if (self is Parity.ODD) != (other is Parity.ODD) else Parity.EVEN


def _lcm(values: Iterable[int]) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), values, 1)


class CycleType:
    """A partition of n, stored non-increasing with the 1s included."""

    __slots__ = ("parts",)

    def __init__(self, parts: Iterable[int]):
        parts = tuple(sorted((int(p) for p in parts), reverse=True))
        if not parts or parts[-1] < 1:
            raise ValueError(f"parts must be positive integers, got {parts}")
        object.__setattr__(self, "parts", parts)

    def __setattr__(self, name, value):
        raise AttributeError("CycleType is immutable")

    @classmethod
    def parse(cls, text: str) -> "CycleType":
        """Parse ``4,2^3`` style text (exponents expand to repeated parts)."""
        parts: list[int] = []
        degree = 0
        text = text.strip().strip("()")
        if not text:
            raise ValueError("empty partition")
        for token in text.split(","):
            token = token.strip()
            m = re.fullmatch(r"(\d+)(?:\^(\d+))?", token)
            if m is None:
                raise ValueError(f"bad partition token {token!r}")
            part, exp = int(m.group(1)), int(m.group(2) or 1)
            if part < 1 or exp < 1:
                raise ValueError(f"bad partition token {token!r}")
            degree += part * exp
            if degree > MAX_PARSE_DEGREE:
                raise ValueError(f"partition of more than {MAX_PARSE_DEGREE} points")
            parts.extend([part] * exp)
        return cls(parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def multiplicities(self) -> dict[int, int]:
        """Map from cycle length i to the number a_i of cycles of that length."""
        return dict(sorted(Counter(self.parts).items(), reverse=True))

    @property
    def order(self) -> int:
        return _lcm(self.parts)

    @property
    def parity(self) -> Parity:
        return Parity.ODD if sum(p - 1 for p in self.parts) % 2 else Parity.EVEN

    def power(self, i: int) -> "CycleType":
        return power_cycle_type(self, i)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, idx):
        return self.parts[idx]

    def __eq__(self, other):
        if isinstance(other, CycleType):
            return self.parts == other.parts
        if isinstance(other, tuple):
            return self.parts == other
        return NotImplemented

    def __lt__(self, other: "CycleType"):
        return self.parts < other.parts

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return f"CycleType({self.parts})"

    def __str__(self):
        # 4,2^3 style, matching the parse format
        return ",".join(
            str(i) if a == 1 else f"{i}^{a}" for i, a in self.multiplicities.items()
        )


class Permutation:
    """A bijection of {0, ..., n-1} stored as its image tuple."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int], check: bool = True):
        images = tuple(images)
        if check and sorted(images) != list(range(len(images))):
            raise ValueError(f"{images} is not a permutation of range({len(images)})")
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n), check=False)

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        images = list(range(n))
        seen: set[int] = set()
        for cycle in cycles:
            for point in cycle:
                if not 0 <= point < n:
                    raise ValueError(f"point {point} out of range for degree {n}")
                if point in seen:
                    raise ValueError(f"point {point} repeated in cycles")
                seen.add(point)
            for a, b in zip(cycle, tuple(cycle[1:]) + tuple(cycle[:1])):
                images[a] = b
        return cls(images, check=False)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __pow__(self, k: int) -> "Permutation":
        return self.power(k)

    def __eq__(self, other):
        if isinstance(other, Permutation):
            return self.images == other.images
        return NotImplemented

    def __lt__(self, other: "Permutation"):
        return self.images < other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Permutation({list(self.images)})"

    def __str__(self):
        return self.cycle_string()

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, x in enumerate(self.images):
            inv[x] = i
        return Permutation(inv, check=False)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        """Disjoint cycles, each starting at its smallest point, ordered by that point."""
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            cycle = [start]
            seen[start] = True
            j = self.images[start]
            while j != start:
                cycle.append(j)
                seen[j] = True
                j = self.images[j]
            if include_fixed or len(cycle) > 1:
                out.append(tuple(cycle))
        return out

    def cycle_type(self) -> CycleType:
        return CycleType(len(c) for c in self.cycles(include_fixed=True))

    def parity(self) -> Parity:
        return Parity.ODD if sum(len(c) - 1 for c in self.cycles()) % 2 else Parity.EVEN

    def order(self) -> int:
        return _lcm(len(c) for c in self.cycles())

    def power(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse().power(-k)
        images = list(range(len(self.images)))
        for cycle in self.cycles():
            length = len(cycle)
            for pos, point in enumerate(cycle):
                images[point] = cycle[(pos + k) % length]
        return Permutation(images, check=False)

    def cycle_string(self) -> str:
        """1-based cycle notation with fixed points omitted; ``e`` for the identity."""
        cycles = self.cycles()
        if not cycles:
            return "e"
        return "".join("(" + " ".join(str(p + 1) for p in c) + ")" for c in cycles)

    def oneline(self) -> str:
        """1-based one-line notation, e.g. ``[2 3 1]``."""
        return "[" + " ".join(str(x + 1) for x in self.images) + "]"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return p∘q, i.e. apply q first and then p."""
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} vs {q.degree}")
    pi = p.images
    return Permutation([pi[x] for x in q.images], check=False)


def inverse(p: Permutation) -> Permutation:
    return p.inverse()


def conjugate(g: Permutation, h: Permutation) -> Permutation:
    """Return g^h = h g h^-1."""
    if g.degree != h.degree:
        raise ValueError(f"degree mismatch: {g.degree} vs {h.degree}")
    # h g h^-1 sends h(i) to h(g(i))
    hi, gi = h.images, g.images
    images = [0] * len(gi)
    for i, x in enumerate(gi):
        images[hi[i]] = hi[x]
    return Permutation(images, check=False)


def cycle_type(p: Permutation) -> CycleType:
    return p.cycle_type()


def parity(p: Permutation) -> Parity:
    return p.parity()


def order(p: Permutation) -> int:
    return p.order()


def is_identity(p: Permutation) -> bool:
    return p.is_identity()


def from_cycles(n: int, cycles: Iterable[Sequence[int]]) -> Permutation:
    return Permutation.from_cycles(n, cycles)


def power_cycle_type(t: CycleType, i: int) -> CycleType:
    """Cycle type of p**i for any p of cycle type t.

    A cycle of length l splits into gcd(l, i) cycles of length l / gcd(l, i).
    """
    if i < 1:
        raise ValueError("power must be >= 1")
    parts: list[int] = []
    for length in t.parts:
        g = math.gcd(length, i)
        parts.extend([length // g] * g)
    return CycleType(parts)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, n: int) -> Permutation:
    """Parse 1-based cycle notation like ``(1 2 3)(4 5)``; ``e`` is the identity."""
    text = text.strip()
    if text in ("e", "()", ""):
        return Permutation.identity(n)
    if _CYCLE_RE.sub("", text).strip():
        raise ValueError(f"cannot parse cycle notation {text!r}")
    cycles = []
    for body in _CYCLE_RE.findall(text):
        tokens = body.replace(",", " ").split()
        if not tokens:
            continue
        try:
            cycles.append([int(tok) - 1 for tok in tokens])
        except ValueError:
            raise ValueError(f"cannot parse cycle {body!r}") from None
    return Permutation.from_cycles(n, cycles)
