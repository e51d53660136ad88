"""Finite quandles stored as point-symmetry tables.

``table[x, y] = s_x(y)``: row x is the point symmetry at x. The binary
operation x * y = s_y(x) is only produced on request (``star_table``).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .autgroup import Automorphism, aut_rank_map
from .symgroup import BudgetExceeded, group_tables

DEFAULT_TABLE_CAP = 720
DEFAULT_CLOSURE_CAP = 10**5


class RowOrderMismatch(ValueError):
    """Rows of a supposedly homogeneous quandle have different orders."""


class InvalidTriplet(ValueError):
    pass


class FiniteQuandle:
    def __init__(self, table, meta: dict | None = None):
        table = np.array(table, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise ValueError(f"quandle table must be square, got shape {table.shape}")
        table.setflags(write=False)
        self.table = table
        self.meta = dict(meta or {})

    @property
    def size(self) -> int:
        return self.table.shape[0]

    def s(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def star_table(self) -> np.ndarray:
        """Table of the binary operation x * y = s_y(x)."""
        return self.table.T.copy()

    def __eq__(self, other):
        if not isinstance(other, FiniteQuandle):
            return NotImplemented
        return np.array_equal(self.table, other.table)

    def __repr__(self):
        return f"FiniteQuandle(size={self.size}, meta={self.meta})"


def trivial_quandle(size: int) -> FiniteQuandle:
    return FiniteQuandle(np.tile(np.arange(size), (size, 1)))


# -- axioms -----------------------------------------------------------------


@dataclass(frozen=True)
class AxiomReport:
    valid: bool
    axiom: str | None = None
    witness: tuple[int, ...] | None = None

    def __bool__(self):
        return self.valid

    def __str__(self):
        if self.valid:
            return "valid"
        return f"{self.axiom} fails at {self.witness}"


def check_axioms(q: FiniteQuandle) -> AxiomReport:
    """Check (Q1') s_x(x) = x, (Q2') rows are bijections, (Q3') s_x s_y = s_{s_x(y)} s_x."""
    t = q.table
    size = q.size
    if size and (t.min() < 0 or t.max() >= size):
        bad = np.argwhere((t < 0) | (t >= size))[0]
        return AxiomReport(False, "Q2'", tuple(int(v) for v in bad))
    diagonal = t[np.arange(size), np.arange(size)]
    bad = np.flatnonzero(diagonal != np.arange(size))
    if bad.size:
        return AxiomReport(False, "Q1'", (int(bad[0]),))
    sorted_rows = np.sort(t, axis=1)
    bad = np.flatnonzero((sorted_rows != np.arange(size)).any(axis=1))
    if bad.size:
        return AxiomReport(False, "Q2'", (int(bad[0]),))
    # equal rows give identical (Q3') equations, so one x per distinct row
    t = t.astype(np.int32)
    _, first = np.unique(t, axis=0, return_index=True)
    for x in np.sort(first).tolist():
        row = t[x]
        lhs = row[t]  # [y, z] -> s_x(s_y(z))
        rhs = t[row[:, None], row[None, :]]  # [y, z] -> s_{s_x(y)}(s_x(z))
        diff = np.argwhere(lhs != rhs)
        if diff.size:
            y, z = diff[0]
            return AxiomReport(False, "Q3'", (x, int(y), int(z)))
    return AxiomReport(True)


# -- constructions ----------------------------------------------------------


def _check_table_cap(size: int, cap: int) -> None:
    if size > cap:
        raise BudgetExceeded("quandle table", size, cap)


def general_alexander(n: int, psi: Automorphism, cap: int = DEFAULT_TABLE_CAP) -> FiniteQuandle:
    """Q(S_n, psi): s_g(h) = g psi(g^-1 h), elements indexed by rank."""
    if psi.n != n:
        raise ValueError(f"automorphism of S_{psi.n} used for S_{n}")
    _check_table_cap(math.factorial(n), cap)
    tables = group_tables(n)
    psi_map = aut_rank_map(psi)
    quotient = tables.mult[tables.inv]  # [g, h] -> g^-1 h
    table = tables.mult[np.arange(tables.size)[:, None], psi_map[quotient]]
    return FiniteQuandle(table, {"n": n, "automorphism": str(psi), "convention": "s-map"})


@dataclass
class QuandleTriplet:
    """A group (as a multiplication table), a subgroup K and an automorphism psi.

    ``mult[a, b]`` is the index of a*b; ``psi[a]`` the index of psi(a);
    ``subgroup`` lists element indices of K.
    """

    mult: np.ndarray
    subgroup: Sequence[int]
    psi: np.ndarray
    identity: int = 0
    inverse: np.ndarray = field(default=None)

    def __post_init__(self):
        self.mult = np.asarray(self.mult)
        self.psi = np.asarray(self.psi)
        if self.inverse is None:
            self.inverse = np.argmax(self.mult == self.identity, axis=1)
        self.subgroup = sorted(set(int(k) for k in self.subgroup))

    @property
    def order(self) -> int:
        return self.mult.shape[0]

    def validate(self) -> None:
        k = np.array(self.subgroup)
        members = set(self.subgroup)
        if self.identity not in members:
            raise InvalidTriplet("subgroup does not contain the identity")
        products = self.mult[k[:, None], k[None, :]]
        if not set(products.ravel().tolist()) <= members:
            raise InvalidTriplet("subgroup is not closed under multiplication")
        if not set(self.inverse[k].tolist()) <= members:
            raise InvalidTriplet("subgroup is not closed under inverses")
        moved = k[self.psi[k] != k]
        if moved.size:
            raise InvalidTriplet(f"K is not inside Fix(psi): psi moves element {int(moved[0])}")


def symmetric_triplet(n: int, psi: Automorphism, subgroup) -> QuandleTriplet:
    """The triplet (S_n, K, psi) with K given as Permutations."""
    tables = group_tables(n)
    return QuandleTriplet(
        mult=tables.mult,
        subgroup=[tables.rank(k) for k in subgroup],
        psi=aut_rank_map(psi),
        identity=tables.identity,
        inverse=tables.inv,
    )


def coset_quandle(triplet: QuandleTriplet, cap: int = DEFAULT_TABLE_CAP) -> FiniteQuandle:
    """Q(G, K, psi) on the left cosets gK: s_[g]([h]) = [g psi(g^-1 h)].

    Cosets are numbered by their smallest element. The table is built from
    the smallest representatives and recomputed from the largest ones; the
    two must agree (well-definedness).
    """
    triplet.validate()
    order = triplet.order
    k = np.array(triplet.subgroup)
    index = order // len(k)
    _check_table_cap(index, cap)
    members = triplet.mult[:, k]  # [g, j] -> g k_j
    low = members.min(axis=1)
    high = members.max(axis=1)
    reps_low = np.unique(low)
    coset_of = np.searchsorted(reps_low, low)
    reps_high = high[reps_low]

    def build(reps):
        quotient = triplet.mult[triplet.inverse[reps][:, None], reps[None, :]]
        values = triplet.mult[reps[:, None], triplet.psi[quotient]]
        return coset_of[values]

    table = build(reps_low)
    if not np.array_equal(table, build(reps_high)):
        raise InvalidTriplet("coset operation is not well defined")
    return FiniteQuandle(table, {"convention": "s-map", "cosets": index})


def _compose_rows(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Row-wise composition: out[x] = a[x] ∘ b[x]."""
    return np.take_along_axis(a, b, axis=1)


def power_quandle(q: FiniteQuandle, i: int) -> FiniteQuandle:
    """Q^(i): every point symmetry replaced by its i-fold composite."""
    if i < 1:
        raise ValueError("i must be >= 1")
    result = None
    base = q.table
    while i:
        if i & 1:
            result = base if result is None else _compose_rows(result, base)
        i >>= 1
        if i:
            base = _compose_rows(base, base)
    meta = dict(q.meta)
    return FiniteQuandle(result, meta)


def row_orders(q: FiniteQuandle, limit: int = 10**6) -> np.ndarray:
    size = q.size
    identity = np.arange(size)
    orders = np.zeros(size, dtype=np.int64)
    current = q.table
    k = 1
    while True:
        done = (current == identity).all(axis=1) & (orders == 0)
        orders[done] = k
        if (orders > 0).all():
            return orders
        k += 1
        if k > limit:
            raise RuntimeError("row order exceeds limit")
        current = _compose_rows(q.table, current)


def quandle_order(q: FiniteQuandle) -> int:
    orders = row_orders(q)
    distinct = np.unique(orders)
    if distinct.size != 1:
        raise RowOrderMismatch(f"rows have orders {distinct.tolist()}")
    return int(distinct[0])


def distinct_symmetry_count(q: FiniteQuandle) -> int:
    return int(np.unique(q.table, axis=0).shape[0])


def inner_group_elements(q: FiniteQuandle, cap: int = DEFAULT_CLOSURE_CAP) -> np.ndarray:
    """All elements of inn(Q) = <s_x> as rows of an array (breadth-first closure).

    Generators are taken greedily: a row is added only when it is not yet in
    the group generated by the earlier ones.
    """
    size = q.size
    dtype = np.int32
    identity = np.arange(size, dtype=dtype)
    rows = np.unique(q.table, axis=0).astype(dtype)
    generators: list[np.ndarray] = []
    elements = {identity.tobytes(): identity}
    for row in rows:
        if row.tobytes() in elements:
            continue
        generators.append(row)
        gens = np.array(generators)
        elements = {identity.tobytes(): identity}
        frontier = [identity]
        while frontier:
            nxt = []
            for elem in frontier:
                for prod in gens[:, elem]:
                    key = prod.tobytes()
                    if key not in elements:
                        elements[key] = prod
                        nxt.append(prod)
                        if len(elements) > cap:
                            raise BudgetExceeded("inner group closure", len(elements), cap)
            frontier = nxt
    return np.array(list(elements.values()))


def inner_group_order(q: FiniteQuandle, cap: int = DEFAULT_CLOSURE_CAP) -> int:
    return len(inner_group_elements(q, cap))


def left_translation(n: int, h_rank: int) -> np.ndarray:
    """L_h: x -> h x on ranks of S_n."""
    return group_tables(n).mult[h_rank].copy()


def is_homomorphism(f: np.ndarray, q: FiniteQuandle, r: FiniteQuandle) -> bool:
    """f ∘ s_x = s'_{f(x)} ∘ f for every x, checked on all pairs."""
    f = np.asarray(f)
    lhs = f[q.table]  # [x, y] -> f(s_x(y))
    rhs = r.table[f[:, None], f[None, :]]  # [x, y] -> s'_{f(x)}(f(y))
    return bool(np.array_equal(lhs, rhs))


# -- serialization ----------------------------------------------------------


def to_text(q: FiniteQuandle) -> str:
    lines = [str(q.size)]
    lines.extend(" ".join(str(v) for v in row) for row in q.table.tolist())
    return "\n".join(lines) + "\n"


def from_text(text: str) -> FiniteQuandle:
    lines = [line for line in text.strip().splitlines() if line.strip()]
    size = int(lines[0])
    rows = [[int(v) for v in line.split()] for line in lines[1:]]
    if len(rows) != size or any(len(r) != size for r in rows):
        raise ValueError(f"expected {size} rows of {size} entries")
    return FiniteQuandle(rows)


def to_json(q: FiniteQuandle, **meta) -> str:
    payload = {"convention": "s-map", **q.meta, **meta}
    payload["size"] = q.size
    payload["table"] = q.table.tolist()
    return json.dumps(payload)


def from_json(text: str) -> FiniteQuandle:
    payload = json.loads(text)
    if payload.get("convention", "s-map") != "s-map":
        raise ValueError(f"unsupported convention {payload['convention']!r}")
    meta = {k: v for k, v in payload.items() if k not in ("table", "size")}
    return FiniteQuandle(payload["table"], meta)


def load(path) -> FiniteQuandle:
    with open(path) as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return from_json(text)
    return from_text(text)
