"""Brute-force quandle isomorphism for small tables, by individualization-refinement.

Both quandles are colored jointly. A color starts as a per-element
invariant and is refined by the multisets of (color of a, color of s_a(x),
relation of a and x) over columns and rows until it is stable. Colors are
canonical functions of the structure, so an isomorphism preserves them.
When the coloring is not discrete, one element x of a smallest non-singleton
cell is matched with each candidate y of the same color in turn, the pair
gets a fresh color, and the refinement runs again.

Every s_z of the target is an automorphism. So is every element of inn.
Automorphisms fixing the images matched so far preserve the refined colors,
so only one candidate per orbit of that stabilizer is tried. When inn of the
target is small enough to list, its exact stabilizer is used. Otherwise the
group generated by the fixing rows s_z is used.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .autgroup import Inner
from .perm import Permutation, conjugate
from .quandle import FiniteQuandle, general_alexander, inner_group_elements, is_homomorphism
from .symgroup import BudgetExceeded, group_tables

DEFAULT_ISO_CAP = 200
SLOW_ISO_CAP = 720
DEFAULT_NODE_LIMIT = 10**6
INN_LIST_CAP = 5000


@dataclass
class IsoResult:
    isomorphic: bool
    witness: list[int] | None = None
    reason: str = ""

    def __bool__(self):
        return self.isomorphic


def cycle_length_matrix(q: FiniteQuandle) -> np.ndarray:
    """cl[a, x] = length of the cycle of s_a through x."""
    t = q.table
    size = q.size
    identity = np.arange(size)
    cl = np.zeros((size, size), dtype=np.int64)
    power = t
    k = 1
    while True:
        hit = (power == identity) & (cl == 0)
        cl[hit] = k
        if cl.all():
            return cl
        k += 1
        power = np.take_along_axis(t, power, axis=1)


def pair_relation(q: FiniteQuandle, cl: np.ndarray | None = None) -> np.ndarray:
    """2 * cl[a, x] + [s_a == s_x]; preserved entrywise by isomorphisms."""
    if cl is None:
        cl = cycle_length_matrix(q)
    _, row_id = np.unique(q.table, axis=0, return_inverse=True)
    row_id = row_id.ravel()
    return 2 * cl + (row_id[:, None] == row_id[None, :])


def orbit_labels(q: FiniteQuandle) -> np.ndarray:
    """Smallest element of the <s_x>-orbit of each element."""
    return _orbit_labels(q.table, q.size)


def _orbit_labels(rows: np.ndarray, size: int) -> np.ndarray:
    labels = np.arange(size)
    if rows.shape[0] == 0:
        return labels
    while True:
        nxt = np.minimum(labels, labels[rows].min(axis=0))
        if np.array_equal(nxt, labels):
            return labels
        labels = nxt


def element_invariants(q: FiniteQuandle, cl: np.ndarray | None = None) -> list[tuple]:
    """(row order, cycle-length multiset of the row, orbit size) per element."""
    if cl is None:
        cl = cycle_length_matrix(q)
    labels = orbit_labels(q)
    orbit_sizes = np.bincount(labels, minlength=q.size)[labels]
    out = []
    for x in range(q.size):
        lengths = np.sort(cl[x])
        order = int(np.lcm.reduce(lengths)) if lengths.size else 1
        out.append((order, tuple(lengths.tolist()), int(orbit_sizes[x])))
    return out


def _first_per_label(cands, labels):
    seen = set()
    out = []
    for y in cands:
        if labels[y] not in seen:
            seen.add(int(labels[y]))
            out.append(int(y))
    return out


class _Side:
    """One quandle with its pair relation recoded to small integers."""

    def __init__(self, table: np.ndarray, rel: np.ndarray, rel_width: int):
        self.table = table
        self.rel = rel
        self.rel_width = rel_width

    def signature(self, colors: np.ndarray, k: int) -> np.ndarray:
        t = self.table
        # column view of x: over a, (c[a], c[s_a(x)], rel[a, x])
        col = (colors[:, None] * k + colors[t]) * self.rel_width + self.rel
        # row view of x: over y, (c[y], c[s_x(y)], rel[x, y])
        row = (colors[None, :] * k + colors[t]) * self.rel_width + self.rel
        return np.hstack([colors[:, None], np.sort(col, axis=0).T, np.sort(row, axis=1)])


class _Search:
    def __init__(self, q, r, node_limit, inn_r=None):
        rel_q, rel_r = pair_relation(q), pair_relation(r)
        _, codes = np.unique(np.concatenate([rel_q.ravel(), rel_r.ravel()]), return_inverse=True)
        width = int(codes.max()) + 1
        size = q.size
        self.q = _Side(q.table, codes[: size * size].reshape(size, size), width)
        self.r = _Side(r.table, codes[size * size :].reshape(size, size), width)
        self.q_quandle, self.r_quandle = q, r
        self.size = size
        self.node_limit = node_limit
        self.inn_r = inn_r
        self.nodes = 0

    def refine(self, cq, cr):
        """Joint stable refinement; None when the color histograms differ."""
        size = self.size
        while True:
            k = int(max(cq.max(), cr.max())) + 1
            sig = np.vstack([self.q.signature(cq, k), self.r.signature(cr, k)])
            _, new = np.unique(sig, axis=0, return_inverse=True)
            new = new.ravel()
            nq, nr = new[:size], new[size:]
            count = int(new.max()) + 1
            if not np.array_equal(np.bincount(nq, minlength=count), np.bincount(nr, minlength=count)):
                return None
            if count == len(np.unique(np.concatenate([cq, cr]))):
                return nq, nr
            cq, cr = nq, nr

    def stabilizer_labels(self, matched):
        img = np.array(matched, dtype=np.int64)
        if self.inn_r is not None:
            stab = self.inn_r
            if img.size:
                stab = stab[(stab[:, img] == img[None, :]).all(axis=1)]
            return stab.min(axis=0)
        rows = self.r.table
        if img.size:
            rows = rows[(rows[:, img] == img[None, :]).all(axis=1)]
        return _orbit_labels(np.unique(rows, axis=0), self.size)

    def run(self, cq, cr, matched):
        self.nodes += 1
        if self.nodes > self.node_limit:
            raise BudgetExceeded("isomorphism search nodes", self.nodes, self.node_limit)
        refined = self.refine(cq, cr)
        if refined is None:
            return None
        cq, cr = refined
        counts = np.bincount(cq)
        if counts.max() == 1:
            where = np.empty(len(counts), dtype=np.int64)
            where[cr] = np.arange(self.size)
            f = where[cq]
            return f if is_homomorphism(f, self.q_quandle, self.r_quandle) else None
        cell = int(np.flatnonzero(counts == counts[counts > 1].min())[0])
        x = int(np.flatnonzero(cq == cell)[0])
        cands = np.flatnonzero(cr == cell)
        fresh = len(counts)
        for y in _first_per_label(cands, self.stabilizer_labels(matched)):
            cq2, cr2 = cq.copy(), cr.copy()
            cq2[x] = fresh
            cr2[y] = fresh
            found = self.run(cq2, cr2, matched + [y])
            if found is not None:
                return found
        return None


def are_isomorphic(
    q: FiniteQuandle,
    r: FiniteQuandle,
    cap: int = DEFAULT_ISO_CAP,
    node_limit: int = DEFAULT_NODE_LIMIT,
) -> IsoResult:
    if q.size != r.size:
        return IsoResult(False, reason="sizes differ")
    if q.size > cap:
        raise BudgetExceeded("isomorphism search", q.size, cap)
    inv_q = element_invariants(q)
    inv_r = element_invariants(r)
    if sorted(inv_q) != sorted(inv_r):
        return IsoResult(False, reason="element invariants differ")
    q_rows = np.unique(q.table, axis=0).shape[0]
    r_rows = np.unique(r.table, axis=0).shape[0]
    if q_rows != r_rows:
        return IsoResult(False, reason="distinct symmetry counts differ")
    identity = np.arange(q.size)
    if (q.table == identity).all() and (r.table == identity).all():
        return IsoResult(True, identity.tolist(), reason="both trivial")
    keys = {key: i for i, key in enumerate(sorted(set(inv_q)))}
    colors_q = np.array([keys[key] for key in inv_q], dtype=np.int64)
    colors_r = np.array([keys[key] for key in inv_r], dtype=np.int64)
    try:
        inn_r = inner_group_elements(r, cap=INN_LIST_CAP)
    except BudgetExceeded:
        inn_r = None
    search = _Search(q, r, node_limit, inn_r)
    found = search.run(colors_q, colors_r, [])
    if found is None:
        return IsoResult(False, reason=f"exhaustive search ({search.nodes} nodes)")
    witness = found.tolist()
    # re-verify independently of the search internals
    if sorted(witness) != list(range(q.size)) or not is_homomorphism(found, q, r):
        raise AssertionError("search produced an invalid witness")
    return IsoResult(True, witness, reason=f"witness found ({search.nodes} nodes)")


def conjugate_iso_witness(n: int, pi: Permutation, tau: Permutation) -> list[int]:
    """The bijection x -> tau x tau^-1 from Q(S_n, pi) to Q(S_n, pi^tau), verified."""
    tables = group_tables(n)
    witness = tables.index_map(lambda x: conjugate(x, tau))
    source = general_alexander(n, Inner(pi))
    target = general_alexander(n, Inner(conjugate(pi, tau)))
    assert is_homomorphism(witness, source, target), "conjugation witness failed"
    return witness.tolist()
