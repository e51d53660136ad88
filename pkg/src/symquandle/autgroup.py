"""Automorphisms of S_n: inner ones for every n, plus the outer automorphism xi of S_6.

Every automorphism is kept in the normal form x -> g * xi^eps(x) * g^-1
(``epsilon`` is 0 unless n == 6). Since Z(S_n) is trivial for n >= 3 the
pair (g, epsilon) determines the automorphism, so equality is structural.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .perm import CycleType, Parity, Permutation, compose, conjugate, parse_cycles
from .symgroup import centralizer_elements, class_representative, group_tables, partitions

# images of the adjacent transpositions (1 2), (2 3), ..., (5 6) under xi
_XI_GENERATOR_IMAGES = (
    "(1 2)(3 4)(5 6)",
    "(1 6)(2 4)(3 5)",
    "(1 2)(3 6)(4 5)",
    "(1 6)(2 5)(3 4)",
    "(1 2)(3 5)(4 6)",
)

# the conjugating elements named for eta_0 and eta_1, 1-based cycle notation
_ETA_CONJUGATORS = ("(2 5 6 4 3)", "(1 5 6 4)")

MERGED_S6_SHAPES = (
    (CycleType((6,)), CycleType((3, 2, 1))),
    (CycleType((3, 3)), CycleType((3, 1, 1, 1))),
    (CycleType((2, 2, 2)), CycleType((2, 1, 1, 1, 1))),
)

OUTER_TAGS = ("O(5,1)", "O(4,2)E", "O(4,2)O", "O(2^2,1^2)", "O(1^6)")


@dataclass(frozen=True)
class Automorphism:
    n: int
    g: Permutation
    epsilon: int = 0

    def __post_init__(self):
        if self.g.degree != self.n:
            raise ValueError(f"conjugator has degree {self.g.degree}, expected {self.n}")
        if self.epsilon not in (0, 1):
            raise ValueError("epsilon must be 0 or 1")
        if self.epsilon == 1 and self.n != 6:
            raise ValueError("outer automorphisms exist only for n = 6")

    @property
    def is_inner(self) -> bool:
        return self.epsilon == 0

    def __call__(self, x: Permutation) -> Permutation:
        return apply(self, x)

    def __mul__(self, other: "Automorphism") -> "Automorphism":
        return compose_aut(self, other)

    def __pow__(self, k: int) -> "Automorphism":
        return aut_power(self, k)

    def __str__(self):
        if self.is_inner:
            return f"inner:{self.g.cycle_string()}"
        return f"outer:{self.g.cycle_string()}"


def Inner(pi: Permutation) -> Automorphism:
    return Automorphism(pi.degree, pi, 0)


def Composite(g: Permutation, epsilon: int) -> Automorphism:
    return Automorphism(g.degree, g, epsilon)


def identity_aut(n: int) -> Automorphism:
    return Inner(Permutation.identity(n))


def _bubble_word(x: Permutation) -> list[int]:
    """Indices j of adjacent transpositions s_j = (j j+1) with x = s_{jk} ... s_{j1}.

    Bubble-sorting the image list swaps positions j, j+1, which is x -> x∘s_j,
    so the recorded swaps reduce x to the identity in that order.
    """
    images = list(x.images)
    word = []
    n = len(images)
    changed = True
    while changed:
        changed = False
        for j in range(n - 1):
            if images[j] > images[j + 1]:
                images[j], images[j + 1] = images[j + 1], images[j]
                word.append(j)
                changed = True
    return word


@lru_cache(maxsize=1)
def xi_table() -> np.ndarray:
    """Rank table of xi on all 720 elements of S_6 (read-only)."""
    tables = group_tables(6)
    generator_images = [parse_cycles(c, 6) for c in _XI_GENERATOR_IMAGES]
    out = np.empty(tables.size, dtype=np.int64)
    for r in range(tables.size):
        image = Permutation.identity(6)
        for j in _bubble_word(tables.element(r)):
            image = compose(generator_images[j], image)
        out[r] = tables.rank(image)
    out.setflags(write=False)
    return out


def xi_image(x: Permutation) -> Permutation:
    if x.degree != 6:
        raise ValueError("xi is defined on S_6 only")
    tables = group_tables(6)
    return tables.element(int(xi_table()[tables.rank(x)]))


def xi() -> Automorphism:
    return Composite(Permutation.identity(6), 1)


def eta(k: int) -> Automorphism:
    """The representatives eta_0 (class O(4,2)E) and eta_1 (class O(4,2)O).

    The named conjugators c_0 = (2 5 6 4 3), c_1 = (1 5 6 4) are read with
    left-to-right products, where conjugation by c is x -> c^-1 x c; in this
    module's right-first convention that is Composite(c^-1, 1). With this
    reading Fix(eta_k) = <(1 2 3 4)(5 6)>.
    """
    if k not in (0, 1):
        raise ValueError("k must be 0 or 1")
    return Composite(parse_cycles(_ETA_CONJUGATORS[k], 6).inverse(), 1)


def apply(psi: Automorphism, x: Permutation) -> Permutation:
    if x.degree != psi.n:
        raise ValueError(f"degree mismatch: {x.degree} vs {psi.n}")
    if psi.epsilon:
        x = xi_image(x)
    return conjugate(x, psi.g)


def compose_aut(a: Automorphism, b: Automorphism) -> Automorphism:
    """a∘b in normal form: (g1, e1)∘(g2, e2) = (g1 * xi^e1(g2), e1 + e2 mod 2)."""
    if a.n != b.n:
        raise ValueError(f"degree mismatch: {a.n} vs {b.n}")
    g2 = xi_image(b.g) if a.epsilon else b.g
    return Automorphism(a.n, compose(a.g, g2), (a.epsilon + b.epsilon) % 2)


def inverse_aut(a: Automorphism) -> Automorphism:
    if a.epsilon == 0:
        return Inner(a.g.inverse())
    # (g, 1)∘(h, 1) = (g * xi(h), 0) = id  =>  h = xi(g^-1), using xi∘xi = id
    return Composite(xi_image(a.g.inverse()), 1)


def aut_power(a: Automorphism, k: int) -> Automorphism:
    if k < 0:
        return aut_power(inverse_aut(a), -k)
    result = identity_aut(a.n)
    base = a
    while k:
        if k & 1:
            result = compose_aut(result, base)
        base = compose_aut(base, base)
        k >>= 1
    return result


def is_identity_aut(a: Automorphism) -> bool:
    return a.epsilon == 0 and a.g.is_identity()


def aut_order(psi: Automorphism) -> int:
    if psi.epsilon == 0:
        return psi.g.order()
    m, power = 1, psi
    while not is_identity_aut(power):
        power = compose_aut(psi, power)
        m += 1
    return m


def fix_subgroup(psi: Automorphism, budget: int = 10**6) -> list[Permutation]:
    """Fix(psi, S_n); the centralizer of g for inner psi, a scan of S_6 otherwise."""
    if psi.epsilon == 0:
        return centralizer_elements(psi.g, budget=budget)
    tables = group_tables(6)
    images = aut_rank_map(psi)
    return [tables.element(r) for r in np.flatnonzero(images == np.arange(tables.size))]


def aut_rank_map(psi: Automorphism) -> np.ndarray:
    """psi tabulated on ranks of S_n (n <= 6)."""
    tables = group_tables(psi.n)
    g = tables.rank(psi.g)
    base = xi_table() if psi.epsilon else np.arange(tables.size)
    return tables.mult[tables.mult[g, base], tables.inv[g]]


# -- class labels -----------------------------------------------------------


@dataclass(frozen=True)
class AutClassLabel:
    """Label of a conjugacy class of Aut(S_n).

    kind is "inner" (one cycle type), "merged" (two S_6 cycle types fused by
    xi) or "outer" (S_6 only, tag from OUTER_TAGS).
    """

    kind: str
    shapes: tuple[CycleType, ...] = ()
    tag: str | None = None

    @property
    def shape(self) -> CycleType | None:
        """The primary cycle type of an inner or merged label."""
        return self.shapes[0] if self.shapes else None

    @property
    def is_inner(self) -> bool:
        return self.kind in ("inner", "merged")

    def __str__(self):
        if self.kind == "outer":
            return self.tag
        return "|".join(str(t) for t in self.shapes)

    @classmethod
    def parse(cls, text: str) -> "AutClassLabel":
        text = text.strip()
        if text in OUTER_TAGS:
            return cls("outer", (), text)
        shapes = tuple(CycleType.parse(s) for s in text.split("|"))
        if len(shapes) == 2:
            return cls("merged", shapes)
        return cls("inner", shapes)

    def __lt__(self, other):
        return str(self) < str(other)


def inner_label(t: CycleType) -> AutClassLabel:
    if t.n == 6:
        for pair in MERGED_S6_SHAPES:
            if t in pair:
                return AutClassLabel("merged", pair)
    return AutClassLabel("inner", (t,))


def aut_class_labels(n: int) -> list[AutClassLabel]:
    """All class labels of Aut(S_n) in report order."""
    if n != 6:
        return [AutClassLabel("inner", (t,)) for t in partitions(n)]
    seen = []
    for t in partitions(6):
        label = inner_label(t)
        if label not in seen:
            seen.append(label)
    return seen + [AutClassLabel("outer", (), tag) for tag in OUTER_TAGS]


def aut_class_label(psi: Automorphism) -> AutClassLabel:
    if psi.n < 3:
        raise ValueError("class labels are defined for n >= 3")
    if psi.epsilon == 0:
        return inner_label(psi.g.cycle_type())
    square = compose_aut(psi, psi)
    assert square.epsilon == 0
    shape = square.g.cycle_type()
    parts = shape.parts
    if parts == (5, 1):
        return AutClassLabel("outer", (), "O(5,1)")
    if parts == (4, 2):
        tag = "O(4,2)E" if psi.g.parity() is Parity.EVEN else "O(4,2)O"
        return AutClassLabel("outer", (), tag)
    if parts == (2, 2, 1, 1):
        return AutClassLabel("outer", (), "O(2^2,1^2)")
    if parts == (1,) * 6:
        return AutClassLabel("outer", (), "O(1^6)")
    raise AssertionError(f"outer automorphism with square of shape {shape}")


@dataclass(frozen=True)
class AutS6Class:
    label: AutClassLabel
    size: int
    representative: Automorphism


@lru_cache(maxsize=1)
def aut_s6_conjugacy_classes() -> tuple[AutS6Class, ...]:
    """Conjugacy classes of Aut(S_6) computed by brute force over all 1440 elements.

    Elements are encoded as 2*rank(g) + epsilon. Orbits of conjugation by a
    generating set are the conjugacy classes; each orbit must carry exactly
    one label and the labels must be pairwise distinct.
    """
    tables = group_tables(6)
    xt = xi_table()
    size = tables.size
    ranks = np.arange(size)
    g_all = np.repeat(ranks, 2)
    e_all = np.tile([0, 1], size)

    def compose_codes(g1, e1, g2, e2):
        g2_twisted = np.where(e1 == 1, xt[g2], g2)
        return tables.mult[g1, g2_twisted], (e1 + e2) % 2

    def inverse_codes(g, e):
        inv_g = tables.inv[g]
        return np.where(e == 1, xt[inv_g], inv_g), e

    generators = [
        (tables.rank(parse_cycles("(1 2)", 6)), 0),
        (tables.rank(parse_cycles("(1 2 3 4 5 6)", 6)), 0),
        (tables.identity, 1),
    ]
    parent = list(range(2 * size))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for cg, ce in generators:
        cg_arr = np.full(2 * size, cg)
        ce_arr = np.full(2 * size, ce)
        ig, ie = inverse_codes(cg_arr, ce_arr)
        lg, le = compose_codes(cg_arr, ce_arr, g_all, e_all)
        rg, re_ = compose_codes(lg, le, ig, ie)
        targets = 2 * rg + re_
        for a, b in enumerate(targets.tolist()):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)

    orbits: dict[int, list[int]] = {}
    for code in range(2 * size):
        orbits.setdefault(find(code), []).append(code)

    classes = []
    for members in orbits.values():
        labels = {
            aut_class_label(Composite(tables.element(c // 2), c % 2)) for c in members
        }
        if len(labels) != 1:
            raise AssertionError(f"conjugacy class carries several labels: {labels}")
        (label,) = labels
        classes.append((label, len(members), members[0]))
    if len({c[0] for c in classes}) != len(classes):
        raise AssertionError("two conjugacy classes share a label")

    order = {label: i for i, label in enumerate(aut_class_labels(6))}
    classes.sort(key=lambda c: order[c[0]])
    out = []
    for label, count, first in classes:
        rep = Composite(tables.element(first // 2), first % 2)
        if label.kind == "outer" and label.tag == "O(4,2)E":
            rep = eta(0)
        elif label.kind == "outer" and label.tag == "O(4,2)O":
            rep = eta(1)
        elif label.kind != "outer":
            rep = Inner(class_representative(label.shape))
        out.append(AutS6Class(label, count, rep))
    return tuple(out)


def class_representative_aut(n: int, label: AutClassLabel) -> Automorphism:
    """A fixed representative automorphism of the class with this label."""
    if label.kind != "outer":
        return Inner(class_representative(label.shape))
    if n != 6:
        raise ValueError("outer classes exist only for n = 6")
    for c in aut_s6_conjugacy_classes():
        if c.label == label:
            return c.representative
    raise KeyError(label)


def outer_order_histogram() -> Counter:
    """Orders of all 720 outer automorphisms of S_6."""
    tables = group_tables(6)
    return Counter(aut_order(Composite(tables.element(r), 1)) for r in range(tables.size))


def parse_automorphism(text: str, n: int) -> Automorphism:
    """Parse ``inner:(1 2 3)``, ``outer:(2 5 6 4 3)``, ``xi``, ``eta0``, ``eta1``."""
    text = text.strip()
    if text == "xi":
        return xi()
    if text in ("eta0", "eta1"):
        return eta(int(text[-1]))
    kind, sep, body = text.partition(":")
    if not sep or kind not in ("inner", "outer"):
        raise ValueError(f"cannot parse automorphism {text!r}")
    g = parse_cycles(body, n)
    return Composite(g, 1 if kind == "outer" else 0)
