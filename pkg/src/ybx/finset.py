"""Finite carriers {0..n-1}: endofunctions, operation tables, groups.

Every structure in the package lives on a carrier ``{0, ..., n-1}`` and is
stored as an integer numpy array. Arrays are made read-only on construction,
so instances can be shared freely.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

import numpy as np

from .errors import NotAGroup


def _frozen_array(data, ndim: int, name: str) -> np.ndarray:
    arr = np.array(data, dtype=np.int64)
    if arr.ndim != ndim:
        raise ValueError(f"{name} must be {ndim}-dimensional, got shape {arr.shape}")
    n = arr.shape[0]
    if n < 1:
        raise ValueError(f"{name} needs a non-empty carrier")
    if any(s != n for s in arr.shape):
        raise ValueError(f"{name} must be square, got shape {arr.shape}")
    if arr.size and (arr.min() < 0 or arr.max() >= n):
        bad = np.argwhere((arr < 0) | (arr >= n))[0]
        raise ValueError(f"{name} entry at {tuple(int(i) for i in bad)} out of range 0..{n - 1}")
    arr.setflags(write=False)
    return arr


class EndoMap:
    """A map f: X -> X stored as ``table[i] = f(i)``."""

    __slots__ = ("table",)

    def __init__(self, table):
        self.table = _frozen_array(table, 1, "EndoMap")

    @classmethod
    def from_function(cls, n: int, fn: Callable[[int], int]) -> "EndoMap":
        return cls([fn(i) for i in range(n)])

    @classmethod
    def identity(cls, n: int) -> "EndoMap":
        return cls(np.arange(n))

    @classmethod
    def constant(cls, n: int, k: int) -> "EndoMap":
        return cls(np.full(n, k))

    @property
    def n(self) -> int:
        return self.table.shape[0]

    def __call__(self, i: int) -> int:
        return int(self.table[i])

    def __eq__(self, other):
        return isinstance(other, EndoMap) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    def __repr__(self):
        return f"EndoMap({self.table.tolist()})"

    def is_bijective(self) -> bool:
        return len(np.unique(self.table)) == self.n

    def inverse(self) -> "EndoMap":
        if not self.is_bijective():
            raise ValueError("map is not bijective")
        inv = np.empty(self.n, dtype=np.int64)
        inv[self.table] = np.arange(self.n)
        return EndoMap(inv)

    def compose(self, other: "EndoMap") -> "EndoMap":
        """Return ``self ∘ other``."""
        return EndoMap(self.table[other.table])

    def __matmul__(self, other: "EndoMap") -> "EndoMap":
        return self.compose(other)


class OpTable:
    """A binary operation; ``table[a, b]`` is ``a ⋆ b`` (row = left operand)."""

    __slots__ = ("table",)

    def __init__(self, table):
        self.table = _frozen_array(table, 2, "OpTable")

    @classmethod
    def from_function(cls, n: int, fn: Callable[[int, int], int]) -> "OpTable":
        return cls([[fn(a, b) for b in range(n)] for a in range(n)])

    @property
    def n(self) -> int:
        return self.table.shape[0]

    def __call__(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def __eq__(self, other):
        return isinstance(other, OpTable) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    def __repr__(self):
        return f"OpTable({self.table.tolist()})"

    def left_translation(self, a: int) -> EndoMap:
        return EndoMap(self.table[a])

    def left_translations_bijective(self) -> bool:
        return all(len(np.unique(row)) == self.n for row in self.table)

    def opposite(self) -> "OpTable":
        return OpTable(self.table.T)

    def relabel(self, f: EndoMap) -> "OpTable":
        """Transport the operation along the bijection ``f``."""
        inv = f.inverse().table
        return OpTable(f.table[self.table[np.ix_(inv, inv)]])


def is_associative(op: OpTable) -> bool:
    t = op.table
    return bool(np.array_equal(t[t, :], t[:, t]))


# ---------------------------------------------------------------------------
# groups


@dataclass(frozen=True)
class GroupInfo:
    identity: int
    inverse: EndoMap
    abelian: bool


def group_info(op: OpTable) -> Optional[GroupInfo]:
    """Identity/inverse/commutativity of ``op``, or None if it is not a group."""
    t = op.table
    n = op.n
    ar = np.arange(n)
    ids = [e for e in range(n) if np.array_equal(t[e], ar) and np.array_equal(t[:, e], ar)]
    if not ids:
        return None
    e = ids[0]
    inv = np.empty(n, dtype=np.int64)
    for a in range(n):
        hits = np.flatnonzero((t[a] == e) & (t[:, a] == e))
        if hits.size == 0:
            return None
        inv[a] = hits[0]
    if not is_associative(op):
        return None
    return GroupInfo(e, EndoMap(inv), bool(np.array_equal(t, t.T)))


class Group:
    """An operation table that is known to be a group.

    Written additively throughout, as the (possibly non-abelian) ``+`` of a
    skew brace: ``add``, ``neg``, ``sub`` and ``zero``.
    """

    __slots__ = ("op", "info")

    def __init__(self, op):
        if not isinstance(op, OpTable):
            op = OpTable(op)
        info = group_info(op)
        if info is None:
            raise NotAGroup("operation table is not a group")
        self.op = op
        self.info = info

    @property
    def n(self) -> int:
        return self.op.n

    @property
    def zero(self) -> int:
        return self.info.identity

    @property
    def abelian(self) -> bool:
        return self.info.abelian

    @property
    def table(self) -> np.ndarray:
        return self.op.table

    @property
    def neg_table(self) -> np.ndarray:
        return self.info.inverse.table

    def add(self, *xs: int) -> int:
        acc = self.zero
        for x in xs:
            acc = int(self.op.table[acc, x])
        return acc

    def neg(self, a: int) -> int:
        return int(self.info.inverse.table[a])

    def sub(self, a: int, b: int) -> int:
        return int(self.op.table[a, self.info.inverse.table[b]])

    def opposite(self) -> "Group":
        return Group(self.op.opposite())

    def is_central(self, x: int) -> bool:
        t = self.op.table
        return bool(np.array_equal(t[x, :], t[:, x]))

    def __eq__(self, other):
        return isinstance(other, Group) and self.op == other.op

    def __hash__(self):
        return hash(self.op)

    def __repr__(self):
        return f"Group(n={self.n}, abelian={self.abelian})"


def as_group(g) -> Group:
    return g if isinstance(g, Group) else Group(g)


# ---------------------------------------------------------------------------
# endofunction taxonomy


@dataclass(frozen=True)
class EndoFlags:
    hom: bool
    heap_endo: bool
    metahom: bool
    metahom_op: bool


def is_homomorphism(f: EndoMap, g: Group) -> bool:
    t, ft = g.table, f.table
    return bool(np.array_equal(ft[t], t[np.ix_(ft, ft)]))


def is_heap_endomorphism(f: EndoMap, g: Group) -> bool:
    """f(a - b + c) = f(a) - f(b) + f(c) for all triples."""
    t, neg, ft = g.table, g.neg_table, f.table
    diff = t[:, neg]  # diff[a, b] = a - b
    lhs = ft[t[diff]]  # [a, b, c]
    fdiff = diff[np.ix_(ft, ft)]  # f(a) - f(b)
    rhs = t[fdiff][:, :, ft]
    return bool(np.array_equal(lhs, rhs))


def is_metahomomorphism(f: EndoMap, g: Group) -> bool:
    """f(a + b - f(a)) = f(a) + f(b) - f²(a) for all pairs."""
    t, neg, ft = g.table, g.neg_table, f.table
    inner = t[t, neg[ft][:, None]]  # (a + b) - f(a)
    lhs = ft[inner]
    rhs = t[t[np.ix_(ft, ft)], neg[ft[ft]][:, None]]
    return bool(np.array_equal(lhs, rhs))


def classify_endofunction(f: EndoMap, g) -> EndoFlags:
    g = as_group(g)
    if f.n != g.n:
        raise ValueError("map and group live on different carriers")
    return EndoFlags(
        hom=is_homomorphism(f, g),
        heap_endo=is_heap_endomorphism(f, g),
        metahom=is_metahomomorphism(f, g),
        metahom_op=is_metahomomorphism(f, g.opposite()),
    )


@dataclass(frozen=True)
class HeapDecomposition:
    """``f(x) = k + l(x) = r(x) + k`` with l, r group endomorphisms."""

    k: int
    left: EndoMap
    right: EndoMap

    @property
    def hat(self) -> EndoMap:
        # f̂(x) = f(x) - f(0) is exactly the right factor
        return self.right


def heap_decompose(f: EndoMap, g) -> Optional[HeapDecomposition]:
    g = as_group(g)
    if not is_heap_endomorphism(f, g):
        return None
    k = f(g.zero)
    left = EndoMap.from_function(g.n, lambda x: g.add(g.neg(k), f(x)))
    right = EndoMap.from_function(g.n, lambda x: g.sub(f(x), k))
    return HeapDecomposition(k, left, right)


# ---------------------------------------------------------------------------
# builders


def cyclic_group(n: int) -> Group:
    return Group(OpTable.from_function(n, lambda a, b: (a + b) % n))


def mod_affine(n: int, mult: int, shift: int = 0) -> EndoMap:
    """x ↦ mult·x + shift on ℤ/n."""
    return EndoMap.from_function(n, lambda x: (mult * x + shift) % n)


U8_ELEMENTS = (1, 3, 5, 7)


def units_mod8() -> Group:
    """U(ℤ/8ℤ) under multiplication, elements (1, 3, 5, 7) ↦ (0, 1, 2, 3)."""
    pos = {v: i for i, v in enumerate(U8_ELEMENTS)}
    return Group(OpTable.from_function(4, lambda a, b: pos[U8_ELEMENTS[a] * U8_ELEMENTS[b] % 8]))


def _perm_compose(p, q):
    # (p ∘ q)(i) = p[q[i]]
    return tuple(p[i] for i in q)


def group_from_permutations(gens: Iterable[tuple]) -> tuple[Group, list[tuple]]:
    """Close the generators under composition; elements sorted lexicographically.

    Returns the group (identity permutation first) and the element list so
    callers can translate back. The product is ``a + b = a ∘ b``.
    """
    gens = [tuple(g) for g in gens]
    deg = len(gens[0])
    ident = tuple(range(deg))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = _perm_compose(p, g)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    elems = sorted(seen)
    pos = {p: i for i, p in enumerate(elems)}
    table = [[pos[_perm_compose(p, q)] for q in elems] for p in elems]
    return Group(table), elems


def symmetric_group(k: int) -> Group:
    gens = [tuple(range(1, k)) + (0,)]
    if k > 1:
        gens.append((1, 0) + tuple(range(2, k)))
    return group_from_permutations(gens)[0]


def dihedral_group(k: int) -> Group:
    """Symmetries of the k-gon (order 2k)."""
    rot = tuple((i + 1) % k for i in range(k))
    ref = tuple((-i) % k for i in range(k))
    return group_from_permutations([rot, ref])[0]


def quaternion_group() -> Group:
    # regular representation of Q8 on {±1, ±i, ±j, ±k}
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    base = {("i", "j"): "k", ("j", "k"): "i", ("k", "i"): "j",
            ("j", "i"): "-k", ("k", "j"): "-i", ("i", "k"): "-j"}

    def mul(x, y):
        sx = -1 if x.startswith("-") else 1
        sy = -1 if y.startswith("-") else 1
        ux, uy = x.lstrip("-"), y.lstrip("-")
        s = sx * sy
        if ux == "1":
            u = uy
        elif uy == "1":
            u = ux
        elif ux == uy:
            u, s = "1", -s
        else:
            u = base[(ux, uy)]
            if u.startswith("-"):
                u, s = u[1:], -s
        return u if s > 0 else "-" + u

    pos = {v: i for i, v in enumerate(names)}
    return Group([[pos[mul(x, y)] for y in names] for x in names])


def direct_product(g: Group, h: Group) -> Group:
    m = h.n

    def op(a, b):
        return g.add(a // m, b // m) * m + h.add(a % m, b % m)

    return Group(OpTable.from_function(g.n * m, op))


def automorphisms(g) -> list[EndoMap]:
    """All group automorphisms, by brute force over bijections fixing 0."""
    g = as_group(g)
    n, t = g.n, g.table
    others = [x for x in range(n) if x != g.zero]
    out = []
    for perm in itertools.permutations(others):
        ft = np.empty(n, dtype=np.int64)
        ft[g.zero] = g.zero
        ft[others] = perm
        if np.array_equal(ft[t], t[np.ix_(ft, ft)]):
            out.append(EndoMap(ft))
    return out


def bijective_heap_endomorphisms(g) -> list[EndoMap]:
    """Every bijective heap endomorphism, as x ↦ k + l(x) with l ∈ Aut."""
    g = as_group(g)
    out = set()
    for l in automorphisms(g):
        for k in range(g.n):
            out.add(EndoMap.from_function(g.n, lambda x: g.add(k, l(x))))
    return sorted(out, key=lambda f: f.table.tolist())


def find_isomorphism(x: OpTable, y: OpTable) -> Optional[EndoMap]:
    """First bijection f (lexicographic) with f(a ⋆ b) = f(a) ⋆' f(b), or None."""
    if x.n != y.n:
        return None
    n, tx, ty = x.n, x.table, y.table
    for perm in itertools.permutations(range(n)):
        ft = np.array(perm)
        if np.array_equal(ft[tx], ty[np.ix_(ft, ft)]):
            return EndoMap(ft)
    return None


def canonical_form(op: OpTable) -> tuple:
    """Lexicographically least flattened table over all relabelings."""
    n = op.n
    best = None
    for perm in itertools.permutations(range(n)):
        key = tuple(op.relabel(EndoMap(perm)).table.ravel().tolist())
        if best is None or key < best:
            best = key
    return best
