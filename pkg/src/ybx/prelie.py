"""Right pre-Lie skew braces (X, +, •) and the Lie rings of pre-Lie braces."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import NotAbelian, NotPreLieBrace
from .finset import EndoMap, Group, OpTable


@dataclass(frozen=True)
class LeftInverse:
    identity: int
    inverse: EndoMap


@dataclass(frozen=True)
class PreLieFlags:
    distr: bool
    prelie: bool
    prelie_op: bool
    left_invertible: Optional[LeftInverse]

    @property
    def right_prelie_skew_brace(self) -> bool:
        return self.distr and self.prelie


def _group(add) -> Group:
    return add if isinstance(add, Group) else Group(add)


def distributivity_holds(g: Group, bullet: OpTable) -> bool:
    """a•(b+c) = a•b - a•0 + a•c and (a+b)•c = a•c - 0•c + b•c."""
    t, neg, m = g.table, g.neg_table, bullet.table
    a, b, c = np.indices((g.n,) * 3)
    z = g.zero
    left = m[a, t[b, c]] == t[t[m[a, b], neg[m[a, z]]], m[a, c]]
    right = m[t[a, b], c] == t[t[m[a, c], neg[m[z, c]]], m[b, c]]
    return bool(left.all() and right.all())


def prelie_difference(g: Group, bullet: OpTable) -> np.ndarray:
    """[a, b, c] ↦ (a•b)•c - a•(b•c)."""
    t, neg, m = g.table, g.neg_table, bullet.table
    a, b, c = np.indices((g.n,) * 3)
    return t[m[m[a, b], c], neg[m[a, m[b, c]]]]


def _prelie_op_side(g: Group, bullet: OpTable) -> np.ndarray:
    """[a, b, c] ↦ -op a•(b•c) +op (a•b)•c, computed in the opposite group."""
    op = g.opposite()
    t, neg, m = op.table, op.neg_table, bullet.table
    a, b, c = np.indices((g.n,) * 3)
    return t[neg[m[a, m[b, c]]], m[m[a, b], c]]


def left_inverse(bullet: OpTable) -> Optional[LeftInverse]:
    """Unique left identity e with unique left inverses, or None."""
    m = bullet.table
    n = bullet.n
    ids = [e for e in range(n) if np.array_equal(m[e], np.arange(n))]
    if len(ids) != 1:
        return None
    e = ids[0]
    inv = np.empty(n, dtype=np.int64)
    for b in range(n):
        hits = np.flatnonzero(m[:, b] == e)
        if hits.size != 1:
            return None
        inv[b] = hits[0]
    return LeftInverse(e, EndoMap(inv))


def verify_prelie(add, bullet: OpTable) -> PreLieFlags:
    g = _group(add)
    if bullet.n != g.n:
        raise ValueError("operations live on different carriers")
    d = prelie_difference(g, bullet)
    dop = _prelie_op_side(g, bullet)
    return PreLieFlags(
        distr=distributivity_holds(g, bullet),
        prelie=bool(np.array_equal(d, d.transpose(0, 2, 1))),
        prelie_op=bool(np.array_equal(dop, dop.transpose(0, 2, 1))),
        left_invertible=left_inverse(bullet),
    )


@dataclass(frozen=True)
class LieReport:
    abelian_group: bool  # +_o abelian with neutral o
    alternating: bool  # [a, a] = o
    biadditive: bool
    jacobi: bool
    constant: Optional[int]  # common value when the bracket is constant

    @property
    def lie_ring(self) -> bool:
        return self.abelian_group and self.alternating and self.biadditive and self.jacobi

    @property
    def zero_bracket(self) -> bool:
        return self.constant is not None and self.lie_ring


@dataclass(frozen=True)
class LieRing:
    add_o: OpTable
    bracket: OpTable
    report: LieReport


def lie_ring_at(add, bullet: OpTable, o: int) -> LieRing:
    """a +_o b = a - o + b and
    [a, b] = a•b - b•a + o•a - a•o + b•o - o•b + o.
    """
    g = _group(add)
    if not g.abelian:
        raise NotAbelian("the additive group must be abelian")
    flags = verify_prelie(g, bullet)
    if not flags.right_prelie_skew_brace:
        raise NotPreLieBrace("distributivity or the right pre-Lie identity fails")
    t, neg, m = g.table, g.neg_table, bullet.table
    n = g.n

    def plus(*xs):
        acc = xs[0]
        for x in xs[1:]:
            acc = t[acc, x]
        return acc

    a, b = np.indices((n, n))
    add_o = plus(a, neg[o], b)
    br = plus(m[a, b], neg[m[b, a]], m[o, a], neg[m[a, o]], m[b, o], neg[m[o, b]], o)

    x, y, z = np.indices((n, n, n))
    ao = add_o
    group_ok = (np.array_equal(ao, ao.T) and np.array_equal(ao[o], np.arange(n))
                and np.array_equal(ao[ao[x, y], z], ao[x, ao[y, z]]))
    alternating = bool(np.all(br[np.arange(n), np.arange(n)] == o))
    biadd = (np.array_equal(br[ao[x, y], z], ao[br[x, z], br[y, z]])
             and np.array_equal(br[x, ao[y, z]], ao[br[x, y], br[x, z]]))
    jac = ao[ao[br[x, br[y, z]], br[y, br[z, x]]], br[z, br[x, y]]]
    flat = np.unique(br)
    report = LieReport(
        abelian_group=bool(group_ok),
        alternating=alternating,
        biadditive=bool(biadd),
        jacobi=bool(np.all(jac == o)),
        constant=int(flat[0]) if flat.size == 1 else None,
    )
    return LieRing(OpTable(add_o), OpTable(br), report)
