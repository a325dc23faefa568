"""Yang-Baxter algebras: binary operations m with m ∘ r = m."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import CarrierMismatch, PreconditionFailed
from .finset import EndoMap, OpTable, as_group, classify_endofunction, is_heap_endomorphism
from .solution import Solution, _first, associated_shelf


@dataclass(frozen=True)
class YBCheck:
    holds: bool
    witness: Optional[tuple] = None

    def __bool__(self):
        return self.holds


def is_yb_algebra(m: OpTable, r: Solution) -> YBCheck:
    """m(a, b) = m(σ_a(b), τ_b(a)) for every pair; witness is the first failing (a, b)."""
    if m.n != r.n:
        raise CarrierMismatch(f"operation on {m.n} points, solution on {r.n}")
    t = m.table
    w = _first(t != t[r.sigma, r.tau.T])
    return YBCheck(w is None, w)


def bullet_from_solution(s: Solution, x: int) -> OpTable:
    """a • b = σ_a(b) ▷ (a ▷ x) over the associated shelf."""
    shelf = associated_shelf(s).table
    a, b = np.indices((s.n, s.n))
    return OpTable(shelf[s.sigma, shelf[a, x]])


def _check_bullet_hypothesis(f: EndoMap, g, variant: str):
    if variant == "t":
        if not is_heap_endomorphism(f, g):
            raise PreconditionFailed("f heap endomorphism of (X,+)")
        return
    flags = classify_endofunction(f, g)
    metahom = flags.metahom if variant == "r" else flags.metahom_op
    if not ((f.is_bijective() and metahom) or flags.heap_endo):
        side = "(X,+)" if variant == "r" else "(X,+op)"
        raise PreconditionFailed(f"f bijective metahomomorphism or heap endomorphism of {side}")


def bullet_affine(g, f: EndoMap, variant: str, shift: Optional[tuple[int, int]] = None) -> OpTable:
    """Companion operations of the affine shelves.

    ``t``: -f²(a) + f(a) - f(b) + b, ``r``: b + f(a), ``s``: f(a) + b.
    ``shift=(h, k)`` gives h + a • b + k.
    """
    g = as_group(g)
    if variant not in ("t", "r", "s"):
        raise ValueError(f"unknown variant {variant!r}")
    _check_bullet_hypothesis(f, g, variant)
    t, neg, ft = g.table, g.neg_table, f.table
    a, b = np.indices((g.n, g.n))
    if variant == "t":
        table = t[t[t[neg[ft[ft[a]]], ft[a]], neg[ft[b]]], b]
    elif variant == "r":
        table = t[b, ft[a]]
    else:
        table = t[ft[a], b]
    if shift is not None:
        h, k = shift
        table = t[t[h, table], k]
    return OpTable(table)


def shifted(g, m: OpTable, h: int, k: int) -> OpTable:
    """a ·_{h,k} b = h + m(a, b) + k."""
    g = as_group(g)
    t = g.table
    return OpTable(t[t[h, m.table], k])
