"""Left shelves, spindles, racks and quandles.

An operation ``a ▷ b`` is stored as an :class:`OpTable` with ``table[a, b] = a ▷ b``,
so row ``a`` is the left translation ``L_a``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import NotAShelf
from .finset import EndoMap, Group, OpTable, as_group, classify_endofunction


@dataclass(frozen=True)
class ShelfReport:
    shelf: bool
    spindle: bool
    rack: bool
    quandle: bool
    witness: Optional[tuple] = None


def _distributivity_defect(t: np.ndarray) -> np.ndarray:
    """Boolean [a, b, c] array, True where a▷(b▷c) != (a▷b)▷(a▷c)."""
    n = t.shape[0]
    a, b, c = np.indices((n, n, n))
    return t[a, t[b, c]] != t[t[a, b], t[a, c]]


def is_shelf(op: OpTable) -> bool:
    return not _distributivity_defect(op.table).any()


def classify_shelf(op: OpTable) -> ShelfReport:
    """Classify ``op``; the witness is the first failure in lexicographic order.

    Witness shapes: ``(a, b, c)`` for self-distributivity, ``(a,)`` for
    ``a ▷ a != a`` and ``(a, b)`` for a repeated value ``a ▷ b`` in row ``a``.
    """
    t = op.table
    n = op.n
    bad = np.argwhere(_distributivity_defect(t))
    shelf = bad.size == 0
    witness = None if shelf else tuple(int(i) for i in bad[0])

    diag_bad = np.flatnonzero(t[np.arange(n), np.arange(n)] != np.arange(n))
    spindle = shelf and diag_bad.size == 0

    rack_bad = None
    for a in range(n):
        _, first = np.unique(t[a], return_index=True)
        if first.size < n:
            dup = sorted(set(range(n)) - set(first.tolist()))[0]
            rack_bad = (a, dup)
            break
    rack = shelf and rack_bad is None

    if witness is None:
        if diag_bad.size:
            witness = (int(diag_bad[0]),)
        elif rack_bad is not None:
            witness = rack_bad
    return ShelfReport(shelf, spindle, rack, spindle and rack, witness)


def derived_solution(shelf: OpTable):
    """r(a, b) = (b, b ▷ a)."""
    from .solution import Solution

    if not is_shelf(shelf):
        raise NotAShelf("operation is not left self-distributive")
    n = shelf.n
    sigma = np.tile(np.arange(n), (n, 1))
    return Solution(sigma, shelf.table)


def left_zero_band(n: int) -> OpTable:
    """a ▷ b = a."""
    return OpTable(np.repeat(np.arange(n)[:, None], n, axis=1))


def right_zero_band(n: int) -> OpTable:
    """a ▷ b = b."""
    return OpTable(np.tile(np.arange(n), (n, 1)))


def conjugation_quandle(g) -> OpTable:
    """a ▷ b = -a + b + a."""
    g = as_group(g)
    t, neg = g.table, g.neg_table
    a = np.arange(g.n)[:, None]
    b = np.arange(g.n)[None, :]
    return OpTable(t[t[neg[a], b], a])


def is_shelf_homomorphism(f: EndoMap, x: OpTable, y: OpTable) -> bool:
    """f(a ▷ b) = f(a) ▷' f(b); ``f`` maps the carrier of x into that of y."""
    ft = np.asarray(f.table if isinstance(f, EndoMap) else f)
    if ft.shape != (x.n,) or (ft.size and (ft.min() < 0 or ft.max() >= y.n)):
        return False
    return bool(np.array_equal(ft[x.table], y.table[np.ix_(ft, ft)]))


# ---------------------------------------------------------------------------
# affine constructions over a group


AFFINE_VARIANTS = ("t", "r", "s")


@dataclass(frozen=True)
class AffineShelf:
    table: OpTable
    report: ShelfReport
    hypothesis: bool
    bijective: bool

    @property
    def valid(self) -> bool:
        return self.report.shelf


def _variant_t_hypothesis(f: EndoMap, g: Group) -> bool:
    # f(a - f(b) + b) = f(a) - f²(b) + f(b)
    t, neg, ft = g.table, g.neg_table, f.table
    lhs = ft[t[t[:, neg[ft]], np.arange(g.n)[None, :]]]
    rhs = t[t[ft[:, None], neg[ft[ft]][None, :]], ft[None, :]]
    return bool(np.array_equal(lhs, rhs))


def affine_shelf(g, f: EndoMap, variant: str) -> AffineShelf:
    """Build a ▷ b from a group and an endofunction.

    ``t``: f(b) - f(a) + a, ``r``: a + f(b) - f(a), ``s``: -f(a) + f(b) + a.
    """
    g = as_group(g)
    if f.n != g.n:
        raise ValueError("map and group live on different carriers")
    t, neg, ft = g.table, g.neg_table, f.table
    a = np.arange(g.n)[:, None]
    b = np.arange(g.n)[None, :]
    if variant == "t":
        table = t[t[ft[b], neg[ft[a]]], a]
        hyp = _variant_t_hypothesis(f, g)
    elif variant == "r":
        table = t[t[a, ft[b]], neg[ft[a]]]
        hyp = classify_endofunction(f, g).metahom
    elif variant == "s":
        table = t[t[neg[ft[a]], ft[b]], a]
        hyp = classify_endofunction(f, g).metahom_op
    else:
        raise ValueError(f"unknown variant {variant!r}; expected one of {AFFINE_VARIANTS}")
    op = OpTable(table)
    return AffineShelf(op, classify_shelf(op), hyp, f.is_bijective())


# ---------------------------------------------------------------------------
# enumeration


def _all_tables(n: int) -> np.ndarray:
    cells = n * n
    codes = np.arange(n ** cells)
    digits = (codes[:, None] // n ** np.arange(cells - 1, -1, -1)[None, :]) % n
    return digits.reshape(-1, n, n)


def _shelf_mask(tables: np.ndarray) -> np.ndarray:
    k, n, _ = tables.shape
    idx = np.arange(k)[:, None]
    a, b, c = (x.ravel()[None, :] for x in np.indices((n, n, n)))
    lhs = tables[idx, a, tables[idx, b, c]]
    rhs = tables[idx, tables[idx, a, b], tables[idx, a, c]]
    return (lhs == rhs).all(axis=1)


def scan_shelves(n: int) -> list[OpTable]:
    """Every shelf table on n ≤ 3 points, by exhaustive scan."""
    if n > 3:
        raise ValueError("full table scan is limited to n <= 3")
    tables = _all_tables(n)
    return [OpTable(t) for t in tables[_shelf_mask(tables)]]


def racks_by_translations(n: int) -> list[OpTable]:
    """Every rack on n points, built from left translations L_a ∈ Sym(n).

    Constraint: L_a L_b = L_{L_a(b)} L_a.
    """
    perms = [np.array(p) for p in itertools.permutations(range(n))]
    found = []
    rows: list[np.ndarray] = []

    def consistent(k: int) -> bool:
        # check every (a, b) whose three translations are already fixed
        for a in range(k + 1):
            la = rows[a]
            for b in range(k + 1):
                c = int(la[b])
                if c > k or (a != k and b != k and c != k):
                    continue
                if not np.array_equal(la[rows[b]], rows[c][la]):
                    return False
        return True

    def extend(k: int):
        if k == n:
            found.append(OpTable(np.array(rows)))
            return
        for p in perms:
            rows.append(p)
            if consistent(k):
                extend(k + 1)
            rows.pop()

    extend(0)
    return found


def _sort_key(op: OpTable) -> tuple:
    return tuple(op.table.ravel().tolist())


def enumerate_shelves(n: int, racks_only: bool = False) -> list[OpTable]:
    """Sorted labelled shelves (n ≤ 3) or racks (n ≤ 4)."""
    if n <= 3:
        found = scan_shelves(n)
        if racks_only:
            found = [op for op in found if op.left_translations_bijective()]
    elif n == 4 and racks_only:
        found = racks_by_translations(n)
    else:
        raise ValueError("shelves are enumerated for n <= 3, racks for n <= 4")
    return sorted(found, key=_sort_key)
