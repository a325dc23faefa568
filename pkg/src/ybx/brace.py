"""Skew braces and the solutions they carry.

Throughout, ``+`` is the additive group and ``∘`` the multiplicative one;
their identities coincide and are written 0. Inverses: ``-a`` for ``+`` and
``a⁻¹`` for ``∘``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InvalidZParams, PreconditionFailed
from .finset import EndoMap, Group, OpTable, group_info, is_heap_endomorphism
from .solution import Solution, _first, _inverse_rows, associated_shelf, verify_braid


@dataclass(frozen=True)
class BraceFlags:
    left_skew: bool
    two_sided: bool
    brace: bool
    witness: Optional[tuple] = None


def verify_skew_brace(add: OpTable, mul: OpTable) -> BraceFlags:
    """Check a∘(b+c) = a∘b - a + a∘c; witness is the first failing (a, b, c)."""
    if add.n != mul.n:
        return BraceFlags(False, False, False)
    ia, im = group_info(add), group_info(mul)
    if ia is None or im is None:
        return BraceFlags(False, False, False)
    A, M, neg = add.table, mul.table, ia.inverse.table
    n = add.n
    a, b, c = np.indices((n, n, n))
    left = M[a, A[b, c]] != A[A[M[a, b], neg[a]], M[a, c]]
    w = _first(left)
    if w is not None:
        return BraceFlags(False, False, False, w)
    right = M[A[b, c], a] != A[A[M[b, a], neg[a]], M[c, a]]
    return BraceFlags(True, not right.any(), ia.abelian)


class SkewBrace:
    __slots__ = ("add", "mul", "flags")

    def __init__(self, add, mul):
        add = add.op if isinstance(add, Group) else add
        mul = mul.op if isinstance(mul, Group) else mul
        add = add if isinstance(add, OpTable) else OpTable(add)
        mul = mul if isinstance(mul, OpTable) else OpTable(mul)
        flags = verify_skew_brace(add, mul)
        if not flags.left_skew:
            raise PreconditionFailed("skew brace axioms", flags.witness)
        self.add = Group(add)
        self.mul = Group(mul)
        self.flags = flags

    @property
    def n(self) -> int:
        return self.add.n

    @property
    def zero(self) -> int:
        return self.add.zero

    # vectorized operations on index arrays
    def plus(self, *xs):
        acc = xs[0]
        for x in xs[1:]:
            acc = self.add.table[acc, x]
        return acc

    def neg(self, x):
        return self.add.neg_table[x]

    def circ(self, *xs):
        acc = xs[0]
        for x in xs[1:]:
            acc = self.mul.table[acc, x]
        return acc

    def cinv(self, x):
        return self.mul.neg_table[x]

    def __repr__(self):
        return f"SkewBrace(n={self.n}, brace={self.flags.brace}, two_sided={self.flags.two_sided})"


def trivial_brace(g) -> SkewBrace:
    """∘ = +."""
    g = g if isinstance(g, Group) else Group(g)
    return SkewBrace(g.op, g.op)


def opposite_brace(g) -> SkewBrace:
    """a ∘ b = b + a."""
    g = g if isinstance(g, Group) else Group(g)
    return SkewBrace(g.op, g.op.opposite())


def z4_brace() -> SkewBrace:
    """ℤ/4 with a ∘ b = a + b + 2ab."""
    add = OpTable.from_function(4, lambda a, b: (a + b) % 4)
    mul = OpTable.from_function(4, lambda a, b: (a + b + 2 * a * b) % 4)
    return SkewBrace(add, mul)


# ---------------------------------------------------------------------------
# solutions from σ


def _tau_from_sigma(B: SkewBrace, sigma: np.ndarray) -> np.ndarray:
    """τ_b(a) = σ_a(b)⁻¹ ∘ a ∘ b, returned as [b, a]."""
    a, b = np.indices((B.n, B.n))
    tau_ab = B.circ(B.cinv(sigma), a, b)
    return tau_ab.T


def solution_from_sigma(B: SkewBrace, sigma: np.ndarray) -> Solution:
    return Solution(sigma, _tau_from_sigma(B, sigma))


@dataclass(frozen=True)
class ZParams:
    z1: int
    z2: int
    z: int
    variant: int = 1

    def constants(self, B: SkewBrace) -> tuple[np.ndarray, np.ndarray]:
        """Per-element values of both constraint expressions."""
        a = np.arange(B.n)
        az = B.circ(a, self.z)
        c1 = B.plus(B.circ(a, self.z2, self.z1), B.neg(az))
        c2 = B.plus(B.neg(az), B.circ(a, self.z1, self.z2))
        return c1, c2

    def violation(self, B: SkewBrace) -> Optional[tuple[str, int]]:
        c1, c2 = self.constants(B)
        for name, c in (("c1", c1), ("c2", c2)):
            bad = np.flatnonzero(c != c[B.zero])
            if bad.size:
                return name, int(bad[0])
        return None

    def validate(self, B: SkewBrace) -> "ZParams":
        if self.variant not in (1, 2):
            raise ValueError("variant must be 1 or 2")
        v = self.violation(B)
        if v is not None:
            raise InvalidZParams(f"constraint {v[0]} is not constant", v[1])
        return self

    def hat(self, B: SkewBrace) -> "ZParams":
        """ẑ = z⁻¹, ẑ₁ = z₂∘z⁻¹, ẑ₂ = z₁∘z⁻¹ (not validated here)."""
        zi = int(B.cinv(self.z))
        return ZParams(int(B.circ(self.z2, zi)), int(B.circ(self.z1, zi)), zi, self.variant)


def _sigma_table(B: SkewBrace, variant: int, z: Optional[ZParams]) -> np.ndarray:
    a, b = np.indices((B.n, B.n))
    ab = B.circ(a, b)
    if z is None:
        if variant == 1:
            return B.plus(B.neg(a), ab)
        return B.plus(ab, B.neg(a))
    az = B.circ(a, z.z)
    if variant == 1:
        return B.plus(z.z1, B.neg(az), B.circ(ab, z.z2))
    return B.plus(B.circ(ab, z.z1), B.neg(az), z.z2)


def brace_maps(B: SkewBrace, variant: int = 1, z: Optional[ZParams] = None) -> Solution:
    """Variant 1: σ_a(b) = -a + a∘b; variant 2: σ_a(b) = a∘b - a.

    With ``z``, variant 1 is z₁ - a∘z + a∘b∘z₂ and variant 2 is
    a∘b∘z₁ - a∘z + z₂. In every case τ_b(a) = σ_a(b)⁻¹∘a∘b.
    """
    if variant not in (1, 2):
        raise ValueError("variant must be 1 or 2")
    if z is not None:
        z.validate(B)
    return solution_from_sigma(B, _sigma_table(B, variant, z))


@dataclass(frozen=True)
class HatCheck:
    hat: ZParams
    hat_valid: bool
    inverse_holds: bool


def check_hat_params(B: SkewBrace, z: ZParams) -> HatCheck:
    """Does r(ẑ) undo the variant-2 solution r*(z)? Checked, not assumed."""
    z.validate(B)
    hz = z.hat(B)
    r_hat = solution_from_sigma(B, _sigma_table(B, 1, hz))
    r_star = solution_from_sigma(B, _sigma_table(B, 2, z))
    x, y = r_star.sigma, r_star.tau.T
    a, b = np.indices((B.n, B.n))
    holds = np.array_equal(r_hat.sigma[x, y], a) and np.array_equal(r_hat.tau[y, x], b)
    return HatCheck(hz, hz.violation(B) is None, bool(holds))


def zdeformed_quandle(B: SkewBrace, z: ZParams) -> OpTable:
    """table[b, a] = b ▷ a.

    Variant 1: z₁ - b∘z + a∘z - z₁ + b. Variant 2: b - z₂ + a∘z - b∘z + z₂.
    """
    z.validate(B)
    b, a = np.indices((B.n, B.n))
    az, bz = B.circ(a, z.z), B.circ(b, z.z)
    if z.variant == 1:
        t = B.plus(z.z1, B.neg(bz), az, B.neg(z.z1), b)
    else:
        t = B.plus(b, B.neg(z.z2), az, B.neg(bz), z.z2)
    return OpTable(t)


def zdeformed_bullet(B: SkewBrace, z: ZParams) -> OpTable:
    """Variant 1: a∘z - z₁ + b. Variant 2: b - z₂ + a∘z."""
    z.validate(B)
    a, b = np.indices((B.n, B.n))
    az = B.circ(a, z.z)
    if z.variant == 1:
        return OpTable(B.plus(az, B.neg(z.z1), b))
    return OpTable(B.plus(b, B.neg(z.z2), az))


# ---------------------------------------------------------------------------
# solutions from a heap endomorphism


RR1_VARIANTS = ("i", "ii")


def rr1_sigma(B: SkewBrace, f: EndoMap, variant: str) -> np.ndarray:
    """(i) σ_a(b) = -f(a) + a∘b; (ii) σ_a(b) = a∘b - f(a)."""
    a, b = np.indices((B.n, B.n))
    fa = f.table[a]
    ab = B.circ(a, b)
    if variant == "i":
        return B.plus(B.neg(fa), ab)
    if variant == "ii":
        return B.plus(ab, B.neg(fa))
    raise ValueError(f"unknown variant {variant!r}")


def rr1_shelf(B: SkewBrace, f: EndoMap, variant: str) -> OpTable:
    """table[b, a]: (i) -f(b) + f(a) + b; (ii) b + f(a) - f(b)."""
    b, a = np.indices((B.n, B.n))
    fa, fb = f.table[a], f.table[b]
    if variant == "i":
        return OpTable(B.plus(B.neg(fb), fa, b))
    return OpTable(B.plus(b, fa, B.neg(fb)))


def rr1_bullet(B: SkewBrace, f: EndoMap, variant: str) -> OpTable:
    """(i) f(a) + b; (ii) b + f(a)."""
    a, b = np.indices((B.n, B.n))
    fa = f.table[a]
    return OpTable(B.plus(fa, b) if variant == "i" else B.plus(b, fa))


def rr1_condition_defect(B: SkewBrace, f: EndoMap, variant: str) -> Optional[tuple]:
    """(i) f(a∘b) = a∘f(b) - a + f(a); (ii) f(a∘b) = f(a) - a + a∘f(b)."""
    a, b = np.indices((B.n, B.n))
    ft = f.table
    lhs = ft[B.circ(a, b)]
    if variant == "i":
        rhs = B.plus(B.circ(a, ft[b]), B.neg(a), ft[a])
    else:
        rhs = B.plus(ft[a], B.neg(a), B.circ(a, ft[b]))
    return _first(lhs != rhs)


@dataclass(frozen=True)
class Rr1Report:
    unit_to_zero: bool  # f(0) = 0
    inverse_formula: bool  # a∘σ⁻¹_a(b) = a • b
    shelf_matches: bool  # b ▷ a = σ_b τ_{σ⁻¹_a(b)}(a)
    shelf_compatible: bool  # σ_a(b) ▷ σ_a(c) = σ_a(b ▷ c)
    sigma_composition: bool  # σ_a σ_b = σ_{a∘b}
    tau_composition: bool  # τ_c τ_b = τ^{f²}_{b∘c}
    bullet_law: bool  # σ_a(b) • σ_a(c) = σ^{f²}_a(b • c)
    braid: bool
    inverse_pair: bool  # r ∘ r_inv = id = r_inv ∘ r

    @property
    def composition(self) -> bool:
        return self.sigma_composition and self.tau_composition

    def all(self) -> bool:
        return all(getattr(self, k) for k in self.__dataclass_fields__)


@dataclass(frozen=True)
class Rr1Result:
    r: Solution
    r_inv: Solution
    report: Rr1Report


def _compose_is_identity(r: Solution, s: Solution) -> bool:
    """s ∘ r = id on X × X."""
    x, y = r.sigma, r.tau.T
    a, b = np.indices((r.n, r.n))
    return bool(np.array_equal(s.sigma[x, y], a) and np.array_equal(s.tau[y, x], b))


def rr1_solution(B: SkewBrace, f: EndoMap, variant: str = "i") -> Rr1Result:
    if variant not in RR1_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if f.n != B.n:
        raise ValueError("map and brace live on different carriers")
    if not f.is_bijective():
        raise PreconditionFailed("f bijective")
    if not is_heap_endomorphism(f, B.add):
        raise PreconditionFailed("f heap endomorphism of (X,+)")
    w = rr1_condition_defect(B, f, variant)
    if w is not None:
        raise PreconditionFailed(f"condition (3) of variant {variant}", w)

    n = B.n
    sigma = rr1_sigma(B, f, variant)
    r = solution_from_sigma(B, sigma)
    finv = f.inverse().table
    a, b = np.indices((n, n))
    ab = B.circ(a, b)
    if variant == "i":
        shat = finv[B.plus(ab, B.neg(a))]
    else:
        shat = finv[B.plus(B.neg(a), ab)]
    r_inv = solution_from_sigma(B, shat)

    f2 = f.compose(f)
    sigma2 = rr1_sigma(B, f2, variant)
    tau2 = _tau_from_sigma(B, sigma2)  # [b, a]
    sinv = _inverse_rows(sigma)
    shelf = rr1_shelf(B, f, variant).table
    bullet = rr1_bullet(B, f, variant).table
    tau = r.tau

    x, y, c = np.indices((n, n, n))
    report = Rr1Report(
        unit_to_zero=int(f.table[B.zero]) == B.zero,
        inverse_formula=bool(np.array_equal(B.circ(a, sinv), bullet)),
        shelf_matches=associated_shelf(r).table.tolist() == shelf.tolist(),
        shelf_compatible=bool(np.array_equal(shelf[sigma[x, y], sigma[x, c]], sigma[x, shelf[y, c]])),
        sigma_composition=bool(np.array_equal(sigma[x, sigma[y, c]], sigma[B.circ(x, y), c])),
        tau_composition=bool(np.array_equal(tau[c, tau[y, x]], tau2[B.circ(y, c), x])),
        bullet_law=bool(np.array_equal(bullet[sigma[x, y], sigma[x, c]], sigma2[x, bullet[y, c]])),
        braid=verify_braid(r).braid,
        inverse_pair=_compose_is_identity(r_inv, r) and _compose_is_identity(r, r_inv),
    )
    return Rr1Result(r, r_inv, report)
