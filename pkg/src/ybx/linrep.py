"""Exact integer matrices on V = ℤX and its tensor powers.

Basis conventions: ``e_{a,b}`` has a single 1 in row a, column b, and matrices
act by ordinary matrix multiplication. In V⊗V the basis vector of (a, b) sits
at index ``a*n + b`` (leg 1 leftmost). Embeddings into V⊗V⊗V follow the same
convention, so R₁₃ = (I⊗𝒫)(R⊗I)(I⊗𝒫).

Fundamental representation of the generators:

    q_a ↦ Q_a = Σ_x e_{x, a▷x},   h_a ↦ H_a = e_{a,a},   w_a ↦ W_a = Σ_b e_{σ_a(b), b}
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import (
    AdmissibilityFailed,
    BulletIncompatible,
    DimMismatch,
    DimNotSquare,
    NotLeftNonDegenerate,
    NotAShelf,
    ParseError,
    RelationFailed,
    SearchRefused,
)
from .finset import OpTable, group_info
from .solution import Solution, _first, associated_shelf

MAX_CARRIER = 8
_INT64_SAFE = 2 ** 62


class IntMatrix:
    """A square integer matrix; int64 storage with an object-dtype fallback on overflow risk."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        arr = np.asarray(entries)
        if arr.dtype != object:
            if arr.dtype.kind not in "iub":
                raise TypeError("IntMatrix needs integer entries")
            arr = arr.astype(np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise DimMismatch(f"expected a non-empty square matrix, got shape {arr.shape}")
        arr = arr.copy()
        arr.setflags(write=False)
        self.entries = arr

    @classmethod
    def identity(cls, dim: int) -> "IntMatrix":
        return cls(np.eye(dim, dtype=np.int64))

    @classmethod
    def zeros(cls, dim: int) -> "IntMatrix":
        return cls(np.zeros((dim, dim), dtype=np.int64))

    @classmethod
    def unit(cls, dim: int, a: int, b: int) -> "IntMatrix":
        """e_{a,b}."""
        m = np.zeros((dim, dim), dtype=np.int64)
        m[a, b] = 1
        return cls(m)

    @classmethod
    def from_pairs(cls, dim: int, rows, cols, values=None) -> "IntMatrix":
        """Σ value·e_{row,col}, accumulating repeated positions."""
        m = np.zeros((dim, dim), dtype=np.int64)
        vals = np.ones(len(rows), dtype=np.int64) if values is None else np.asarray(values, dtype=np.int64)
        np.add.at(m, (np.asarray(rows), np.asarray(cols)), vals)
        return cls(m)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def _bound(self) -> int:
        if self.entries.size == 0:
            return 0
        return int(np.abs(self.entries).max())

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.dim != other.dim:
            raise DimMismatch(f"cannot multiply dims {self.dim} and {other.dim}")
        if self._bound() * other._bound() * self.dim < _INT64_SAFE and self.entries.dtype != object \
                and other.entries.dtype != object:
            return IntMatrix(_int_matmul(self.entries, other.entries))
        return IntMatrix(self.entries.astype(object) @ other.entries.astype(object))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.dim != other.dim:
            raise DimMismatch(f"cannot add dims {self.dim} and {other.dim}")
        if self._bound() + other._bound() < _INT64_SAFE and self.entries.dtype != object \
                and other.entries.dtype != object:
            return IntMatrix(self.entries + other.entries)
        return IntMatrix(self.entries.astype(object) + other.entries.astype(object))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + IntMatrix(-other.entries)

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.dim == other.dim and bool(
            np.array_equal(self.entries, other.entries))

    def __hash__(self):
        return hash(tuple(int(x) for x in self.entries.ravel()))

    def __repr__(self):
        return f"IntMatrix(dim={self.dim})"

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(self.entries.T)

    def is_permutation(self) -> bool:
        e = self.entries
        return bool(np.all((e == 0) | (e == 1)) and np.all(e.sum(axis=0) == 1) and np.all(e.sum(axis=1) == 1))

    def inverse_permutation(self) -> "IntMatrix":
        if not self.is_permutation():
            raise ValueError("matrix is not a permutation matrix")
        return self.T

    def is_identity(self) -> bool:
        return self == IntMatrix.identity(self.dim)

    # -- export -----------------------------------------------------------

    def to_text(self) -> str:
        return "\n".join(" ".join(str(int(x)) for x in row) for row in self.entries) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "IntMatrix":
        rows = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                rows.append([int(tok) for tok in line.split()])
            except ValueError as exc:
                raise ParseError(f"not an integer row: {exc}", lineno) from None
        if not rows or any(len(r) != len(rows) for r in rows):
            raise ParseError("matrix rows do not form a square grid", max(len(rows), 1))
        return cls(_int_array(rows))

    def to_sparse(self) -> str:
        """``dim`` header, then one ``row col value`` line per nonzero entry."""
        out = io.StringIO()
        out.write(f"{self.dim}\n")
        for r, c in zip(*np.nonzero(self.entries)):
            out.write(f"{int(r)} {int(c)} {int(self.entries[r, c])}\n")
        return out.getvalue()

    @classmethod
    def from_sparse(cls, text: str) -> "IntMatrix":
        lines = [(i, ln.split()) for i, ln in enumerate(text.splitlines(), start=1) if ln.strip()]
        if not lines or len(lines[0][1]) != 1:
            raise ParseError("missing dimension header", 1)
        dim = int(lines[0][1][0])
        m = [[0] * dim for _ in range(dim)]
        for lineno, toks in lines[1:]:
            if len(toks) != 3:
                raise ParseError("expected 'row col value'", lineno)
            r, c, v = (int(t) for t in toks)
            if not (0 <= r < dim and 0 <= c < dim):
                raise ParseError(f"index out of range 0..{dim - 1}", lineno)
            m[r][c] = v
        return cls(_int_array(m))


def _int_matmul(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    # integer matmul has no BLAS path; gather rows of y when x is sparse
    rows, cols = np.nonzero(x)
    if rows.size > 4 * x.shape[0]:
        return x @ y
    out = np.zeros((x.shape[0], y.shape[1]), dtype=np.int64)
    np.add.at(out, rows, x[rows, cols][:, None] * y[cols])
    return out


def _int_array(rows) -> np.ndarray:
    flat = [x for r in rows for x in r]
    if flat and max(abs(x) for x in flat) >= _INT64_SAFE:
        return np.array(rows, dtype=object)
    return np.array(rows, dtype=np.int64)


def kron(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if a.entries.dtype == object or b.entries.dtype == object or a._bound() * b._bound() >= _INT64_SAFE:
        return IntMatrix(np.kron(a.entries.astype(object), b.entries.astype(object)))
    return IntMatrix(np.kron(a.entries, b.entries))


def kron_all(*ms: IntMatrix) -> IntMatrix:
    acc = ms[0]
    for m in ms[1:]:
        acc = kron(acc, m)
    return acc


def msum(ms) -> IntMatrix:
    ms = list(ms)
    acc = ms[0]
    for m in ms[1:]:
        acc = acc + m
    return acc


def _carrier_from_dim(dim: int, legs: int) -> int:
    n = int(round(dim ** (1.0 / legs)))
    for cand in (n - 1, n, n + 1):
        if cand >= 1 and cand ** legs == dim:
            return cand
    raise DimNotSquare(f"dimension {dim} is not a {legs}-th power")


def flip(n: int) -> IntMatrix:
    """𝒫 = Σ e_{a,b} ⊗ e_{b,a}."""
    a, b = np.indices((n, n))
    return IntMatrix.from_pairs(n * n, (a * n + b).ravel(), (b * n + a).ravel())


def embed(m: IntMatrix, legs: tuple, n: int, total: int = 3) -> IntMatrix:
    """Place an operator on V^{⊗k} into V^{⊗total} acting on ``legs`` (1-based, ordered).

    ``legs=(2, 1)`` places the first factor of ``m`` on leg 2, so
    embed(R, (2, 1)) = P₁₂ R₁₂ P₁₂.
    """
    k = len(legs)
    if m.dim != n ** k:
        raise DimMismatch(f"operator of dim {m.dim} does not act on {k} legs of dim {n}")
    if len(set(legs)) != k or not all(1 <= leg <= total for leg in legs):
        raise ValueError(f"bad legs {legs} for {total} factors")
    rest = [leg for leg in range(1, total + 1) if leg not in legs]
    big = kron(m, IntMatrix.identity(n ** len(rest))) if rest else m
    order = list(legs) + rest  # current axis order of the factors
    perm = [order.index(leg) for leg in range(1, total + 1)]
    t = big.entries.reshape((n,) * (2 * total)).transpose(perm + [total + p for p in perm])
    return IntMatrix(t.reshape(n ** total, n ** total))


def swap_legs(n: int, i: int, j: int, total: int = 3) -> IntMatrix:
    """Permutation of V^{⊗total} exchanging legs i and j."""
    return embed(flip(n), (i, j), n, total)


# ---------------------------------------------------------------------------
# fundamental representation


@dataclass(frozen=True)
class FundamentalRep:
    rack: OpTable
    Q: tuple
    H: tuple
    W: Optional[tuple] = None
    solution: Optional[Solution] = None

    @property
    def n(self) -> int:
        return self.rack.n

    @property
    def dim(self) -> int:
        return self.n

    def W_inv(self, a: int) -> IntMatrix:
        return self.W[a].inverse_permutation()


def _rack_Q(rack: OpTable) -> tuple:
    n = rack.n
    x = np.arange(n)
    return tuple(IntMatrix.from_pairs(n, x, rack.table[a]) for a in range(n))


def _H(n: int) -> tuple:
    return tuple(IntMatrix.unit(n, a, a) for a in range(n))


def _W(sol: Solution) -> tuple:
    n = sol.n
    b = np.arange(n)
    return tuple(IntMatrix.from_pairs(n, sol.sigma[a], b) for a in range(n))


def rack_relation_failure(rack: OpTable, Q, H) -> Optional[tuple]:
    """First failing relation among q_a q_b = q_b q_{b▷a}, h_a h_b = δ h_a², q_b h_{b▷a} = h_a q_b."""
    n = rack.n
    t = rack.table
    ident = IntMatrix.identity(n)
    for a in range(n):
        if not (Q[a].is_permutation() and (Q[a].T @ Q[a]) == ident):
            return ("q_a^-1 q_a = 1", (a,))
    for a in range(n):
        for b in range(n):
            if Q[a] @ Q[b] != Q[b] @ Q[t[b, a]]:
                return ("q_a q_b = q_b q_(b>a)", (a, b))
            hh = H[a] @ H[b]
            if hh != (H[a] @ H[a] if a == b else IntMatrix.zeros(n)):
                return ("h_a h_b = delta h_a^2", (a, b))
            if Q[b] @ H[t[b, a]] != H[a] @ Q[b]:
                return ("q_b h_(b>a) = h_a q_b", (a, b))
    if msum(H) != ident:
        return ("sum h_a = 1", ())
    return None


def decorated_relation_failure(sol: Solution, rack: OpTable, Q, H, W) -> Optional[tuple]:
    """First failing relation among w_a w_b = w_{σ_a(b)} w_{τ_b(a)}, w_a h_b = h_{σ_a(b)} w_a, w_a q_b = q_{σ_a(b)} w_a."""
    n = sol.n
    ident = IntMatrix.identity(n)
    for a in range(n):
        if not (W[a].is_permutation() and (W[a].T @ W[a]) == ident):
            return ("w_a^-1 w_a = 1", (a,))
    for a in range(n):
        for b in range(n):
            s, t = int(sol.sigma[a, b]), int(sol.tau[b, a])
            if W[a] @ W[b] != W[s] @ W[t]:
                return ("w_a w_b = w_sigma w_tau", (a, b))
            if W[a] @ H[b] != H[s] @ W[a]:
                return ("w_a h_b = h_sigma w_a", (a, b))
            if W[a] @ Q[b] != Q[s] @ W[a]:
                return ("w_a q_b = q_sigma w_a", (a, b))
    return None


def fundamental_rep(rack: OpTable, sol: Optional[Solution] = None, check: bool = True) -> FundamentalRep:
    n = rack.n
    if n > MAX_CARRIER:
        raise SearchRefused(f"matrix layer is capped at n <= {MAX_CARRIER}")
    if not rack.left_translations_bijective():
        raise NotAShelf("left translations are not bijective")
    Q, H = _rack_Q(rack), _H(n)
    W = None
    if sol is not None:
        if sol.n != n:
            raise DimMismatch("solution and rack live on different carriers")
        if any(len(np.unique(row)) < n for row in sol.sigma):
            raise NotLeftNonDegenerate("some σ_a is not a bijection")
        W = _W(sol)
    if check:
        fail = rack_relation_failure(rack, Q, H)
        if fail is None and sol is not None:
            fail = decorated_relation_failure(sol, rack, Q, H, W)
        if fail is not None:
            raise RelationFailed(*fail)
    return FundamentalRep(rack, Q, H, W, sol)


def rep_from_solution(sol: Solution, check: bool = True) -> FundamentalRep:
    """Fundamental representation over the associated shelf, decorated by W."""
    return fundamental_rep(associated_shelf(sol), sol, check)


# ---------------------------------------------------------------------------
# R-matrices


def shelf_R(op: OpTable) -> IntMatrix:
    """Σ e_{b,b} ⊗ e_{a, b▷a}; no validity checks."""
    n = op.n
    b, a = np.indices((n, n))
    return IntMatrix.from_pairs(n * n, (b * n + a).ravel(), (b * n + op.table[b, a]).ravel())


def rack_R(rep: FundamentalRep) -> IntMatrix:
    """R = Σ_a H_a ⊗ Q_a."""
    return msum(kron(h, q) for h, q in zip(rep.H, rep.Q))


def rack_R_inverse(rep: FundamentalRep) -> IntMatrix:
    """Σ e_{b,b} ⊗ e_{b▷a, a}."""
    n = rep.n
    b, a = np.indices((n, n))
    return IntMatrix.from_pairs(n * n, (b * n + rep.rack.table[b, a]).ravel(), (b * n + a).ravel())


def solution_matrix(sol: Solution) -> IntMatrix:
    """Σ e_{a,σ_a(b)} ⊗ e_{b,τ_b(a)}, the operator 𝒫R^F of the solution."""
    n = sol.n
    a, b = np.indices((n, n))
    rows = a * n + b
    cols = sol.sigma[a, b] * n + sol.tau[b, a]
    return IntMatrix.from_pairs(n * n, rows.ravel(), cols.ravel())


def twisted_R_direct(sol: Solution) -> IntMatrix:
    """Σ e_{b,σ_a(b)} ⊗ e_{a,τ_b(a)}."""
    n = sol.n
    a, b = np.indices((n, n))
    rows = b * n + a
    cols = sol.sigma[a, b] * n + sol.tau[b, a]
    return IntMatrix.from_pairs(n * n, rows.ravel(), cols.ravel())


def verify_matrix_ybe(R: IntMatrix) -> bool:
    """R₁₂ R₁₃ R₂₃ = R₂₃ R₁₃ R₁₂."""
    n = _carrier_from_dim(R.dim, 2)
    r12, r13, r23 = (embed(R, legs, n) for legs in ((1, 2), (1, 3), (2, 3)))
    return r12 @ r13 @ r23 == r23 @ r13 @ r12


def verify_matrix_braid(r: IntMatrix) -> bool:
    """r₁₂ r₂₃ r₁₂ = r₂₃ r₁₂ r₂₃."""
    n = _carrier_from_dim(r.dim, 2)
    r12, r23 = embed(r, (1, 2), n), embed(r, (2, 3), n)
    return r12 @ r23 @ r12 == r23 @ r12 @ r23


# ---------------------------------------------------------------------------
# FRT relations


@dataclass(frozen=True)
class FRTFlags:
    a: bool
    b: bool
    c: bool

    @property
    def all(self) -> bool:
        return self.a and self.b and self.c


def frt_matrices(rep: FundamentalRep) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """(R, L, L̂) with L = Σ e_{a,a} ⊗ Q_a and L̂ = Σ H_b ⊗ Σ_a e_{a, b▷a}."""
    n = rep.n
    R = rack_R(rep)
    L = msum(kron(IntMatrix.unit(n, a, a), rep.Q[a]) for a in range(n))
    rows = np.arange(n)
    Lhat = msum(kron(rep.H[b], IntMatrix.from_pairs(n, rows, rep.rack.table[b])) for b in range(n))
    return R, L, Lhat


def twisted_frt_matrices(rep: FundamentalRep) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """(R^F, L^F, L̂^F) from f_{b,a} = H_b W_a⁻¹ and g_{a,b} = H_a Q_{σ_a(b)} W_{σ_a(b)}."""
    if rep.W is None:
        raise ValueError("representation has no W")
    n = rep.n
    sol = rep.solution
    RF = twisted_R_direct(sol)
    LF, LhF = [], []
    for a in range(n):
        for b in range(n):
            s, t = int(sol.sigma[a, b]), int(sol.tau[b, a])
            g = rep.H[a] @ rep.Q[s] @ rep.W[s]
            f = rep.H[b] @ rep.W_inv(a)
            LF.append(kron(IntMatrix.unit(n, b, s), g))
            LhF.append(kron(f, IntMatrix.unit(n, a, t)))
    return RF, msum(LF), msum(LhF)


def _frt(R: IntMatrix, L: IntMatrix, Lhat: IntMatrix, n: int) -> FRTFlags:
    def e(m, legs):
        return embed(m, legs, n)

    a = e(R, (1, 2)) @ e(L, (1, 3)) @ e(L, (2, 3)) == e(L, (2, 3)) @ e(L, (1, 3)) @ e(R, (1, 2))
    b = e(Lhat, (1, 2)) @ e(Lhat, (1, 3)) @ e(R, (2, 3)) == e(R, (2, 3)) @ e(Lhat, (1, 3)) @ e(Lhat, (1, 2))
    c = e(L, (1, 2)) @ e(R, (1, 3)) @ e(Lhat, (2, 3)) == e(Lhat, (2, 3)) @ e(R, (1, 3)) @ e(L, (1, 2))
    return FRTFlags(a, b, c)


def frt_check(rep: FundamentalRep, twisted: bool = False) -> FRTFlags:
    mats = twisted_frt_matrices(rep) if twisted else frt_matrices(rep)
    return _frt(*mats, rep.n)


# ---------------------------------------------------------------------------
# Hopf data in representation


def check_bullet(rack: OpTable, bullet: OpTable) -> Optional[tuple]:
    """First (a, b) with a•b != b•(b▷a)."""
    m, t = bullet.table, rack.table
    a, b = np.indices((rack.n, rack.n))
    return _first(m[a, b] != m[b, t[b, a]])


@dataclass(frozen=True)
class HomReport:
    strong: bool
    weak: Optional[dict] = None  # c ↦ F_c, when strong fails but F is well defined
    inconsistent: Optional[tuple] = None  # two pairs with equal a•b but different Q_aQ_b


def strong_weak_hom(rep: FundamentalRep, bullet: OpTable) -> HomReport:
    n = rep.n
    m = bullet.table
    prods = {}
    strong = True
    clash = None
    for a in range(n):
        for b in range(n):
            qq = rep.Q[a] @ rep.Q[b]
            c = int(m[a, b])
            if qq != rep.Q[c]:
                strong = False
            if c in prods and prods[c][0] != qq and clash is None:
                clash = (prods[c][1], (a, b))
            prods.setdefault(c, (qq, (a, b)))
    if strong:
        return HomReport(True)
    if clash is not None:
        return HomReport(False, None, clash)
    return HomReport(False, {c: v[0] for c, v in sorted(prods.items())})


def coproduct_h(rep: FundamentalRep, bullet: OpTable, c: int) -> IntMatrix:
    """Δ(h_c) ↦ Σ_{a•b=c} H_a ⊗ H_b (diagonal)."""
    n = rep.n
    a, b = np.nonzero(bullet.table == c)
    idx = a * n + b
    return IntMatrix.from_pairs(n * n, idx, idx) if idx.size else IntMatrix.zeros(n * n)


@dataclass(frozen=True)
class HopfReport:
    v1: bool
    v2: bool
    v2_weak: Optional[bool]
    comm_q: bool
    comm_h: bool
    strong: bool
    group: bool
    coassociative: bool
    coassoc_witness: Optional[tuple]
    counit: Optional[bool] = None
    antipode: Optional[bool] = None
    antipode_map: Optional[tuple] = None  # a ↦ a*
    w_commutes: Optional[bool] = None  # Δ(w_a) R = R Δ(w_a)
    w_coproduct: Optional[bool] = None  # Δ(w_a) Δ(h_b) = Δ(h_{σ_a(b)}) Δ(w_a)
    antipode_w: Optional[bool] = None  # S(w_a) = W_a⁻¹ consistent with S anti-multiplicative
    antipode_w_witness: Optional[tuple] = None

    @property
    def hopf(self) -> bool:
        return (self.v1 and self.v2 and self.comm_q and self.comm_h and self.coassociative
                and bool(self.counit) and bool(self.antipode))


def hopf_checks(rep: FundamentalRep, bullet: OpTable) -> HopfReport:
    w = check_bullet(rep.rack, bullet)
    if w is not None:
        raise BulletIncompatible(f"a•b != b•(b▷a) at {w}")
    n = rep.n
    m = bullet.table
    I = IntMatrix.identity(n)
    R = rack_R(rep)
    P = flip(n)
    r12, r13, r23 = (embed(R, legs, n) for legs in ((1, 2), (1, 3), (2, 3)))

    v1 = r13 @ r12 == msum(kron_all(rep.H[a], rep.Q[a], rep.Q[a]) for a in range(n))
    D = [coproduct_h(rep, bullet, c) for c in range(n)]
    lhs_v2 = r13 @ r23
    v2 = lhs_v2 == msum(kron(D[c], rep.Q[c]) for c in range(n))
    hom = strong_weak_hom(rep, bullet)
    v2_weak = None
    if not hom.strong and hom.weak is not None:
        v2_weak = lhs_v2 == msum(kron(D[c], F) for c, F in hom.weak.items())

    comm_q = all(kron(q, q) @ R == R @ kron(q, q) for q in rep.Q)
    comm_h = all(P @ D[c] @ P @ R == R @ D[c] for c in range(n))

    # coassociativity on the set level: (b•c)•d versus b•(c•d)
    b, c, d = np.indices((n, n, n))
    bad = m[m[b, c], d] != m[b, m[c, d]]
    coassoc_witness = _first(bad)
    coassociative = coassoc_witness is None

    info = group_info(bullet)
    counit = antipode = antipode_w = None
    antipode_map = antipode_w_witness = None
    if info is not None:
        e = info.identity
        star = info.inverse.table
        antipode_map = tuple(int(x) for x in star)
        zero = IntMatrix.zeros(n)
        # (ε⊗id)Δ(h_c) = Σ_{a•b=c} δ_{a,e} H_b and (id⊗ε)Δ(h_c) = Σ_{a•b=c} H_a δ_{b,e}
        counit = True
        for cc in range(n):
            left = msum([rep.H[bb] for aa, bb in zip(*np.nonzero(m == cc)) if aa == e] or [zero])
            right = msum([rep.H[aa] for aa, bb in zip(*np.nonzero(m == cc)) if bb == e] or [zero])
            counit &= left == rep.H[cc] and right == rep.H[cc]
        # m(S⊗id)Δ(x) = m(id⊗S)Δ(x) = ε(x)·1 on h_c and q_a
        antipode = True
        for cc in range(n):
            pairs = list(zip(*np.nonzero(m == cc)))
            lhs = msum([rep.H[star[aa]] @ rep.H[bb] for aa, bb in pairs] or [zero])
            rhs = msum([rep.H[aa] @ rep.H[star[bb]] for aa, bb in pairs] or [zero])
            target = I if cc == e else zero
            antipode &= lhs == target and rhs == target
        for a in range(n):
            antipode &= rep.Q[a].inverse_permutation() @ rep.Q[a] == I
            if hom.strong:
                antipode &= rep.Q[star[a]] == rep.Q[a].inverse_permutation()

    w_commutes = w_coproduct = None
    if rep.W is not None:
        sol = rep.solution
        WW = [kron(wa, wa) for wa in rep.W]
        w_commutes = all(x @ R == R @ x for x in WW)
        w_coproduct = all(WW[a] @ D[bb] == D[int(sol.sigma[a, bb])] @ WW[a]
                          for a in range(n) for bb in range(n))
        if info is not None:
            star = info.inverse.table
            antipode_w = True
            for a in range(n):
                Wi = rep.W_inv(a)
                if Wi @ rep.W[a] != I:
                    antipode_w, antipode_w_witness = False, (a,)
                    break
                for bb in range(n):
                    # S(w_a h_b) = S(h_{σ_a(b)} w_a) read through S anti-multiplicative
                    if rep.H[star[bb]] @ Wi != Wi @ rep.H[star[int(sol.sigma[a, bb])]]:
                        antipode_w, antipode_w_witness = False, (a, bb)
                        break
                    s, t = int(sol.sigma[a, bb]), int(sol.tau[bb, a])
                    if rep.W_inv(bb) @ Wi != rep.W_inv(t) @ rep.W_inv(s):
                        antipode_w, antipode_w_witness = False, (a, bb)
                        break
                if not antipode_w:
                    break

    return HopfReport(
        v1=v1, v2=v2, v2_weak=v2_weak, comm_q=comm_q, comm_h=comm_h, strong=hom.strong,
        group=info is not None, coassociative=coassociative, coassoc_witness=coassoc_witness,
        counit=counit, antipode=antipode, antipode_map=antipode_map,
        w_commutes=w_commutes, w_coproduct=w_coproduct,
        antipode_w=antipode_w, antipode_w_witness=antipode_w_witness,
    )


# ---------------------------------------------------------------------------
# condition0


@dataclass(frozen=True)
class Condition0:
    holds: bool
    witness: Optional[tuple] = None


def condition0_check(sol: Solution, bullet: OpTable, weak_g=None) -> Condition0:
    """σ_x(a) • σ_x(b) = σ_x(a • b), or = g_x(a • b) with a common fixed index e.

    ``weak_g[x, c] = g_x(c)``.
    """
    n = sol.n
    S, m = sol.sigma, bullet.table
    x, a, b = np.indices((n, n, n))
    if weak_g is None:
        w = _first(m[S[x, a], S[x, b]] != S[x, m[a, b]])
        return Condition0(w is None, w)
    g = np.asarray(weak_g, dtype=np.int64)
    if g.shape != (n, n):
        raise DimMismatch("g must be an n×n table")
    w = _first(m[S[x, a], S[x, b]] != g[x, m[a, b]])
    if w is not None:
        return Condition0(False, w)
    ar = np.arange(n)
    if not any(np.array_equal(S[e], ar) and np.array_equal(g[e], ar) for e in range(n)):
        return Condition0(False, ("no e with σ_e = g_e = id",))
    return Condition0(True)


# ---------------------------------------------------------------------------
# Drinfel'd twist


@dataclass(frozen=True)
class TwistReport:
    cocycle: bool  # F₁₂ F*₁₂,₃ = F₂₃ F₁,₂₃
    two_i: bool  # F₁₃₂ R₂₃ = R^F₂₃ F₁₂₃
    two_ii: bool  # F₂₁₃ R₁₂ = R^F₁₂ F₁₂₃
    direct_formula: bool  # F^op R F⁻¹ = Σ e_{b,σ_a(b)} ⊗ e_{a,τ_b(a)}
    universal_formula: bool  # = Σ H_b W_a⁻¹ ⊗ H_a Q_{σ_a(b)} W_{σ_a(b)}
    ybe: bool
    braid_matrix: bool  # 𝒫R^F = Σ e_{a,σ_a(b)} ⊗ e_{b,τ_b(a)}

    @property
    def all(self) -> bool:
        return all(getattr(self, k) for k in self.__dataclass_fields__)

    def first_failure(self) -> Optional[str]:
        return next((k for k in self.__dataclass_fields__ if not getattr(self, k)), None)


@dataclass(frozen=True)
class TwistResult:
    report: TwistReport
    F: IntMatrix
    R_F: IntMatrix


def twist_matrix(rep: FundamentalRep) -> IntMatrix:
    """F = Σ_b H_b ⊗ W_b⁻¹."""
    return msum(kron(rep.H[b], rep.W_inv(b)) for b in range(rep.n))


def twist_admissibility(rep: FundamentalRep, strict: bool = True) -> TwistResult:
    if rep.W is None:
        raise ValueError("representation has no W; build it from a solution")
    n = rep.n
    sol = rep.solution
    I = IntMatrix.identity(n)
    P = flip(n)
    R = rack_R(rep)
    F = twist_matrix(rep)
    F_inv = F.inverse_permutation()
    RF = P @ F @ P @ R @ F_inv

    F12, F23 = kron(F, I), kron(I, F)
    F1_23 = msum(kron_all(rep.H[a], rep.W_inv(a), rep.W_inv(a)) for a in range(n))
    Fs12_3 = msum(kron_all(rep.H[a], rep.H[int(sol.sigma[a, b])], rep.W_inv(b) @ rep.W_inv(a))
                  for a in range(n) for b in range(n))
    F123 = F12 @ Fs12_3
    cocycle = F123 == F23 @ F1_23

    P12, P23 = swap_legs(n, 1, 2), swap_legs(n, 2, 3)
    F132 = P23 @ F123 @ P23
    F213 = P12 @ F123 @ P12
    R12, R23 = embed(R, (1, 2), n), embed(R, (2, 3), n)
    RF12, RF23 = embed(RF, (1, 2), n), embed(RF, (2, 3), n)
    two_i = F132 @ R23 == RF23 @ F123
    two_ii = F213 @ R12 == RF12 @ F123

    universal = msum(kron(rep.H[b] @ rep.W_inv(a),
                          rep.H[a] @ rep.Q[int(sol.sigma[a, b])] @ rep.W[int(sol.sigma[a, b])])
                     for a in range(n) for b in range(n))
    report = TwistReport(
        cocycle=cocycle,
        two_i=two_i,
        two_ii=two_ii,
        direct_formula=RF == twisted_R_direct(sol),
        universal_formula=RF == universal,
        ybe=verify_matrix_ybe(RF),
        braid_matrix=P @ RF == solution_matrix(sol),
    )
    if strict and not report.all:
        raise AdmissibilityFailed(report.first_failure())
    return TwistResult(report, F, RF)
