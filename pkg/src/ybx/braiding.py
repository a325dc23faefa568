"""Deformed braiding operators on groups and S-deformed braidings on magmas.

A triple (r, ξ, ζ) of invertible maps on X×X is checked against a magma m:

1. m(x, y) = m(r(x, y))
2. ξ(m(x, y), w) = (id × m)(r × id)(id × r)(x, y, w)
3. ζ(x, m(y, w)) = (m × id)(id × r)(r × id)(x, y, w)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .brace import SkewBrace, brace_maps, solution_from_sigma
from .errors import NotAGroup, PreconditionFailed
from .finset import EndoMap, OpTable, as_group, group_info, is_heap_endomorphism
from .solution import PairMap, Solution

SHAPES = ("group", "S_i", "S_ii")


def _as_pairmap(x) -> PairMap:
    return PairMap.from_solution(x) if isinstance(x, Solution) else x


def _as_solution(p: PairMap) -> Solution:
    return Solution(p.table[..., 0], p.table[..., 1].T)


class BraidingTriple:
    __slots__ = ("r", "xi", "zeta")

    def __init__(self, r, xi, zeta):
        r, xi, zeta = (_as_pairmap(p) for p in (r, xi, zeta))
        for name, p in (("r", r), ("xi", xi), ("zeta", zeta)):
            if not p.is_bijective():
                raise PreconditionFailed(f"{name} invertible")
        if not (r.n == xi.n == zeta.n):
            raise ValueError("maps live on different carriers")
        self.r, self.xi, self.zeta = r, xi, zeta

    @property
    def n(self) -> int:
        return self.r.n

    @property
    def solution(self) -> Solution:
        return _as_solution(self.r)

    def __repr__(self):
        return f"BraidingTriple(n={self.n})"


@dataclass(frozen=True)
class BraidingFlags:
    cond1: bool
    cond2: bool
    cond3: bool
    shape_ok: bool
    sigma_law: Optional[bool] = None  # σ_x σ_y = f_{m(x,y)}
    tau_law: Optional[bool] = None  # τ_w τ_y = ĝ_{m(y,w)}

    @property
    def all(self) -> bool:
        return self.cond1 and self.cond2 and self.cond3 and self.shape_ok


def _shape_holds(t: BraidingTriple, shape: str) -> bool:
    n = t.n
    x, y = np.indices((n, n))
    maps = (t.r.table, t.xi.table, t.zeta.table)
    if shape == "S_i":
        return all(np.array_equal(p[..., 0], y) for p in maps)
    if shape == "S_ii":
        return all(np.array_equal(p[..., 1], x) for p in maps)
    return True


def verify_deformed_braiding(m: OpTable, t: BraidingTriple, shape: str) -> BraidingFlags:
    if shape not in SHAPES:
        raise ValueError(f"unknown shape {shape!r}")
    if shape == "group" and group_info(m) is None:
        raise NotAGroup("the magma must be a group for shape 'group'")
    if m.n != t.n:
        raise ValueError("magma and maps live on different carriers")
    n = t.n
    M = m.table
    S = t.r.table[..., 0]  # S[x, y] = σ_x(y)
    T = t.r.table[..., 1]  # T[x, y] = τ_y(x)
    XI, ZE = t.xi.table, t.zeta.table

    a, b = np.indices((n, n))
    cond1 = np.array_equal(M, M[S, T])

    x, y, w = np.indices((n, n, n))
    s_yw, t_yw = S[y, w], T[y, w]
    # (id × m)(r × id)(id × r)
    rhs2 = (S[x, s_yw], M[T[x, s_yw], t_yw])
    lhs2 = XI[M[x, y], w]
    cond2 = np.array_equal(lhs2[..., 0], rhs2[0]) and np.array_equal(lhs2[..., 1], rhs2[1])
    # (m × id)(id × r)(r × id)
    s_xy, t_xy = S[x, y], T[x, y]
    rhs3 = (M[s_xy, S[t_xy, w]], T[t_xy, w])
    lhs3 = ZE[x, M[y, w]]
    cond3 = np.array_equal(lhs3[..., 0], rhs3[0]) and np.array_equal(lhs3[..., 1], rhs3[1])

    sigma_law = tau_law = None
    if shape in ("group", "S_ii"):
        sigma_law = bool(np.array_equal(S[x, S[y, w]], XI[M[x, y], w][..., 0]))
    if shape in ("group", "S_i"):
        tau_law = bool(np.array_equal(T[T[x, y], w], ZE[x, M[y, w]][..., 1]))
    return BraidingFlags(bool(cond1), bool(cond2), bool(cond3), _shape_holds(t, shape), sigma_law, tau_law)


# ---------------------------------------------------------------------------
# examples


@dataclass(frozen=True)
class BraidingExample:
    m: OpTable
    triple: BraidingTriple
    shape: str


def _pair(first: np.ndarray, second: np.ndarray) -> PairMap:
    return PairMap(np.stack([first, second], axis=-1))


def _sigma_z(B: SkewBrace, z: int) -> np.ndarray:
    """σ^z_a(b) = -a∘z + a∘b∘z."""
    a, b = np.indices((B.n, B.n))
    return B.plus(B.neg(B.circ(a, z)), B.circ(a, b, z))


def _group_completion(B: SkewBrace, f: np.ndarray) -> PairMap:
    """(u, w) ↦ (f_u(w), f_u(w)⁻¹∘u∘w)."""
    u, w = np.indices((B.n, B.n))
    return _pair(f, B.circ(B.cinv(f), u, w))


def braiding_from_brace(B: SkewBrace) -> BraidingExample:
    """σ_a(b) = -a + a∘b with ξ = ζ = r over (X, ∘)."""
    r = PairMap.from_solution(brace_maps(B, 1))
    return BraidingExample(B.mul.op, BraidingTriple(r, r, r), "group")


def deformed_braiding_from_brace(B: SkewBrace, z: int) -> BraidingExample:
    """r from σ^z, ξ from σ^{z∘z}, ζ from σ^z; the second legs follow from (X, ∘)."""
    if not B.flags.two_sided:
        raise PreconditionFailed("two-sided skew brace")
    sz = _sigma_z(B, z)
    r = PairMap.from_solution(solution_from_sigma(B, sz))
    xi = _group_completion(B, _sigma_z(B, int(B.circ(z, z))))
    zeta = _group_completion(B, sz)
    return BraidingExample(B.mul.op, BraidingTriple(r, xi, zeta), "group")


def conjugation_braiding(g) -> BraidingExample:
    """r(a, b) = (b, -b + a + b), ξ = ζ = r over (X, +)."""
    g = as_group(g)
    t, neg = g.table, g.neg_table
    a, b = np.indices((g.n, g.n))
    r = _pair(b, t[t[neg[b], a], b])
    return BraidingExample(g.op, BraidingTriple(r, r, r), "S_i")


def _complete_from_magma(m: np.ndarray, tau: np.ndarray) -> np.ndarray:
    """g[u, w] with g_w(m(x, y)) = m(τ_w(x), τ_w(y)); ``tau[x, w] = τ_w(x)``."""
    n = m.shape[0]
    g = np.full((n, n), -1, dtype=np.int64)
    for x in range(n):
        for y in range(n):
            u = m[x, y]
            val = m[tau[x], tau[y]]  # over w
            fresh = g[u] < 0
            if np.any(~fresh & (g[u] != val)):
                raise PreconditionFailed("second leg of ξ is well defined", (x, y))
            g[u] = val
    if np.any(g < 0):
        raise PreconditionFailed("magma operation is surjective")
    return g


def affine_braiding(g, f: EndoMap) -> BraidingExample:
    """τ_b(a) = -f(b) + f(a) + b, m = f(a) + b, ζ second leg τ_b(a • e)."""
    g = as_group(g)
    if not f.is_bijective():
        raise PreconditionFailed("f bijective")
    if not is_heap_endomorphism(f, g):
        raise PreconditionFailed("f heap endomorphism of (X,+)")
    t, neg, ft = g.table, g.neg_table, f.table
    n = g.n
    a, b = np.indices((n, n))
    m = t[ft[a], b]
    tau = t[t[neg[ft[b]], ft[a]], b]  # tau[a, b] = τ_b(a)
    e = int(f.inverse()(g.zero))
    r = _pair(b, tau)
    zeta = _pair(b, tau[m[:, e]])  # ĝ_b(a) = τ_b(a • e)
    xi = _pair(b, _complete_from_magma(m, tau))
    return BraidingExample(OpTable(m), BraidingTriple(r, xi, zeta), "S_i")


EXAMPLE_KINDS = ("4.1", "4.2", "4.3", "4.4")


def example_braiding(kind: str, *inputs) -> BraidingExample:
    """4.1: (brace); 4.2: (brace, z); 4.3: (group); 4.4: (group, f)."""
    kind = str(kind)
    if kind == "4.1":
        return braiding_from_brace(*inputs)
    if kind == "4.2":
        return deformed_braiding_from_brace(*inputs)
    if kind == "4.3":
        return conjugation_braiding(*inputs)
    if kind == "4.4":
        return affine_braiding(*inputs)
    raise ValueError(f"unknown kind {kind!r}; expected one of {EXAMPLE_KINDS}")
