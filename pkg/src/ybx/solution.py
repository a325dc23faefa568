"""Set-theoretic solutions r(a, b) = (σ_a(b), τ_b(a)) of the braid equation.

Storage: ``sigma[a, b] = σ_a(b)`` and ``tau[b, a] = τ_b(a)``, so row ``a`` of
``sigma`` is σ_a and row ``b`` of ``tau`` is τ_b.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import (
    CarrierMismatch,
    NotLeftNonDegenerate,
    NotASolution,
    NotAShelf,
    NotShelfHom,
    SearchRefused,
)
from .finset import EndoMap, OpTable, find_isomorphism
from .shelf import is_shelf, is_shelf_homomorphism

EQUIVALENCE_CAP = 8


def _table(data, n: Optional[int], name: str) -> np.ndarray:
    arr = np.array(data, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"{name} must be a square table, got shape {arr.shape}")
    if n is not None and arr.shape[0] != n:
        raise ValueError(f"{name} has size {arr.shape[0]}, expected {n}")
    if arr.min() < 0 or arr.max() >= arr.shape[0]:
        raise ValueError(f"{name} has entries out of range")
    arr.setflags(write=False)
    return arr


class Solution:
    __slots__ = ("sigma", "tau")

    def __init__(self, sigma, tau):
        self.sigma = _table(sigma, None, "sigma")
        self.tau = _table(tau, self.sigma.shape[0], "tau")

    @classmethod
    def from_map(cls, n: int, fn: Callable[[int, int], tuple]) -> "Solution":
        sigma = np.empty((n, n), dtype=np.int64)
        tau = np.empty((n, n), dtype=np.int64)
        for a in range(n):
            for b in range(n):
                x, y = fn(a, b)
                sigma[a, b] = x
                tau[b, a] = y
        return cls(sigma, tau)

    @classmethod
    def flip(cls, n: int) -> "Solution":
        ident = np.tile(np.arange(n), (n, 1))
        return cls(ident, ident)

    @property
    def n(self) -> int:
        return self.sigma.shape[0]

    def __call__(self, a: int, b: int) -> tuple[int, int]:
        return int(self.sigma[a, b]), int(self.tau[b, a])

    def sigma_map(self, a: int) -> EndoMap:
        return EndoMap(self.sigma[a])

    def tau_map(self, b: int) -> EndoMap:
        return EndoMap(self.tau[b])

    def pairs(self) -> np.ndarray:
        """(n, n, 2) array whose [a, b] entry is r(a, b)."""
        return np.stack([self.sigma, self.tau.T], axis=-1)

    def __eq__(self, other):
        return (isinstance(other, Solution) and np.array_equal(self.sigma, other.sigma)
                and np.array_equal(self.tau, other.tau))

    def __hash__(self):
        return hash((self.sigma.tobytes(), self.tau.tobytes()))

    def __repr__(self):
        return f"Solution(sigma={self.sigma.tolist()}, tau={self.tau.tolist()})"


# ---------------------------------------------------------------------------
# braid verification


def _first(mask: np.ndarray) -> Optional[tuple]:
    hits = np.argwhere(mask)
    return tuple(int(i) for i in hits[0]) if hits.size else None


@dataclass(frozen=True)
class BraidReport:
    braid: bool
    failed: Optional[str] = None
    witness: Optional[tuple] = None
    direct: bool = True

    def __bool__(self):
        return self.braid


def braid_condition_defects(s: Solution) -> dict[str, np.ndarray]:
    """Boolean [a, b, c] arrays, True where (bI), (bII), (bIII) fail."""
    n, S, T = s.n, s.sigma, s.tau
    a, b, c = np.indices((n, n, n))
    s_ab = S[a, b]
    t_ba = T[b, a]
    s_bc = S[b, c]
    t_cb = T[c, b]
    # σ_a σ_b = σ_{σ_a(b)} σ_{τ_b(a)}
    b1 = S[a, s_bc] != S[s_ab, S[t_ba, c]]
    # σ_{τ_{σ_b(c)}(a)} τ_c(b) = τ_{σ_{τ_b(a)}(c)} σ_a(b)
    b2 = S[T[s_bc, a], t_cb] != T[S[t_ba, c], s_ab]
    # τ_c τ_b = τ_{τ_c(b)} τ_{σ_b(c)}
    b3 = T[c, t_ba] != T[t_cb, T[s_bc, a]]
    return {"bI": b1, "bII": b2, "bIII": b3}


def braid_identity_holds(s: Solution) -> bool:
    """(r×id)(id×r)(r×id) = (id×r)(r×id)(id×r) on X³, by direct composition."""
    n, S, T = s.n, s.sigma, s.tau
    a, b, c = np.indices((n, n, n))

    def r12(x, y, z):
        return S[x, y], T[y, x], z

    def r23(x, y, z):
        return x, S[y, z], T[z, y]

    lhs = r12(*r23(*r12(a, b, c)))
    rhs = r23(*r12(*r23(a, b, c)))
    return all(np.array_equal(u, v) for u, v in zip(lhs, rhs))


def verify_braid(s: Solution) -> BraidReport:
    defects = braid_condition_defects(s)
    direct = braid_identity_holds(s)
    for name, mask in defects.items():
        w = _first(mask)
        if w is not None:
            return BraidReport(False, name, w, direct)
    return BraidReport(True, None, None, direct)


def is_braid_solution(s: Solution) -> bool:
    return not any(m.any() for m in braid_condition_defects(s).values())


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class SolutionReport:
    braid: BraidReport
    left_nd: bool
    right_nd: bool
    bijective: bool
    involutive: bool
    idempotent: bool
    square_free: bool

    @property
    def non_degenerate(self) -> bool:
        return self.left_nd and self.right_nd


def _rows_bijective(t: np.ndarray) -> bool:
    n = t.shape[0]
    return all(len(np.unique(row)) == n for row in t)


def _square(s: Solution) -> tuple[np.ndarray, np.ndarray]:
    """r∘r as two [a, b] arrays."""
    x, y = s.sigma, s.tau.T
    return s.sigma[x, y], s.tau[y, x]


def classify_solution(s: Solution) -> SolutionReport:
    n = s.n
    codes = s.sigma * n + s.tau.T
    bijective = len(np.unique(codes)) == n * n
    u, v = _square(s)
    a, b = np.indices((n, n))
    involutive = bool(np.array_equal(u, a) and np.array_equal(v, b))
    idempotent = bool(np.array_equal(u, s.sigma) and np.array_equal(v, s.tau.T))
    diag = np.arange(n)
    square_free = bool(np.array_equal(s.sigma[diag, diag], diag) and np.array_equal(s.tau[diag, diag], diag))
    return SolutionReport(
        braid=verify_braid(s),
        left_nd=_rows_bijective(s.sigma),
        right_nd=_rows_bijective(s.tau),
        bijective=bijective,
        involutive=involutive,
        idempotent=idempotent,
        square_free=square_free,
    )


def _require_left_nd(s: Solution):
    if not _rows_bijective(s.sigma):
        raise NotLeftNonDegenerate("some σ_a is not a bijection")


def _inverse_rows(t: np.ndarray) -> np.ndarray:
    n = t.shape[0]
    inv = np.empty_like(t)
    inv[np.arange(n)[:, None], t] = np.arange(n)[None, :]
    return inv


def associated_shelf(s: Solution) -> OpTable:
    """a ▷ b = σ_a τ_{σ⁻¹_b(a)}(b)."""
    _require_left_nd(s)
    n = s.n
    sinv = _inverse_rows(s.sigma)
    a, b = np.indices((n, n))
    return OpTable(s.sigma[a, s.tau[sinv[b, a], b]])


# ---------------------------------------------------------------------------
# maps on X × X


class PairMap:
    """A map X×X → Y×Y stored as ``table[a, b] = (x, y)``, Y of size ``m``."""

    __slots__ = ("table", "m")

    def __init__(self, table, m: Optional[int] = None):
        arr = np.array(table, dtype=np.int64)
        if arr.ndim != 3 or arr.shape[0] != arr.shape[1] or arr.shape[2] != 2:
            raise ValueError(f"pair table must have shape (n, n, 2), got {arr.shape}")
        m = arr.shape[0] if m is None else m
        if arr.size and (arr.min() < 0 or arr.max() >= m):
            raise ValueError("pair table has entries out of range")
        arr.setflags(write=False)
        self.table = arr
        self.m = m

    @classmethod
    def identity(cls, n: int) -> "PairMap":
        return cls(np.stack(np.indices((n, n)), axis=-1))

    @classmethod
    def from_solution(cls, s: Solution) -> "PairMap":
        return cls(s.pairs())

    @classmethod
    def product(cls, f: EndoMap, g: Optional[EndoMap] = None, m: Optional[int] = None) -> "PairMap":
        """f × g."""
        g = f if g is None else g
        a, b = np.indices((f.n, f.n))
        return cls(np.stack([f.table[a], g.table[b]], axis=-1), m)

    @property
    def n(self) -> int:
        return self.table.shape[0]

    def __call__(self, a: int, b: int) -> tuple[int, int]:
        x, y = self.table[a, b]
        return int(x), int(y)

    def is_bijective(self) -> bool:
        if self.n != self.m:
            return False
        codes = self.table[..., 0] * self.m + self.table[..., 1]
        return len(np.unique(codes)) == self.n * self.n

    def inverse(self) -> "PairMap":
        if not self.is_bijective():
            raise ValueError("pair map is not bijective")
        inv = np.empty_like(self.table)
        x, y = self.table[..., 0], self.table[..., 1]
        inv[x, y] = np.stack(np.indices((self.n, self.n)), axis=-1)
        return PairMap(inv)

    def then(self, other) -> "PairMap":
        """``other ∘ self``; ``other`` may be a PairMap or a Solution."""
        if isinstance(other, Solution):
            other = PairMap.from_solution(other)
        if other.n != self.m:
            raise CarrierMismatch("pair maps do not compose")
        x, y = self.table[..., 0], self.table[..., 1]
        return PairMap(other.table[x, y], other.m)

    def __eq__(self, other):
        return isinstance(other, PairMap) and self.m == other.m and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.m, self.table.tobytes()))

    def __repr__(self):
        return f"PairMap(n={self.n}, m={self.m})"


def is_D_homomorphism(phi: PairMap, r: Solution, s: Solution) -> bool:
    """φ ∘ r = s ∘ φ pointwise."""
    if phi.n != r.n or phi.m != s.n:
        return False
    return PairMap.from_solution(r).then(phi) == phi.then(s)


@dataclass(frozen=True)
class ConjugatorCertificate:
    phi: PairMap
    phi_inv: PairMap
    derived: Solution
    holds: bool


def derived_conjugator(s: Solution) -> ConjugatorCertificate:
    """φ(a, b) = (a, σ_a(b)), intertwining ``s`` with its derived solution."""
    _require_left_nd(s)
    a, _ = np.indices((s.n, s.n))
    phi = PairMap(np.stack([a, s.sigma], axis=-1))
    shelf = associated_shelf(s)
    # built without the shelf check so non-solutions still get a verdict
    derived = Solution(np.tile(np.arange(s.n), (s.n, 1)), shelf.table)
    return ConjugatorCertificate(phi, phi.inverse(), derived, is_D_homomorphism(phi, s, derived))


def is_equivalence(f: EndoMap, r: Solution, s: Solution) -> bool:
    """(f×f) r = s (f×f)."""
    ft = f.table
    fx = np.ix_(ft, ft)
    return bool(np.array_equal(ft[r.sigma], s.sigma[fx]) and np.array_equal(ft[r.tau], s.tau[fx]))


@dataclass(frozen=True)
class Comparison:
    equivalent: Optional[EndoMap]
    d_isomorphic_via_derived: bool
    shelf_isomorphism: Optional[EndoMap] = None


def find_equivalence(r: Solution, s: Solution) -> Optional[EndoMap]:
    if r.n != s.n:
        raise CarrierMismatch(f"carriers differ: {r.n} vs {s.n}")
    if r.n > EQUIVALENCE_CAP:
        raise SearchRefused(f"equivalence search is capped at n <= {EQUIVALENCE_CAP}")
    for perm in itertools.permutations(range(r.n)):
        f = EndoMap(perm)
        if is_equivalence(f, r, s):
            return f
    return None


def compare_solutions(r: Solution, s: Solution) -> Comparison:
    equivalent = find_equivalence(r, s)
    iso = None
    if _rows_bijective(r.sigma) and _rows_bijective(s.sigma):
        iso = find_isomorphism(associated_shelf(r), associated_shelf(s))
    return Comparison(equivalent, iso is not None, iso)


# ---------------------------------------------------------------------------
# twists


class TwistAssignment:
    """a ↦ φ_a over a base shelf; ``phi[a, b] = φ_a(b)``."""

    __slots__ = ("shelf", "phi")

    def __init__(self, shelf: OpTable, phi):
        self.shelf = shelf if isinstance(shelf, OpTable) else OpTable(shelf)
        self.phi = _table(phi, self.shelf.n, "phi")
        if not _rows_bijective(self.phi):
            a = next(i for i in range(self.n) if len(np.unique(self.phi[i])) < self.n)
            raise ValueError(f"φ_{a} is not a bijection")

    @classmethod
    def identity(cls, shelf: OpTable) -> "TwistAssignment":
        return cls(shelf, np.tile(np.arange(shelf.n), (shelf.n, 1)))

    @property
    def n(self) -> int:
        return self.shelf.n

    def phi_map(self, a: int) -> EndoMap:
        return EndoMap(self.phi[a])

    def automorphism_defect(self) -> Optional[tuple]:
        """First (a, b, c) with φ_a(b ▷ c) != φ_a(b) ▷ φ_a(c)."""
        t, p = self.shelf.table, self.phi
        a, b, c = np.indices((self.n,) * 3)
        return _first(p[a, t[b, c]] != t[p[a, b], p[a, c]])

    def twist_identity_defect(self) -> Optional[tuple]:
        """First (a, b, c) where φ_aφ_b(c) != φ_xφ_y(c), x = φ_a(b), y = φ⁻¹_x(x ▷ a)."""
        t, p = self.shelf.table, self.phi
        pinv = _inverse_rows(p)
        a, b, c = np.indices((self.n,) * 3)
        x = p[a, b]
        y = pinv[x, t[x, a]]
        return _first(p[a, p[b, c]] != p[x, p[y, c]])

    def is_twist(self) -> bool:
        return self.automorphism_defect() is None and self.twist_identity_defect() is None

    def nondegeneracy_criterion(self) -> bool:
        """For all b, c there is a with φ_{φ_a(b)}(c) = φ_a(b) ▷ a."""
        t, p = self.shelf.table, self.phi
        a, b, c = np.indices((self.n,) * 3)
        x = p[a, b]
        return bool((p[x, c] == t[x, a]).any(axis=0).all())

    def __eq__(self, other):
        return (isinstance(other, TwistAssignment) and self.shelf == other.shelf
                and np.array_equal(self.phi, other.phi))

    def __hash__(self):
        return hash((self.shelf, self.phi.tobytes()))

    def __repr__(self):
        return f"TwistAssignment(phi={self.phi.tolist()})"


def extract_twist(s: Solution) -> TwistAssignment:
    _require_left_nd(s)
    report = verify_braid(s)
    if not report.braid:
        raise NotASolution(f"{report.failed} fails at {report.witness}")
    tw = TwistAssignment(associated_shelf(s), s.sigma)
    if not tw.is_twist():
        raise NotASolution("σ is not a twist of the associated shelf")
    return tw


def build_from_twist(shelf: OpTable, phi) -> Solution:
    """r(a, b) = (φ_a(b), φ⁻¹_x(x ▷ a)) with x = φ_a(b)."""
    if not is_shelf(shelf):
        raise NotAShelf("base operation is not left self-distributive")
    phi = phi.phi if isinstance(phi, TwistAssignment) else TwistAssignment(shelf, phi).phi
    n = shelf.n
    pinv = _inverse_rows(phi)
    a, b = np.indices((n, n))
    x = phi[a, b]
    tau_ab = pinv[x, shelf.table[x, a]]  # τ_b(a) at [a, b]
    return Solution(phi, tau_ab.T)


@dataclass(frozen=True)
class DHomCertificate:
    phi: PairMap
    holds: bool


def induced_D_hom(f: EndoMap, phi: TwistAssignment, psi: TwistAssignment) -> DHomCertificate:
    """Φ(a, b) = (f(a), ψ⁻¹_{f(a)} f φ_a(b)) from a shelf map f."""
    if not is_shelf_homomorphism(f, phi.shelf, psi.shelf):
        raise NotShelfHom("f does not preserve the base operations")
    ft = f.table
    pinv = _inverse_rows(psi.phi)
    a, b = np.indices((phi.n, phi.n))
    second = pinv[ft[a], ft[phi.phi[a, b]]]
    Phi = PairMap(np.stack([ft[a], second], axis=-1), psi.n)
    r = build_from_twist(phi.shelf, phi)
    s = build_from_twist(psi.shelf, psi)
    return DHomCertificate(Phi, is_D_homomorphism(Phi, r, s))


# ---------------------------------------------------------------------------
# single-operation structures


@dataclass(frozen=True)
class StructurePredicates:
    cycle_set: bool
    twisted_ward: bool


def structure_predicates(op: OpTable) -> StructurePredicates:
    t = op.table
    a, b, c = np.indices((op.n,) * 3)
    cyc = np.array_equal(t[t[a, b], t[a, c]], t[t[b, a], t[b, c]])
    ward = np.array_equal(t[t[a, b], t[a, c]], t[t[b, b], t[b, c]])
    return StructurePredicates(bool(cyc and op.left_translations_bijective()), bool(ward))


def sigma_inverse_table(s: Solution) -> OpTable:
    """a · b = σ⁻¹_a(b)."""
    _require_left_nd(s)
    return OpTable(_inverse_rows(s.sigma))


# ---------------------------------------------------------------------------
# exhaustive census


def _all_maps(n: int) -> np.ndarray:
    return np.array(list(itertools.product(range(n), repeat=n)), dtype=np.int64)


def sigma_assignments(n: int) -> np.ndarray:
    """All left non-degenerate σ families, as (n!)^n stacked (n, n) tables."""
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    choice = np.array(list(itertools.product(range(len(perms)), repeat=n)), dtype=np.int64)
    return perms[choice]


def tau_candidates(n: int) -> np.ndarray:
    """All n^(n·n) τ families as stacked (n, n) tables."""
    maps = _all_maps(n)
    choice = np.array(list(itertools.product(range(len(maps)), repeat=n)), dtype=np.int64)
    return maps[choice]


def braid_mask(sigma: np.ndarray, taus: np.ndarray) -> np.ndarray:
    """Which τ families in ``taus`` complete ``sigma`` to a braid solution."""
    k, n, _ = taus.shape
    S = sigma
    idx = np.arange(k)[:, None]
    a, b, c = (x.ravel() for x in np.indices((n, n, n)))

    def T(y, x):
        return taus[idx, y, x]

    # left side: r12 r23 r12
    x1, y1 = S[a, b], T(b, a)
    y2, z2 = S[y1, c], T(c, y1)
    l1, l2 = S[x1, y2], T(y2, x1)
    # right side: r23 r12 r23
    u1, v1 = S[b, c], T(c, b)
    p, q = S[a, u1], T(u1, a)
    m2, m3 = S[q, v1], T(v1, q)
    ok = (l1 == p[None, :]) & (l2 == m2) & (z2 == m3)
    return ok.all(axis=1)


def census_for_sigmas(sigmas: np.ndarray, taus: np.ndarray) -> list[Solution]:
    found = []
    for sigma in sigmas:
        for tau in taus[braid_mask(sigma, taus)]:
            s = Solution(sigma, tau)
            if is_braid_solution(s):
                found.append(s)
    return found


def solution_key(s: Solution) -> tuple:
    return tuple(s.sigma.ravel().tolist()) + tuple(s.tau.ravel().tolist())


def enumerate_left_nd_solutions(n: int) -> list[Solution]:
    """Every left non-degenerate braid solution on n ≤ 3 points, sorted."""
    if n > 3:
        raise SearchRefused("exhaustive solution census is limited to n <= 3")
    found = census_for_sigmas(sigma_assignments(n), tau_candidates(n))
    return sorted(found, key=solution_key)
