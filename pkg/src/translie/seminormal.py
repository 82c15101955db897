"""Young's seminormal matrices and the structures they preserve.

Matrices act on column vectors indexed by the standard tableaux of a shape in
canonical order: ``M[S, T]`` is the coefficient of ``S`` in ``s . T``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Sequence

import numpy as np

from . import linalg as la
from .partitions import Partition, conjugate, form_sign
from .tableaux import (
    StandardTableau,
    axial_distance,
    conjugate_tableau,
    enumerate_syt,
    swap,
    weight_w,
    weight_zeta,
)

__all__ = [
    "RepHandle",
    "rep_handle",
    "rep_gen",
    "transposition",
    "reduced_word",
    "rep_perm",
    "CoxeterReport",
    "verify_coxeter",
    "sum_transpositions",
    "GramData",
    "gram",
    "BilinearData",
    "bilinear_form",
    "m_map",
    "solve_intertwiner",
    "exterior_power",
    "exterior_power_rep",
    "delta_r",
    "permutation_matrix",
    "HookIsoReport",
    "hook_iso_check",
    "hook_intertwiner",
    "adjoint_wrt_gram",
]


def _freeze(A: np.ndarray) -> np.ndarray:
    A.flags.writeable = False
    return A


def _generator(basis: Sequence[StandardTableau], index: dict, r: int) -> np.ndarray:
    N = len(basis)
    M = la.zeros(N)
    for k, T in enumerate(basis):
        (cr, lr), (cs, ls) = T.positions[r - 1], T.positions[r]
        if cr == cs:
            M[k, k] = Fraction(1)
        elif lr == ls:
            M[k, k] = Fraction(-1)
        else:
            d = axial_distance(T, r + 1, r)
            other = index[swap(T, r).positions]
            if d > 0:
                # T < T_r: s.T = -T/d + (d-1)/d T_r
                M[k, k] = Fraction(-1, d)
                M[other, k] = Fraction(d - 1, d)
            else:
                # T_r < T with distance e = -d: s.T = T/e + (e+1)/e T_r
                e = -d
                M[k, k] = Fraction(1, e)
                M[other, k] = Fraction(e + 1, e)
    return _freeze(M)


@dataclass(frozen=True)
class RepHandle:
    shape: Partition
    basis: tuple[StandardTableau, ...]
    generators: tuple[np.ndarray, ...]

    @property
    def n(self) -> int:
        return self.shape.n

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self, T: StandardTableau) -> int:
        return self.basis.index(T)


@lru_cache(maxsize=None)
def _handle(shape: Partition) -> RepHandle:
    basis = tuple(enumerate_syt(shape))
    index = {T.positions: k for k, T in enumerate(basis)}
    gens = tuple(_generator(basis, index, r) for r in range(1, shape.n))
    return RepHandle(shape, basis, gens)


def rep_handle(lam: Sequence[int]) -> RepHandle:
    return _handle(Partition(lam))


def rep_gen(lam: Sequence[int], r: int) -> np.ndarray:
    """ρ_λ(s_r) for the adjacent transposition s_r = (r r+1)."""
    h = rep_handle(lam)
    if not 1 <= r < h.n:
        raise ValueError(f"r must lie in 1..{h.n - 1}")
    return h.generators[r - 1]


def transposition(n: int, i: int, j: int) -> tuple[int, ...]:
    """One-line notation of (i j) on 1..n."""
    perm = list(range(1, n + 1))
    perm[i - 1], perm[j - 1] = j, i
    return tuple(perm)


def reduced_word(sigma: Sequence[int]) -> list[int]:
    """Indices r with σ = s_{r_1} s_{r_2} ... (composition right to left)."""
    perm = list(sigma)
    if sorted(perm) != list(range(1, len(perm) + 1)):
        raise ValueError(f"not a permutation: {sigma}")
    word: list[int] = []
    # peel descents on the right: σ = (σ s_i) s_i
    while True:
        for i in range(len(perm) - 1):
            if perm[i] > perm[i + 1]:
                perm[i], perm[i + 1] = perm[i + 1], perm[i]
                word.append(i + 1)
                break
        else:
            return word[::-1]


def rep_perm(h: RepHandle, sigma: Sequence[int]) -> np.ndarray:
    if len(sigma) != h.n:
        raise ValueError("permutation size does not match the shape")
    out = la.identity(h.dim)
    for r in reduced_word(sigma):
        out = la.matmul(out, h.generators[r - 1])
    return out


@dataclass
class CoxeterReport:
    shape: Partition
    passed: bool
    failure: str | None = None
    checked: int = 0


def verify_coxeter(h: RepHandle) -> CoxeterReport:
    g = h.generators
    I = la.identity(h.dim)
    checked = 0
    for a in range(len(g)):
        if not la.is_zero(la.matmul(g[a], g[a]) - I):
            return CoxeterReport(h.shape, False, f"s_{a + 1}^2 != 1", checked)
        checked += 1
        for b in range(a + 1, len(g)):
            if b == a + 1:
                lhs = la.matmul(la.matmul(g[a], g[b]), g[a])
                rhs = la.matmul(la.matmul(g[b], g[a]), g[b])
                name = f"s_{a + 1} s_{b + 1} s_{a + 1} != s_{b + 1} s_{a + 1} s_{b + 1}"
            else:
                lhs, rhs = la.matmul(g[a], g[b]), la.matmul(g[b], g[a])
                name = f"s_{a + 1} s_{b + 1} != s_{b + 1} s_{a + 1}"
            if not la.is_zero(lhs - rhs):
                return CoxeterReport(h.shape, False, name, checked)
            checked += 1
    return CoxeterReport(h.shape, True, None, checked)


def transposition_images(h: RepHandle) -> dict[tuple[int, int], np.ndarray]:
    """ρ((i j)) for all i < j, built by conjugating adjacent generators."""
    out = {}
    g = h.generators
    for i in range(1, h.n):
        out[i, i + 1] = g[i - 1]
    for gap in range(2, h.n):
        for i in range(1, h.n - gap + 1):
            j = i + gap
            # (i j) = s_{j-1} (i j-1) s_{j-1}
            s = g[j - 2]
            out[i, j] = la.matmul(la.matmul(s, out[i, j - 1]), s)
    return out


def sum_transpositions(h: RepHandle) -> tuple[np.ndarray, Fraction]:
    """Σ_{i<j} ρ((i j)) and the scalar it equals."""
    total = la.zeros(h.dim)
    for m in transposition_images(h).values():
        total = total + m
    if not la.is_scalar(total):
        raise AssertionError(f"sum of transpositions is not scalar on {h.shape}")
    return total, Fraction(total[0, 0])


@dataclass(frozen=True)
class GramData:
    shape: Partition
    G: np.ndarray

    def is_invariant(self) -> bool:
        h = rep_handle(self.shape)
        return all(la.is_zero(la.matmul(la.matmul(s.T, self.G), s) - self.G) for s in h.generators)


@lru_cache(maxsize=None)
def _gram(shape: Partition) -> GramData:
    basis = rep_handle(shape).basis
    G = la.zeros(len(basis))
    for k, T in enumerate(basis):
        G[k, k] = 1 / weight_zeta(T)
    return GramData(shape, _freeze(G))


def gram(lam: Sequence[int]) -> GramData:
    """Diagonal invariant scalar product <T, T> = 1/ζ(T)."""
    return _gram(Partition(lam))


@dataclass(frozen=True)
class BilinearData:
    shape: Partition
    B: np.ndarray
    sign: int

    def is_twisted_invariant(self) -> bool:
        """ρ(s)^T B = -B ρ(s) for every adjacent generator."""
        h = rep_handle(self.shape)
        return all(la.is_zero(la.matmul(s.T, self.B) + la.matmul(self.B, s)) for s in h.generators)


@lru_cache(maxsize=None)
def _bilinear(shape: Partition) -> BilinearData:
    sign = form_sign(shape)
    h = rep_handle(shape)
    index = {T.positions: k for k, T in enumerate(h.basis)}
    B = la.zeros(h.dim)
    for k, T in enumerate(h.basis):
        B[index[conjugate_tableau(T).positions], k] = Fraction(weight_w(T))
    return BilinearData(shape, _freeze(B), sign)


def bilinear_form(lam: Sequence[int]) -> BilinearData:
    """(S|T) = w(T) δ_{S,T'} on a self-conjugate shape."""
    lam = Partition(lam)
    if conjugate(lam) != lam:
        raise ValueError(f"{lam} is not self-conjugate")
    return _bilinear(lam)


@lru_cache(maxsize=None)
def _m_map(shape: Partition) -> np.ndarray:
    src = rep_handle(shape)
    dst = rep_handle(conjugate(shape))
    index = {T.positions: k for k, T in enumerate(dst.basis)}
    M = la.zeros(dst.dim, src.dim)
    for k, T in enumerate(src.basis):
        Tc = conjugate_tableau(T)
        M[index[Tc.positions], k] = weight_w(T) * weight_zeta(Tc)
    return _freeze(M)


def m_map(lam: Sequence[int]) -> np.ndarray:
    """M: V_λ -> V_λ', T ↦ w(T) ζ(T') T'.  Satisfies M ρ_λ(s) = -ρ_λ'(s) M."""
    return _m_map(Partition(lam))


def solve_intertwiner(
    gens_a: Sequence[np.ndarray], gens_b: Sequence[np.ndarray], seed: int = 0
) -> np.ndarray | None:
    """An invertible P with P A_i = B_i P for all i, or None.

    When the solution space is a line, P is normalized so that its first
    nonzero entry (row-major) is 1.  Otherwise a seeded random combination of
    the solution basis is tried until an invertible one appears.
    """
    if len(gens_a) != len(gens_b):
        raise ValueError("generator lists differ in length")
    if not gens_a:
        return None
    na, nb = gens_a[0].shape[0], gens_b[0].shape[0]
    if na != nb:
        return None
    n = na
    rows = []
    for A, B in zip(gens_a, gens_b):
        a_nz = [(k, b, A[k, b]) for k, b in zip(*np.nonzero(A != 0))]
        b_nz = [(a, k, B[a, k]) for a, k in zip(*np.nonzero(B != 0))]
        eqs: dict[tuple[int, int], dict[int, Fraction]] = {}
        # (P A)[a, b] = Σ_k P[a, k] A[k, b]
        for k, b, x in a_nz:
            for a in range(n):
                e = eqs.setdefault((a, b), {})
                e[a * n + k] = e.get(a * n + k, 0) + x
        # (B P)[a, b] = Σ_k B[a, k] P[k, b]
        for a, k, x in b_nz:
            for b in range(n):
                e = eqs.setdefault((a, b), {})
                e[k * n + b] = e.get(k * n + b, 0) - x
        rows.extend({c: v for c, v in e.items() if v} for e in eqs.values())
    basis = la.sparse_nullspace(rows, n * n)
    if not basis:
        return None

    def to_matrix(v: dict) -> np.ndarray:
        P = la.zeros(n)
        for c, x in v.items():
            P[divmod(c, n)] = Fraction(x)
        return P

    if len(basis) == 1:
        P = to_matrix(basis[0])
        first = P.ravel()[np.flatnonzero(P.ravel() != 0)[0]]
        P = P / first
        return P if la.rank(P) == n else None
    rng = random.Random(seed)
    for _ in range(8):
        combo: dict[int, Fraction] = {}
        for v in basis:
            c = rng.randint(1, 97)
            for k, x in v.items():
                combo[k] = combo.get(k, 0) + c * x
        P = to_matrix(combo)
        if la.rank(P) == n:
            return P
    return None


def exterior_power(x: np.ndarray, r: int) -> np.ndarray:
    """Λ^r x on the wedge basis e_I, I ranging over sorted r-subsets."""
    N = x.shape[0]
    if not 0 <= r <= N:
        raise ValueError(f"r must lie in 0..{N}")
    subsets = list(combinations(range(N), r))
    out = la.zeros(len(subsets))
    for a, I in enumerate(subsets):
        for b, J in enumerate(subsets):
            out[a, b] = la.det(x[np.ix_(I, J)]) if r else Fraction(1)
    return out


def delta_r(x: np.ndarray, r: int) -> np.ndarray:
    """The derivation Σ_k 1 ∧ ... ∧ x ∧ ... ∧ 1 on the r-th exterior power."""
    N = x.shape[0]
    if not 1 <= r <= N:
        raise ValueError(f"r must lie in 1..{N}")
    subsets = list(combinations(range(N), r))
    index = {I: a for a, I in enumerate(subsets)}
    out = la.zeros(len(subsets))
    for b, J in enumerate(subsets):
        for pos, j in enumerate(J):
            for k in np.flatnonzero(x[:, j] != 0):
                k = int(k)
                if k in J and k != j:
                    continue
                new = list(J)
                new[pos] = k
                # sign of the sort permutation
                inv = sum(1 for u in range(r) for v in range(u + 1, r) if new[u] > new[v])
                I = tuple(sorted(new))
                out[index[I], b] += (-1) ** inv * x[k, j]
    return out


def exterior_power_rep(h: RepHandle, r: int) -> list[np.ndarray]:
    if not 1 <= r <= h.dim:
        raise ValueError(f"r must lie in 1..{h.dim}")
    return [exterior_power(g, r) for g in h.generators]


def permutation_matrix(sigma: Sequence[int]) -> np.ndarray:
    """Matrix of e_k ↦ e_{σ(k)}."""
    n = len(sigma)
    P = la.zeros(n)
    for k, s in enumerate(sigma):
        P[s - 1, k] = Fraction(1)
    return P


@dataclass
class HookIsoReport:
    n: int
    r: int
    passed: bool
    failures: list[str] = field(default_factory=list)


def _hook(n: int, r: int) -> Partition:
    return Partition([n - r] + [1] * r)


@lru_cache(maxsize=None)
def hook_intertwiner(n: int, r: int) -> np.ndarray | None:
    """P with P (ρ_{α_r}(s) + (r-1)) = Δ_r(ρ_α(s)) P for all adjacent s.

    Here α = [n-1, 1] and α_r = [n-r, 1^r].  The same P intertwines ρ_{α_r}
    with Λ^r ρ_α because each ρ_α(s) is a reflection.
    """
    alpha = rep_handle(_hook(n, 1))
    target = rep_handle(_hook(n, r))
    shift = (r - 1) * la.identity(target.dim)
    src = [g + shift for g in target.generators]
    dst = [delta_r(g, r) for g in alpha.generators]
    return solve_intertwiner(src, dst)


def hook_iso_check(n: int, r: int) -> HookIsoReport:
    if n < 3 or not 1 <= r <= n - 1:
        raise ValueError("need n >= 3 and 1 <= r <= n-1")
    rep = HookIsoReport(n, r, True)
    shift = (r - 1) * la.identity(comb(n, r))
    for i in range(1, n):
        beta = permutation_matrix(transposition(n, i, i + 1))
        if not la.is_zero(delta_r(beta, r) - exterior_power(beta, r) - shift):
            rep.failures.append(f"permutation module, s_{i}")
    P = hook_intertwiner(n, r)
    if P is None:
        rep.failures.append("no intertwiner between the hook and the exterior power")
    if rep.failures:
        rep.passed = False
    return rep


def adjoint_wrt_gram(lam: Sequence[int], x: np.ndarray) -> np.ndarray:
    """x^# = G^{-1} x^T G for the invariant scalar product G."""
    G = gram(lam).G
    if x.shape != G.shape:
        raise ValueError("dimension mismatch")
    d = np.array([G[k, k] for k in range(G.shape[0])], dtype=object)
    return (x.T * d[None, :]) / d[:, None]
