"""Braid generator images s·exp(h s), their algebraic hulls, and the G_n(q) equations.

The image of the braid generator σ_i on λ is X = ρ_λ(s_i) exp(h ρ_λ(s_i)),
computed modulo h^K with q = e^h.  This naive assignment does not satisfy
the braid relations, so checks only involve single letters, words whose
certificates hold letter by letter, or explicitly built tuples.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from . import linalg as la
from .partitions import (
    Partition,
    conjugate,
    dimension,
    en_representatives,
    enumerate_partitions,
    eta,
    fn_set,
    form_sign,
    gamma,
    is_hook,
    self_conjugate,
)
from .seminormal import (
    adjoint_wrt_gram,
    bilinear_form,
    delta_r,
    hook_intertwiner,
    m_map,
    rep_handle,
    rep_perm,
    transposition_images,
)
from .series import SeriesMatrix, TruncSeries, exp_matrix, exp_scalar

__all__ = [
    "braid_image",
    "quadratic_check",
    "det_check",
    "HullClass",
    "hull_classify",
    "hull_table",
    "CertificateReport",
    "table1_certificates",
    "identity_tuple",
    "permutation_tuple",
    "braid_tuple",
    "tuple_product",
    "GnqReport",
    "gnq_membership",
    "infinitesimal_gnq",
    "transposition_blocks",
]


def braid_image(lam: Sequence[int], i: int, K: int) -> SeriesMatrix:
    lam = Partition(lam)
    h = rep_handle(lam)
    if not 1 <= i < lam.n:
        raise ValueError(f"i must lie in 1..{lam.n - 1}")
    s = h.generators[i - 1]
    return SeriesMatrix(list((s @ exp_matrix(s, K)).coeffs), lam)


def quadratic_check(lam: Sequence[int], i: int, K: int) -> bool:
    """(X - q)(X + q^{-1}) = 0 modulo h^K."""
    X = braid_image(lam, i, K)
    q, qinv = exp_scalar(1, K), exp_scalar(-1, K)
    return ((X - q) @ (X + qinv)).is_zero()


def det_check(lam: Sequence[int], K: int) -> bool:
    """det X = η(λ) exp(γ(λ) h) for every generator image."""
    lam = Partition(lam)
    target = exp_scalar(gamma(lam), K) * eta(lam)
    return all(braid_image(lam, i, K).det() == target for i in range(1, lam.n))


@dataclass(frozen=True)
class HullClass:
    G: str
    Gtilde: str
    gamma: int
    eta: int
    form: str | None

    def to_json(self) -> dict:
        return {"G": self.G, "Gtilde": self.Gtilde, "gamma": self.gamma, "eta": self.eta, "form": self.form}


def hull_classify(lam: Sequence[int]) -> HullClass:
    """Hull of the image of the even braid group (G) and of the whole group (Gtilde)."""
    lam = Partition(lam)
    if is_hook(lam):
        raise ValueError(f"{lam} is a hook; only proper partitions are classified")
    g, e = gamma(lam), eta(lam)
    if conjugate(lam) == lam:
        form = "orthogonal" if form_sign(lam) == 1 else "symplectic"
        return HullClass("OSP", "OSPtilde", g, e, form)
    if g != 0:
        return HullClass("GL", "GL", g, e, None)
    return HullClass("SL", "SL" if e == 1 else "SLtilde", g, e, None)


def hull_table(n: int) -> list[dict]:
    rows = []
    for lam in enumerate_partitions(n):
        if is_hook(lam):
            continue
        c = hull_classify(lam)
        rows.append(
            {
                "shape": list(lam),
                "dim": dimension(lam),
                "gamma": c.gamma,
                "eta": c.eta,
                "form": c.form or "",
                "G": c.G,
                "Gtilde": c.Gtilde,
            }
        )
    return rows


# --- even-word certificates ---------------------------------------------------


@dataclass
class CertificateReport:
    n: int
    K: int
    words: list[list[int]] = field(default_factory=list)
    det_checks: int = 0
    form_checks: int = 0
    anti_checks: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def _word_image(lam: Partition, word: Sequence[int], K: int) -> SeriesMatrix:
    X = SeriesMatrix.identity(dimension(lam), K)
    for i in word:
        X = X @ braid_image(lam, i, K)
    return X


def table1_certificates(
    n: int, K: int = 8, trials: int = 4, seed: int = 0, max_dim: int = 16
) -> CertificateReport:
    """Even words: det = 1 when γ = 0 and X^T B X = B when λ = λ'.  Single letters: X^T B X = -B."""
    if n < 3:
        raise ValueError("n must be at least 3")
    rng = random.Random(seed)
    rep = CertificateReport(n, K)
    words = [[rng.randint(1, n - 1) for _ in range(2 * rng.randint(1, 4))] for _ in range(trials)]
    rep.words = words
    for lam in enumerate_partitions(n):
        if dimension(lam) > max_dim:
            continue
        g = gamma(lam)
        sym = conjugate(lam) == lam
        if g != 0 and not sym:
            continue
        B = bilinear_form(lam).B if sym else None
        for w in words:
            X = _word_image(lam, w, K)
            if g == 0:
                rep.det_checks += 1
                if X.det() != TruncSeries.constant(1, K):
                    rep.failures.append(f"det {lam} word {w}")
            if sym:
                rep.form_checks += 1
                if not ((X.T @ B) @ X - SeriesMatrix.constant(B, K)).is_zero():
                    rep.failures.append(f"form {lam} word {w}")
        if sym:
            for i in range(1, n):
                X = braid_image(lam, i, K)
                rep.anti_checks += 1
                if not ((X.T @ B) @ X + SeriesMatrix.constant(B, K)).is_zero():
                    rep.failures.append(f"anti-form {lam} letter {i}")
    return rep


# --- G_n(q) ---------------------------------------------------------------------


def identity_tuple(n: int, K: int) -> dict[Partition, SeriesMatrix]:
    return {lam: SeriesMatrix.identity(dimension(lam), K, lam) for lam in enumerate_partitions(n)}


def permutation_tuple(n: int, sigma: Sequence[int], K: int) -> dict[Partition, SeriesMatrix]:
    """Constant tuple (ρ_λ(σ))_λ."""
    return {lam: SeriesMatrix.constant(rep_perm(rep_handle(lam), sigma), K, lam) for lam in enumerate_partitions(n)}


def braid_tuple(n: int, i: int, K: int) -> dict[Partition, SeriesMatrix]:
    """(ρ_λ(s_i) exp(h ρ_λ(s_i)))_λ, the image of σ_i."""
    return {lam: braid_image(lam, i, K) for lam in enumerate_partitions(n)}


def tuple_product(x: Mapping, y: Mapping) -> dict:
    return {lam: x[lam] @ y[lam] for lam in x}


def _series_adjoint(lam: Partition, X: SeriesMatrix) -> SeriesMatrix:
    return SeriesMatrix([adjoint_wrt_gram(lam, c) for c in X.coeffs], X.label)


def _osp_shapes(n: int, osp_scope: str) -> list[Partition]:
    if osp_scope == "proper":
        return fn_set(n)
    if osp_scope == "all":
        return self_conjugate(n)
    raise ValueError("osp_scope must be 'all' or 'proper'")


def _hook(n: int, r: int) -> Partition:
    return Partition([n - r] + [1] * r)


@dataclass
class GnqReport:
    n: int
    conditions: dict[str, bool]
    failures: dict[str, list[str]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.conditions.values())

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "conditions": dict(self.conditions),
            "failures": {k: list(v) for k, v in self.failures.items()},
            "pass": self.passed,
        }


def gnq_membership(x: Mapping, K: int | None = None, osp_scope: str = "all") -> GnqReport:
    """Test the four defining equations of G_n(q) modulo h^K.

    1. P_λ x_λ'^{-1} = x_λ^# P_λ for λ in E_n^+, with P_λ = M-map of λ'.
    2. x_λ^T B x_λ = B on self-conjugate λ (all of them by default; ``proper``
       restricts to proper ones).
    3. det x_λ = x_[n]^γ(λ) for all λ.
    4. x_[n]^{r-1} x_{α_r} = Λ^r x_α for 1 <= r <= n-1, through the hook intertwiner.
    """
    x = {Partition(k): v for k, v in x.items()}
    if not x:
        raise ValueError("empty tuple")
    n = next(iter(x)).n
    missing = [lam for lam in enumerate_partitions(n) if lam not in x]
    if missing:
        raise ValueError(f"missing blocks: {', '.join(map(str, missing))}")
    Ks = {v.K for v in x.values()}
    if len(Ks) != 1:
        raise ValueError("blocks have different orders")
    K = Ks.pop() if K is None else K
    fails: dict[str, list[str]] = {"1": [], "2": [], "3": [], "4": []}

    for lam in en_representatives(n):
        lc = conjugate(lam)
        P = m_map(lc)  # V_λ' -> V_λ
        lhs = P @ x[lc].inverse()
        rhs = _series_adjoint(lam, x[lam]) @ P
        if not (lhs - rhs).is_zero():
            fails["1"].append(str(lam))

    for lam in _osp_shapes(n, osp_scope):
        B = bilinear_form(lam).B
        X = x[lam]
        if not ((X.T @ B) @ X - SeriesMatrix.constant(B, K)).is_zero():
            fails["2"].append(str(lam))

    triv = x[Partition([n])].entry(0, 0)
    for lam in enumerate_partitions(n):
        g = gamma(lam)
        d = x[lam].det()
        if g < 0:
            # det·x_[n]^|γ| = 1 avoids inverting x_[n]
            ok = d * triv ** (-g) == TruncSeries.constant(1, K)
        else:
            ok = d == triv**g
        if not ok:
            fails["3"].append(str(lam))

    xa = x[_hook(n, 1)]
    for r in range(1, n):
        Q = hook_intertwiner(n, r)
        lhs = Q @ x[_hook(n, r)].scale(triv ** (r - 1))
        rhs = xa.exterior_power(r) @ Q
        if not (lhs - rhs).is_zero():
            fails["4"].append(f"r={r}")

    conds = {k: not v for k, v in fails.items()}
    return GnqReport(n, conds, {k: v for k, v in fails.items() if v})


def transposition_blocks(n: int, i: int = 1, j: int = 2) -> dict[Partition, np.ndarray]:
    """(ρ_λ((i j)))_λ over all λ ⊢ n."""
    return {lam: transposition_images(rep_handle(lam))[i, j] for lam in enumerate_partitions(n)}


def infinitesimal_gnq(u: Mapping, osp_scope: str = "all") -> GnqReport:
    """Linearized equations: P u_λ' = -u_λ^# P, u^T B + B u = 0, tr u_λ = γ(λ) u_[n],
    and Q (u_{α_r} + (r-1) u_[n]) = Δ_r(u_α) Q."""
    u = {Partition(k): v for k, v in u.items()}
    n = next(iter(u)).n
    missing = [lam for lam in enumerate_partitions(n) if lam not in u]
    if missing:
        raise ValueError(f"missing blocks: {', '.join(map(str, missing))}")
    fails: dict[str, list[str]] = {"1": [], "2": [], "3": [], "4": []}
    for lam in en_representatives(n):
        lc = conjugate(lam)
        P = m_map(lc)
        if not la.is_zero(la.matmul(P, u[lc]) + la.matmul(adjoint_wrt_gram(lam, u[lam]), P)):
            fails["1"].append(str(lam))
    for lam in _osp_shapes(n, osp_scope):
        B = bilinear_form(lam).B
        if not la.is_zero(la.matmul(u[lam].T, B) + la.matmul(B, u[lam])):
            fails["2"].append(str(lam))
    t = u[Partition([n])][0, 0]
    for lam in enumerate_partitions(n):
        if la.trace(u[lam]) != gamma(lam) * t:
            fails["3"].append(str(lam))
    ua = u[_hook(n, 1)]
    for r in range(1, n):
        Q = hook_intertwiner(n, r)
        m = u[_hook(n, r)]
        lhs = la.matmul(Q, m + (r - 1) * t * la.identity(m.shape[0]))
        if not la.is_zero(lhs - la.matmul(delta_r(ua, r), Q)):
            fails["4"].append(f"r={r}")
    conds = {k: not v for k, v in fails.items()}
    return GnqReport(n, conds, {k: v for k, v in fails.items() if v})
