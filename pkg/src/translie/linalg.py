"""Dense exact matrices and modular linear algebra.

Exact matrices are numpy object arrays holding :class:`fractions.Fraction`
entries.  Modular arrays are ``int64`` arrays with entries in ``[0, p)``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "qmatrix",
    "identity",
    "zeros",
    "matmul",
    "is_zero",
    "is_scalar",
    "trace",
    "rref",
    "rank",
    "nullspace",
    "inverse",
    "det",
    "SparseEchelon",
    "sparse_nullspace",
    "matrix_to_json",
    "matrix_from_json",
    "to_modp",
    "mulmod",
    "rref_mod",
    "rank_mod",
]


def qmatrix(rows: Iterable[Iterable]) -> np.ndarray:
    data = [[Fraction(x) for x in row] for row in rows]
    out = np.empty((len(data), len(data[0]) if data else 0), dtype=object)
    for i, row in enumerate(data):
        for j, x in enumerate(row):
            out[i, j] = x
    return out


def zeros(r: int, c: int | None = None) -> np.ndarray:
    out = np.empty((r, r if c is None else c), dtype=object)
    out.fill(Fraction(0))
    return out


def identity(n: int) -> np.ndarray:
    out = zeros(n)
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def matmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Exact product that skips zero entries of A (seminormal matrices are sparse)."""
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"shape mismatch {A.shape} @ {B.shape}")
    out = zeros(A.shape[0], B.shape[1])
    for i in range(A.shape[0]):
        row = A[i]
        acc = None
        for k in np.flatnonzero(row != 0):
            term = row[k] * B[k]
            acc = term if acc is None else acc + term
        if acc is not None:
            out[i] = acc
    return out


def is_zero(A: np.ndarray) -> bool:
    return not np.any(A != 0)


def is_scalar(A: np.ndarray) -> bool:
    n = A.shape[0]
    return A.shape == (n, n) and is_zero(A - A[0, 0] * identity(n)) if n else True


def trace(A: np.ndarray):
    return sum((A[i, i] for i in range(A.shape[0])), Fraction(0))


def rref(M: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over the rationals."""
    R = np.array(M, dtype=object, copy=True)
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = [i for i in range(r, rows) if R[i, c] != 0]
        if not nz:
            continue
        p = nz[0]
        if p != r:
            R[[r, p]] = R[[p, r]]
        R[r] = R[r] / R[r, c]
        for i in range(rows):
            if i != r and R[i, c] != 0:
                R[i] = R[i] - R[i, c] * R[r]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(M: np.ndarray) -> int:
    return len(rref(M)[1])


def nullspace(M: np.ndarray) -> list[np.ndarray]:
    """Basis of {x : M x = 0}, one vector per free column."""
    R, piv = rref(M)
    cols = M.shape[1]
    free = [c for c in range(cols) if c not in set(piv)]
    basis = []
    for f in free:
        v = np.empty(cols, dtype=object)
        v.fill(Fraction(0))
        v[f] = Fraction(1)
        for k, p in enumerate(piv):
            v[p] = -R[k, f]
        basis.append(v)
    return basis


def inverse(A: np.ndarray) -> np.ndarray:
    n = A.shape[0]
    R, piv = rref(np.hstack([A, identity(n)]))
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return R[:, n:]


def det(A: np.ndarray) -> Fraction:
    R = np.array(A, dtype=object, copy=True)
    n = R.shape[0]
    out = Fraction(1)
    for c in range(n):
        nz = [i for i in range(c, n) if R[i, c] != 0]
        if not nz:
            return Fraction(0)
        p = nz[0]
        if p != c:
            R[[c, p]] = R[[p, c]]
            out = -out
        out *= R[c, c]
        for i in range(c + 1, n):
            if R[i, c] != 0:
                R[i] = R[i] - (R[i, c] / R[c, c]) * R[c]
    return out


class SparseEchelon:
    """Incremental reduced echelon basis of sparse rows ``{column: value}``.

    Works with any exact field type (Fraction, gmpy2.mpq).  Every stored row has
    a 1 at its pivot and zeros at all other pivots.
    """

    def __init__(self):
        self.rows: dict[int, dict] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: dict) -> dict:
        v = dict(v)
        rows = self.rows
        while True:
            hits = [k for k in v if k in rows]
            if not hits:
                return v
            for k in hits:
                c = v.get(k)
                if not c:
                    continue
                for col, x in rows[k].items():
                    nv = v.get(col, 0) - c * x
                    if nv:
                        v[col] = nv
                    else:
                        v.pop(col, None)

    def add(self, v: dict) -> dict | None:
        """Insert v; returns the new reduced row, or None if v was dependent."""
        v = self.reduce(v)
        if not v:
            return None
        piv = min(v)
        c = v[piv]
        v = {k: x / c for k, x in v.items()}
        for row in self.rows.values():
            c = row.get(piv)
            if c:
                for col, x in v.items():
                    nv = row.get(col, 0) - c * x
                    if nv:
                        row[col] = nv
                    else:
                        row.pop(col, None)
        self.rows[piv] = v
        return v


def sparse_nullspace(rows: Iterable[dict], ncols: int) -> list[dict]:
    """Basis of the solutions x of Σ_k row[k] x_k = 0 for every row."""
    E = SparseEchelon()
    for r in rows:
        if r:
            E.add(r)
    out = []
    for f in range(ncols):
        if f in E.rows:
            continue
        v = {f: Fraction(1)}
        for piv, row in E.rows.items():
            x = row.get(f)
            if x:
                v[piv] = -x
        out.append(v)
    return out


def _frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def matrix_to_json(A: np.ndarray) -> list[list[str]]:
    return [[_frac_str(x) for x in row] for row in A]


def matrix_from_json(rows: Sequence[Sequence[str]]) -> np.ndarray:
    return qmatrix([[Fraction(x) for x in row] for row in rows])


# --- modular arithmetic -----------------------------------------------------


def to_modp(A: np.ndarray, p: int) -> np.ndarray:
    """Reduce an exact matrix mod p; raises if some denominator is divisible by p."""
    flat = A.ravel()
    out = np.empty(flat.shape, dtype=np.int64 if p < 2**31 else object)
    for k, x in enumerate(flat):
        x = Fraction(x)
        if x.denominator % p == 0:
            raise ZeroDivisionError(f"denominator {x.denominator} is divisible by p={p}; choose another prime")
        out[k] = x.numerator * pow(x.denominator, -1, p) % p
    return out.reshape(A.shape)


_LIMB = 16
_MASK = (1 << _LIMB) - 1


def mulmod(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """(A @ B) mod p for residue arrays.

    For p < 2^31 the product is split into 16-bit limbs and evaluated with
    float64 BLAS; every partial sum stays below 2^53 and is therefore exact.
    Larger primes go through Python integers.
    """
    if p >= 2**31:
        return (A.astype(object) @ B.astype(object)) % p
    if A.shape[1] > 1 << 20:
        raise ValueError("inner dimension too large for exact float products")
    a0 = (A & _MASK).astype(np.float64)
    a1 = (A >> _LIMB).astype(np.float64)
    b0 = (B & _MASK).astype(np.float64)
    b1 = (B >> _LIMB).astype(np.float64)
    c00 = (a0 @ b0).astype(np.int64) % p
    mid = ((a0 @ b1).astype(np.int64) % p + (a1 @ b0).astype(np.int64) % p) % p
    c11 = (a1 @ b1).astype(np.int64) % p
    shift = (1 << _LIMB) % p
    hi = (c11 * shift) % p
    hi = ((hi + mid) * shift) % p
    return (hi + c00) % p


def rref_mod(M: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p; zero rows are dropped."""
    big = p >= 2**31
    R = np.array(M, dtype=object if big else np.int64, copy=True) % p
    pivots: list[int] = []
    r = 0
    rows, cols = R.shape
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c] != 0)
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            R[[r, k]] = R[[k, r]]
        inv = pow(int(R[r, c]), -1, p)
        R[r] = _scale(R[r], inv, p, big)
        col = R[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col != 0)
        if hit.size:
            R[hit] = (R[hit] - _outer(col[hit], R[r], p, big)) % p
        pivots.append(c)
        r += 1
    return R[:r], pivots


def _scale(v: np.ndarray, s: int, p: int, big: bool) -> np.ndarray:
    if big:
        return (v * s) % p
    lo, hi = v & _MASK, v >> _LIMB
    return ((hi * s % p) * (1 << _LIMB) % p + lo * s % p) % p


def _outer(col: np.ndarray, row: np.ndarray, p: int, big: bool) -> np.ndarray:
    if big:
        return np.outer(col, row) % p
    lo, hi = row & _MASK, row >> _LIMB
    c = col[:, None]
    return ((c * hi[None, :] % p) * (1 << _LIMB) % p + c * lo[None, :] % p) % p


def rank_mod(M: np.ndarray, p: int) -> int:
    return len(rref_mod(M, p)[1])
