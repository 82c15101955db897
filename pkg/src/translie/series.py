"""Power series in h truncated at order K, with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Iterable, Sequence

import numpy as np

from . import linalg as la

__all__ = ["TruncSeries", "SeriesMatrix", "exp_scalar", "exp_matrix"]


class TruncSeries:
    """c_0 + c_1 h + ... + c_{K-1} h^{K-1}, arithmetic modulo h^K."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable, K: int | None = None):
        cs = [Fraction(c) for c in coeffs]
        if K is not None:
            cs = (cs + [Fraction(0)] * K)[:K]
        if not cs:
            raise ValueError("order K must be positive")
        self.coeffs = tuple(cs)

    @property
    def K(self) -> int:
        return len(self.coeffs)

    @classmethod
    def constant(cls, c, K: int) -> "TruncSeries":
        return cls([c], K)

    @classmethod
    def h(cls, K: int) -> "TruncSeries":
        return cls([0, 1], K)

    def _coerce(self, other) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            if other.K != self.K:
                raise ValueError(f"order mismatch {self.K} != {other.K}")
            return other
        return TruncSeries.constant(other, self.K)

    def __add__(self, other):
        o = self._coerce(other)
        return TruncSeries([a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries([-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            c = Fraction(other)
            return TruncSeries([a * c for a in self.coeffs])
        o = self._coerce(other)
        K = self.K
        a, b = self.coeffs, o.coeffs
        return TruncSeries([sum((a[i] * b[k - i] for i in range(k + 1)), Fraction(0)) for k in range(K)])

    __rmul__ = __mul__

    def is_unit(self) -> bool:
        return self.coeffs[0] != 0

    def inverse(self) -> "TruncSeries":
        if not self.is_unit():
            raise ZeroDivisionError("series with zero constant term is not invertible")
        a = self.coeffs
        inv = [1 / a[0]]
        for k in range(1, self.K):
            inv.append(-sum((a[i] * inv[k - i] for i in range(1, k + 1)), Fraction(0)) / a[0])
        return TruncSeries(inv)

    def __truediv__(self, other):
        if isinstance(other, TruncSeries):
            return self * other.inverse()
        return self * (1 / Fraction(other))

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = TruncSeries.constant(1, self.K)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, TruncSeries):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == TruncSeries.constant(other, self.K).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __repr__(self) -> str:
        terms = [f"{c}" + ("" if k == 0 else "*h" if k == 1 else f"*h^{k}") for k, c in enumerate(self.coeffs) if c]
        return (" + ".join(terms) or "0") + f" + O(h^{self.K})"


def exp_scalar(c, K: int) -> TruncSeries:
    """exp(c h) truncated at order K."""
    c = Fraction(c)
    return TruncSeries([c**k / factorial(k) for k in range(K)])


class SeriesMatrix:
    """Square matrix over truncated series, stored as coefficient matrices.

    ``coeffs[k]`` is the exact matrix multiplying h^k.
    """

    __slots__ = ("coeffs", "label")
    __array_ufunc__ = None  # let numpy defer to __rmatmul__

    def __init__(self, coeffs: Sequence[np.ndarray], label=None):
        if not coeffs:
            raise ValueError("order K must be positive")
        shape = coeffs[0].shape
        if any(c.shape != shape for c in coeffs) or shape[0] != shape[1]:
            raise ValueError("coefficients must be square matrices of one shape")
        self.coeffs = tuple(coeffs)
        self.label = label

    @property
    def K(self) -> int:
        return len(self.coeffs)

    @property
    def N(self) -> int:
        return self.coeffs[0].shape[0]

    @classmethod
    def constant(cls, M: np.ndarray, K: int, label=None) -> "SeriesMatrix":
        z = la.zeros(*M.shape)
        return cls([M] + [z] * (K - 1), label)

    @classmethod
    def identity(cls, N: int, K: int, label=None) -> "SeriesMatrix":
        return cls.constant(la.identity(N), K, label)

    @classmethod
    def scalar(cls, s: TruncSeries, N: int, label=None) -> "SeriesMatrix":
        I = la.identity(N)
        return cls([c * I for c in s.coeffs], label)

    def entry(self, i: int, j: int) -> TruncSeries:
        return TruncSeries([c[i, j] for c in self.coeffs])

    def _check(self, other: "SeriesMatrix") -> None:
        if other.K != self.K or other.N != self.N:
            raise ValueError("series matrices differ in order or size")

    def __add__(self, other):
        if isinstance(other, TruncSeries):
            other = SeriesMatrix.scalar(other, self.N)
        self._check(other)
        return SeriesMatrix([a + b for a, b in zip(self.coeffs, other.coeffs)], self.label)

    def __neg__(self):
        return SeriesMatrix([-a for a in self.coeffs], self.label)

    def __sub__(self, other):
        return self + (-other)

    def __matmul__(self, other):
        if isinstance(other, np.ndarray):
            return SeriesMatrix([la.matmul(a, other) for a in self.coeffs], self.label)
        self._check(other)
        K = self.K
        out = []
        for k in range(K):
            acc = la.zeros(self.N)
            for i in range(k + 1):
                a, b = self.coeffs[i], other.coeffs[k - i]
                if la.is_zero(a) or la.is_zero(b):
                    continue
                acc = acc + la.matmul(a, b)
            out.append(acc)
        return SeriesMatrix(out, self.label)

    def __rmatmul__(self, other: np.ndarray):
        return SeriesMatrix([la.matmul(other, a) for a in self.coeffs], self.label)

    def scale(self, s: TruncSeries) -> "SeriesMatrix":
        """s * X for a scalar series s."""
        if s.K != self.K:
            raise ValueError("order mismatch")
        out = []
        for k in range(self.K):
            acc = la.zeros(self.N)
            for i in range(k + 1):
                if s.coeffs[i]:
                    acc = acc + s.coeffs[i] * self.coeffs[k - i]
            out.append(acc)
        return SeriesMatrix(out, self.label)

    @property
    def T(self) -> "SeriesMatrix":
        return SeriesMatrix([c.T.copy() for c in self.coeffs], self.label)

    def is_zero(self) -> bool:
        return all(la.is_zero(c) for c in self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SeriesMatrix):
            return NotImplemented
        return self.K == other.K and self.N == other.N and (self - other).is_zero()

    __hash__ = None

    def trace(self) -> TruncSeries:
        return TruncSeries([la.trace(c) for c in self.coeffs])

    def entries(self) -> list[list[TruncSeries]]:
        return [[self.entry(i, j) for j in range(self.N)] for i in range(self.N)]

    @classmethod
    def from_entries(cls, rows: Sequence[Sequence[TruncSeries]], label=None) -> "SeriesMatrix":
        N = len(rows)
        K = rows[0][0].K
        coeffs = []
        for k in range(K):
            M = la.zeros(N)
            for i in range(N):
                for j in range(N):
                    M[i, j] = rows[i][j].coeffs[k]
            coeffs.append(M)
        return cls(coeffs, label)

    def det(self) -> TruncSeries:
        return _det_entries(self.entries(), self.K)

    def inverse(self) -> "SeriesMatrix":
        """Inverse via X^{-1} = Σ_k (-A0^{-1} E)^k A0^{-1} with X = A0 + E."""
        A0inv = la.inverse(self.coeffs[0])
        E = SeriesMatrix([la.zeros(self.N)] + list(self.coeffs[1:]))
        term = SeriesMatrix.constant(A0inv, self.K)
        step = -(A0inv @ E)  # zero constant term, so the sum stops at K
        out = term
        power = term
        for _ in range(1, self.K):
            power = step @ power
            out = out + power
        return SeriesMatrix(out.coeffs, self.label)

    def exterior_power(self, r: int) -> "SeriesMatrix":
        """Λ^r X: entries are the r x r minors, computed over the series ring."""
        N, K = self.N, self.K
        subsets = list(combinations(range(N), r))
        ent = self.entries()
        rows = [[_det_entries([[ent[i][j] for j in J] for i in I], K) for J in subsets] for I in subsets]
        return SeriesMatrix.from_entries(rows, self.label)


def _det_entries(rows: Sequence[Sequence[TruncSeries]], K: int) -> TruncSeries:
    """Determinant by elimination with unit pivots; Laplace expansion otherwise."""
    N = len(rows)
    if N == 0:
        return TruncSeries.constant(1, K)
    A = [list(r) for r in rows]
    out = TruncSeries.constant(1, K)
    for c in range(N):
        piv = next((i for i in range(c, N) if A[i][c].is_unit()), None)
        if piv is None:
            rest = [row[c:] for row in A[c:]]
            return out * _laplace(rest, K)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            out = -out
        p = A[c][c]
        out = out * p
        inv = p.inverse()
        for i in range(c + 1, N):
            if A[i][c].is_zero():
                continue
            f = A[i][c] * inv
            A[i] = [A[i][j] - f * A[c][j] if j > c else TruncSeries.constant(0, K) for j in range(N)]
    return out


def _laplace(rows: Sequence[Sequence[TruncSeries]], K: int) -> TruncSeries:
    N = len(rows)
    if N == 1:
        return rows[0][0]
    out = TruncSeries.constant(0, K)
    for j in range(N):
        if rows[0][j].is_zero():
            continue
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = rows[0][j] * _laplace(minor, K)
        out = out + term if j % 2 == 0 else out - term
    return out


def exp_matrix(x: np.ndarray, K: int) -> SeriesMatrix:
    """Σ_{k<K} h^k x^k / k!."""
    out = [la.identity(x.shape[0])]
    power = out[0]
    for k in range(1, K):
        power = la.matmul(power, x)
        out.append(power / factorial(k))
    return SeriesMatrix(out)
