"""Partitions and Young diagram combinatorics.

Drawing convention: part ``λ_i`` is the length of column ``i``.  A cell is a
pair ``(i, j)`` with ``i`` the column and ``j`` the line, and belongs to the
diagram iff ``j <= λ_i``.  With this convention ``[n]`` is a single column and
labels the trivial representation.  This is the transpose of the usual
English/French row convention.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Partition",
    "PartitionClass",
    "parse_partition",
    "conjugate",
    "diagonal_length",
    "descents",
    "remove_at",
    "predecessors",
    "diagram_union",
    "diagram_intersection",
    "is_hook",
    "classify",
    "cells",
    "dimension",
    "dimension_recursive",
    "dab",
    "dim_dab",
    "dim_dab_recursive",
    "shifts",
    "shift_count",
    "form_sign",
    "xi",
    "gamma",
    "eta",
    "enumerate_partitions",
    "en_representatives",
    "fn_set",
    "self_conjugate",
    "osp_dim",
    "predicted_theorem_a_dim",
    "find_self_conjugate",
]


class Partition(tuple):
    """Weakly decreasing tuple of positive integers.

    Hashes and compares equal to the plain tuple of its parts.  Ordering is by
    size first, then lexicographic on the parts.
    """

    def __new__(cls, parts: Iterable[int] = ()):
        if isinstance(parts, Partition):
            return parts
        parts = tuple(int(p) for p in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p <= 0 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def n(self) -> int:
        return sum(self)

    def _key(self):
        return (self.n, tuple(self))

    def __lt__(self, other):
        return self._key() < Partition(other)._key()

    def __le__(self, other):
        return self._key() <= Partition(other)._key()

    def __gt__(self, other):
        return self._key() > Partition(other)._key()

    def __ge__(self, other):
        return self._key() >= Partition(other)._key()

    __hash__ = tuple.__hash__

    def __eq__(self, other):
        return tuple.__eq__(self, other)

    def __ne__(self, other):
        return tuple.__ne__(self, other)

    def __repr__(self) -> str:
        return f"Partition({list(self)})"

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self)) + "]"

    def conjugate(self) -> "Partition":
        return conjugate(self)


_TOKEN = re.compile(r"^(\d+)(?:\^(\d+))?$")


def parse_partition(text: str) -> Partition:
    """Parse ``[4,2,1]`` or the exponent shorthand ``[4,2^3]``."""
    s = text.strip()
    if s.startswith("[") and s.endswith("]"):
        s = s[1:-1]
    s = s.replace(" ", "")
    if not s:
        return Partition(())
    parts: list[int] = []
    for tok in s.split(","):
        m = _TOKEN.match(tok)
        if m is None:
            raise ValueError(f"malformed partition: {text!r}")
        value, rep = int(m.group(1)), int(m.group(2) or 1)
        parts.extend([value] * rep)
    return Partition(parts)


def conjugate(lam: Sequence[int]) -> Partition:
    lam = Partition(lam)
    if not lam:
        return lam
    return Partition(sum(1 for x in lam if x >= r) for r in range(1, lam[0] + 1))


def diagonal_length(lam: Sequence[int]) -> int:
    """b(λ): the largest i with λ_i >= i."""
    lam = Partition(lam)
    if not lam:
        raise ValueError("diagonal length of the empty partition")
    return max(i for i, x in enumerate(lam, 1) if x >= i)


def descents(lam: Sequence[int]) -> list[int]:
    """Indices r (1-based) with λ_r > λ_{r+1}; these are the removable cells."""
    lam = Partition(lam)
    padded = tuple(lam) + (0,)
    return [r for r in range(1, len(lam) + 1) if padded[r - 1] > padded[r]]


def remove_at(lam: Sequence[int], r: int) -> Partition:
    lam = Partition(lam)
    if r not in descents(lam):
        raise ValueError(f"{r} is not a descent of {lam}")
    parts = list(lam)
    parts[r - 1] -= 1
    return Partition(parts)


def predecessors(lam: Sequence[int]) -> list[Partition]:
    """All μ obtained from λ by removing one cell."""
    return [remove_at(lam, r) for r in descents(lam)]


def _pad(a: Sequence[int], b: Sequence[int]):
    k = max(len(a), len(b))
    return list(a) + [0] * (k - len(a)), list(b) + [0] * (k - len(b))


def diagram_union(lam: Sequence[int], mu: Sequence[int]) -> Partition:
    a, b = _pad(Partition(lam), Partition(mu))
    return Partition(max(x, y) for x, y in zip(a, b))


def diagram_intersection(lam: Sequence[int], mu: Sequence[int]) -> Partition:
    a, b = _pad(Partition(lam), Partition(mu))
    return Partition(min(x, y) for x, y in zip(a, b))


def is_hook(lam: Sequence[int]) -> bool:
    return diagonal_length(lam) == 1


@dataclass(frozen=True)
class PartitionClass:
    tag: str  # "Hook", "ProperAsym" or "ProperSym"
    is_lex_representative: bool | None = None


def classify(lam: Sequence[int]) -> PartitionClass:
    lam = Partition(lam)
    if is_hook(lam):
        return PartitionClass("Hook")
    lc = conjugate(lam)
    if lc == lam:
        return PartitionClass("ProperSym")
    # tuples compare like zero-padded sequences for partitions of equal size
    return PartitionClass("ProperAsym", tuple(lam) < tuple(lc))


def cells(lam: Sequence[int]) -> list[tuple[int, int]]:
    """Cells (column, line) of the diagram."""
    return [(i, j) for i, x in enumerate(Partition(lam), 1) for j in range(1, x + 1)]


def dimension(lam: Sequence[int]) -> int:
    """Number of standard tableaux, by the product formula on l_i = λ_i + r - i."""
    lam = Partition(lam)
    r = len(lam)
    if r == 0:
        return 1
    ls = [x + r - i for i, x in enumerate(lam, 1)]
    num = factorial(sum(lam)) * prod(ls[i] - ls[j] for i in range(r) for j in range(i + 1, r))
    den = prod(factorial(x) for x in ls)
    q, rem = divmod(num, den)
    assert rem == 0
    return q


@lru_cache(maxsize=None)
def _dim_rec(lam: Partition) -> int:
    if sum(lam) <= 1:
        return 1
    return sum(_dim_rec(mu) for mu in predecessors(lam))


def dimension_recursive(lam: Sequence[int]) -> int:
    """Dimension via the branching rule dim λ = Σ_{μ ↗ λ} dim μ."""
    return _dim_rec(Partition(lam))


def dab(a: int, b: int) -> Partition:
    """The diagram [a+2, 2, 1^b]."""
    if a < 0 or b < 0:
        raise ValueError("a and b must be nonnegative")
    return Partition([a + 2, 2] + [1] * b)


def dim_dab(a: int, b: int) -> int:
    """Closed form (b+1)/(a+2) * C(n-2, a) * n with n = a+b+4."""
    n = a + b + 4
    value = Fraction(b + 1, a + 2) * comb(n - 2, a) * n
    assert value.denominator == 1
    return int(value)


@lru_cache(maxsize=None)
def dim_dab_recursive(a: int, b: int) -> int:
    """N_{a,b} = N_{a-1,b} + N_{a,b-1} + C(a+b+2, b+1), N = 0 off the quadrant."""
    if a < 0 or b < 0:
        return 0
    return dim_dab_recursive(a - 1, b) + dim_dab_recursive(a, b - 1) + comb(a + b + 2, b + 1)


def shifts(lam: Sequence[int]) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Cell pairs (i1, j1), (i2, j2) with i1 < i2 and j1 > j2."""
    cs = cells(lam)
    return [(c1, c2) for c1 in cs for c2 in cs if c1[0] < c2[0] and c1[1] > c2[1]]


def shift_count(lam: Sequence[int]) -> int:
    return len(shifts(lam))


def form_sign(lam: Sequence[int]) -> int:
    """+1 (orthogonal) or -1 (symplectic) for a self-conjugate λ."""
    lam = Partition(lam)
    if conjugate(lam) != lam:
        raise ValueError(f"{lam} is not self-conjugate")
    return -1 if shift_count(lam) % 2 else 1


def xi(lam: Sequence[int]) -> Fraction:
    """Product of (d-1)/(d+1) over shifts, d = |i1 - i2 + j2 - j1|.

    With this orientation ζ(T)ζ(T') = xi(λ) for every standard T of a
    self-conjugate shape.
    """
    out = Fraction(1)
    for (i1, j1), (i2, j2) in shifts(lam):
        d = abs(i1 - i2 + j2 - j1)
        out *= Fraction(d - 1, d + 1)
    return out


def gamma(lam: Sequence[int]) -> int:
    """Character value on a transposition, from the content sum."""
    lam = Partition(lam)
    n = lam.n
    if n < 2:
        raise ValueError("gamma needs |λ| >= 2")
    content = sum(j - i for i, j in cells(lam))
    q, rem = divmod(2 * dimension(lam) * content, n * (n - 1))
    assert rem == 0
    return q


def eta(lam: Sequence[int]) -> int:
    """Determinant of the image of a transposition: (-1)^((dim - γ)/2)."""
    diff = dimension(lam) - gamma(lam)
    if diff % 2:
        raise AssertionError(f"dim and gamma of {lam} have different parity")
    return -1 if (diff // 2) % 2 else 1


def enumerate_partitions(n: int) -> list[Partition]:
    """All partitions of n, lexicographically decreasing."""

    def rec(m: int, cap: int) -> Iterator[tuple[int, ...]]:
        if m == 0:
            yield ()
            return
        for k in range(min(m, cap), 0, -1):
            for rest in rec(m - k, k):
                yield (k,) + rest

    if n < 0:
        raise ValueError("n must be nonnegative")
    return [Partition(p) for p in rec(n, n)]


def en_representatives(n: int) -> list[Partition]:
    """One partition per {λ, λ'} class of proper non-self-conjugate λ ⊢ n."""
    out = []
    for lam in enumerate_partitions(n):
        c = classify(lam)
        if c.tag == "ProperAsym" and c.is_lex_representative:
            out.append(lam)
    return sorted(out, key=tuple)


def fn_set(n: int) -> list[Partition]:
    """Proper self-conjugate partitions of n."""
    return sorted((lam for lam in enumerate_partitions(n) if classify(lam).tag == "ProperSym"), key=tuple)


def self_conjugate(n: int) -> list[Partition]:
    """All self-conjugate partitions of n, hooks included."""
    return sorted((lam for lam in enumerate_partitions(n) if conjugate(lam) == lam), key=tuple)


def osp_dim(lam: Sequence[int]) -> int:
    N = dimension(lam)
    return N * (N - 1) // 2 if form_sign(lam) == 1 else N * (N + 1) // 2


def predicted_theorem_a_dim(n: int) -> int:
    """Dimension of sl_{n-1} × Π sl(λ) × Π osp(λ) over E_n/~ and F_n."""
    if n < 3:
        raise ValueError("n must be at least 3")
    total = (n - 1) ** 2 - 1
    total += sum(dimension(lam) ** 2 - 1 for lam in en_representatives(n))
    total += sum(osp_dim(lam) for lam in fn_set(n))
    return total


def find_self_conjugate(n: int) -> Partition:
    """A self-conjugate λ ⊢ n; proper whenever n >= 4 is even.

    Even n = 2p gives [p, 2, 1^(p-2)], odd n = 2p+1 gives the hook [p+1, 1^p].
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    p, odd = divmod(n, 2)
    if odd:
        lam = Partition([p + 1] + [1] * p)
    else:
        lam = Partition([p, 2] + [1] * (p - 2))
    assert conjugate(lam) == lam and lam.n == n
    return lam
