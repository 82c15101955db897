"""Standard Young tableaux in the column convention of :mod:`translie.partitions`."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .partitions import Partition, conjugate

__all__ = [
    "StandardTableau",
    "enumerate_syt",
    "syt_index",
    "axial_distance",
    "swap",
    "precedes_swap",
    "weight_w",
    "weight_zeta",
    "conjugate_tableau",
    "column_superstandard",
]


class StandardTableau:
    """A standard filling of a diagram.

    ``positions[r-1]`` is the cell ``(column, line)`` holding entry ``r``.
    """

    __slots__ = ("shape", "positions", "_cell_to_entry")

    def __init__(self, shape: Sequence[int], positions: Sequence[tuple[int, int]]):
        self.shape = Partition(shape)
        self.positions = tuple((int(c), int(l)) for c, l in positions)
        self._cell_to_entry = {cell: r for r, cell in enumerate(self.positions, 1)}
        self._validate()

    def _validate(self) -> None:
        sh = self.shape
        expected = {(i, j) for i, x in enumerate(sh, 1) for j in range(1, x + 1)}
        if len(self.positions) != sh.n or set(self.positions) != expected:
            raise ValueError("positions do not fill the diagram exactly once")
        for (i, j), r in self._cell_to_entry.items():
            right = self._cell_to_entry.get((i + 1, j))
            up = self._cell_to_entry.get((i, j + 1))
            if (right is not None and right < r) or (up is not None and up < r):
                raise ValueError("entries must increase along lines and columns")

    @property
    def n(self) -> int:
        return len(self.positions)

    def column(self, r: int) -> int:
        return self.positions[r - 1][0]

    def line(self, r: int) -> int:
        return self.positions[r - 1][1]

    def entry_at(self, i: int, j: int) -> int | None:
        return self._cell_to_entry.get((i, j))

    def key(self) -> tuple[int, ...]:
        return tuple(x for cell in self.positions for x in cell)

    def __eq__(self, other) -> bool:
        return isinstance(other, StandardTableau) and self.positions == other.positions

    def __hash__(self) -> int:
        return hash(self.positions)

    def __lt__(self, other: "StandardTableau") -> bool:
        return self.key() < other.key()

    def __repr__(self) -> str:
        return f"StandardTableau({list(self.shape)}, {list(self.positions)})"

    def render(self) -> str:
        """Lines of the diagram, top line first; entry r sits in column c_r."""
        height = self.shape[0] if self.shape else 0
        width = len(self.shape)
        w = len(str(self.n))
        rows = []
        for j in range(height, 0, -1):
            row = []
            for i in range(1, width + 1):
                e = self.entry_at(i, j)
                row.append(str(e).rjust(w) if e is not None else " " * w)
            rows.append(" ".join(row).rstrip())
        return "\n".join(rows)

    def to_json(self) -> dict:
        return {
            "shape": list(self.shape),
            "cells": [[r, c, l] for r, (c, l) in enumerate(self.positions, 1)],
        }

    @classmethod
    def from_json(cls, data: dict) -> "StandardTableau":
        cells = sorted(data["cells"])
        return cls(data["shape"], [(c, l) for _, c, l in cells])


@lru_cache(maxsize=None)
def _syt(shape: Partition) -> tuple[StandardTableau, ...]:
    n = shape.n
    out: list[tuple[tuple[int, int], ...]] = []
    filled = [0] * len(shape)
    pos: list[tuple[int, int]] = []

    def rec() -> None:
        if len(pos) == n:
            out.append(tuple(pos))
            return
        for i in range(len(shape)):
            j = filled[i] + 1
            if j <= shape[i] and (i == 0 or filled[i - 1] >= j):
                filled[i] = j
                pos.append((i + 1, j))
                rec()
                pos.pop()
                filled[i] = j - 1

    rec()
    # canonical order: lexicographic on (c_1, l_1, c_2, l_2, ...)
    out.sort(key=lambda t: tuple(x for cell in t for x in cell))
    return tuple(StandardTableau(shape, p) for p in out)


def enumerate_syt(shape: Sequence[int]) -> list[StandardTableau]:
    return list(_syt(Partition(shape)))


@lru_cache(maxsize=None)
def _index(shape: Partition) -> dict:
    return {t.positions: k for k, t in enumerate(_syt(shape))}


def syt_index(T: StandardTableau) -> int:
    """Position of T in the canonical order of its shape."""
    return _index(T.shape)[T.positions]


def axial_distance(T: StandardTableau, i: int, j: int) -> int:
    """d_T(i, j) = c_i - c_j + l_j - l_i."""
    if not (1 <= i <= T.n and 1 <= j <= T.n):
        raise ValueError(f"entries must lie in 1..{T.n}")
    (ci, li), (cj, lj) = T.positions[i - 1], T.positions[j - 1]
    return ci - cj + lj - li


def swap(T: StandardTableau, r: int) -> StandardTableau | None:
    """T_r, or None when r and r+1 share a line or a column."""
    if not 1 <= r < T.n:
        raise ValueError(f"r must lie in 1..{T.n - 1}")
    a, b = T.positions[r - 1], T.positions[r]
    if a[0] == b[0] or a[1] == b[1]:
        return None
    pos = list(T.positions)
    pos[r - 1], pos[r] = b, a
    return StandardTableau(T.shape, pos)


def precedes_swap(T: StandardTableau, r: int) -> bool:
    """T < T_r, i.e. d_T(r+1, r) > 0."""
    return axial_distance(T, r + 1, r) > 0


def _inverted_pairs(T: StandardTableau):
    pos = T.positions
    for i in range(len(pos)):
        for j in range(i + 1, len(pos)):
            if pos[i][0] > pos[j][0]:
                yield i + 1, j + 1


def weight_w(T: StandardTableau) -> int:
    """(-1) to the number of pairs i < j with c_i > c_j."""
    return -1 if sum(1 for _ in _inverted_pairs(T)) % 2 else 1


def weight_zeta(T: StandardTableau) -> Fraction:
    """Product of (d-1)/(d+1) over pairs i < j with c_i > c_j, d = d_T(i, j)."""
    out = Fraction(1)
    for i, j in _inverted_pairs(T):
        d = axial_distance(T, i, j)
        assert d >= 2, "inverted pair with axial distance below 2"
        out *= Fraction(d - 1, d + 1)
    return out


def conjugate_tableau(T: StandardTableau) -> StandardTableau:
    return StandardTableau(conjugate(T.shape), [(l, c) for c, l in T.positions])


def column_superstandard(shape: Sequence[int]) -> StandardTableau:
    """Filling column by column: 1..λ_1 in column 1, and so on."""
    shape = Partition(shape)
    return StandardTableau(shape, [(i, j) for i, x in enumerate(shape, 1) for j in range(1, x + 1)])
