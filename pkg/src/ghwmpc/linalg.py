"""Exact dense linear algebra over a :class:`~ghwmpc.gfield.Field`.

Matrices are small (a few hundred columns at most) so everything here is
pure Python over the field's lookup tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .gfield import Field


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class Matrix:
    field: Field
    nrows: int
    ncols: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.rows) != self.nrows or any(len(r) != self.ncols for r in self.rows):
            raise DimensionError(f"entries do not match shape {self.nrows}x{self.ncols}")

    @classmethod
    def from_rows(cls, field: Field, rows: Iterable[Sequence[int]], ncols: int | None = None) -> Matrix:
        rows = tuple(tuple(field.element(int(x)) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise DimensionError("column count required for a matrix with no rows")
            ncols = len(rows[0])
        return cls(field, len(rows), ncols, rows)

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> Matrix:
        return cls(field, nrows, ncols, tuple((0,) * ncols for _ in range(nrows)))

    @classmethod
    def identity(cls, field: Field, n: int) -> Matrix:
        return cls(field, n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def to_numpy(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.uint8).reshape(self.nrows, self.ncols)

    def transpose(self) -> Matrix:
        return Matrix(self.field, self.ncols, self.nrows, tuple(zip(*self.rows)) if self.nrows else
                      tuple(() for _ in range(self.ncols)))

    def columns(self, cols: Sequence[int]) -> Matrix:
        return Matrix(self.field, self.nrows, len(cols), tuple(tuple(r[c] for c in cols) for r in self.rows))

    def select_rows(self, idx: Sequence[int]) -> Matrix:
        return Matrix(self.field, len(idx), self.ncols, tuple(self.rows[i] for i in idx))

    def stack(self, other: Matrix) -> Matrix:
        _check_compatible(self, other)
        return Matrix(self.field, self.nrows + other.nrows, self.ncols, self.rows + other.rows)

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.field != other.field or self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        out = tuple(vecmat(self.field, r, other.rows, other.ncols) for r in self.rows)
        return Matrix(self.field, self.nrows, other.ncols, out)

    def __str__(self):
        return "\n".join(" ".join(str(x) for x in r) for r in self.rows)


def _check_compatible(a: Matrix, b: Matrix) -> None:
    if a.field != b.field:
        raise DimensionError(f"field mismatch: {a.field!r} vs {b.field!r}")
    if a.ncols != b.ncols:
        raise DimensionError(f"column mismatch: {a.ncols} vs {b.ncols}")


def vecmat(F: Field, x: Sequence[int], rows: Sequence[Sequence[int]], ncols: int) -> tuple[int, ...]:
    """The row vector ``x * M`` where ``M`` has the given rows."""
    add, mul = F.add_table, F.mul_table
    acc = [0] * ncols
    for c, row in zip(x, rows):
        if c:
            mc = mul[c]
            acc = [add[a][mc[b]] for a, b in zip(acc, row)]
    return tuple(acc)


def _rref_rows(F: Field, rows: Iterable[Sequence[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    add, mul, neg, inv = F.add_table, F.mul_table, F.neg_table, F.inv_table
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    rank = 0
    for c in range(ncols):
        if rank == len(rows):
            break
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        if prow[c] != 1:
            scale = mul[inv[prow[c]]]
            prow = rows[rank] = [scale[x] for x in prow]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = mul[neg[rows[i][c]]]
                rows[i] = [add[a][f[b]] for a, b in zip(rows[i], prow)]
        pivots.append(c)
        rank += 1
    return rows[:rank], pivots


def rref(M: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form with zero rows dropped, and its pivot columns."""
    rows, pivots = _rref_rows(M.field, M.rows, M.ncols)
    return Matrix(M.field, len(rows), M.ncols, tuple(tuple(r) for r in rows)), pivots


def rank(M: Matrix) -> int:
    return len(_rref_rows(M.field, M.rows, M.ncols)[1])


def kernel(M: Matrix) -> Matrix:
    """Generator (in rref) of the right null space ``{x : M x^T = 0}``."""
    F = M.field
    R, pivots = _rref_rows(F, M.rows, M.ncols)
    pivset = set(pivots)
    basis = []
    for f in range(M.ncols):
        if f in pivset:
            continue
        x = [0] * M.ncols
        x[f] = 1
        for row, pc in zip(R, pivots):
            x[pc] = F.neg_table[row[f]]
        basis.append(x)
    K, _ = _rref_rows(F, basis, M.ncols)
    return Matrix(F, len(K), M.ncols, tuple(tuple(r) for r in K))


def left_kernel(M: Matrix) -> Matrix:
    """Generator of ``{x : x M = 0}``."""
    return kernel(M.transpose())


def row_space_sum(Ma: Matrix, Mb: Matrix) -> Matrix:
    _check_compatible(Ma, Mb)
    return rref(Ma.stack(Mb))[0]


def row_space_intersection(Ma: Matrix, Mb: Matrix) -> Matrix:
    """Zassenhaus: reduce ``[[A, A], [B, 0]]``; rows with a zero left half
    span the intersection in their right half."""
    _check_compatible(Ma, Mb)
    F, n = Ma.field, Ma.ncols
    zero = (0,) * n
    stacked = [r + r for r in Ma.rows] + [r + zero for r in Mb.rows]
    rows, _ = _rref_rows(F, stacked, 2 * n)
    inter = [r[n:] for r in rows if not any(r[:n])]
    return rref(Matrix(F, len(inter), n, tuple(tuple(r) for r in inter)))[0]


def in_row_space(M: Matrix, v: Sequence[int]) -> bool:
    return rank(M.stack(Matrix(M.field, 1, M.ncols, (tuple(v),)))) == rank(M)
