"""Matrix-product codes ``[C_1, ..., C_s] . A`` and their structure matrices."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .codes import LinearCode, code_from_generator, is_subcode, min_distance
from .gfield import Field
from .linalg import DimensionError, Matrix


class PreconditionError(ValueError):
    """A mathematical hypothesis of an operation does not hold."""

    def __init__(self, message: str, report: NscReport | None = None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class NscReport:
    is_nsc: bool
    # (t, j_1, ..., j_t) of the first singular minor; columns are 0-based.
    witness: tuple[int, ...] | None = None

    def __bool__(self):
        return self.is_nsc


@dataclass(frozen=True)
class MpcCode:
    constituents: tuple[LinearCode, ...]
    A: Matrix
    code: LinearCode

    @property
    def s(self) -> int:
        return self.A.nrows

    @property
    def h(self) -> int:
        return self.A.ncols

    @property
    def n(self) -> int:
        return self.constituents[0].n

    @property
    def field(self) -> Field:
        return self.A.field

    def is_nested(self) -> bool:
        cs = self.constituents
        return all(is_subcode(cs[i + 1], cs[i]) for i in range(len(cs) - 1))


def product_word(A: Matrix, vs: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """``[v_1, ..., v_s] . A``: block i is ``sum_l a_{l i} v_l``."""
    F = A.field
    add, mul = F.add_table, F.mul_table
    n = len(vs[0])
    out: list[int] = []
    for i in range(A.ncols):
        block = [0] * n
        for l, v in enumerate(vs):
            a = A.rows[l][i]
            if a:
                ma = mul[a]
                block = [add[b][ma[x]] for b, x in zip(block, v)]
        out.extend(block)
    return tuple(out)


def mpc_construct(constituents: Sequence[LinearCode], A: Matrix) -> MpcCode:
    constituents = tuple(constituents)
    s, h = A.shape
    if len(constituents) != s:
        raise DimensionError(f"{len(constituents)} constituents for a {s}x{h} matrix")
    if s > h:
        raise DimensionError(f"matrix has more rows ({s}) than columns ({h})")
    F, n = A.field, constituents[0].n
    for C in constituents:
        if C.field != F or C.n != n:
            raise DimensionError(f"constituent {C!r} does not match {F!r}, n={n}")
    if linalg.rank(A) != s:
        raise PreconditionError(f"structure matrix has rank {linalg.rank(A)} < {s}")
    zero = (0,) * n
    rows = []
    for l, C in enumerate(constituents):
        for v in C.gen.rows:
            vs = [zero] * s
            vs[l] = v
            rows.append(product_word(A, vs))
    code = code_from_generator(F, Matrix(F, len(rows), n * h, tuple(rows)))
    return MpcCode(constituents, A, code)


def is_nsc(A: Matrix) -> NscReport:
    """Check every minor ``A(j_1..j_t)`` of the first t rows, in lexicographic
    ``(t, j_1, ..., j_t)`` order; report the first singular one."""
    s, h = A.shape
    if s > h:
        raise DimensionError(f"NSC needs s <= h, got {s}x{h}")
    for t in range(1, s + 1):
        top = A.select_rows(range(t))
        for cols in itertools.combinations(range(h), t):
            if linalg.rank(top.columns(cols)) < t:
                return NscReport(False, (t, *cols))
    return NscReport(True)


def row_code(A: Matrix, ell: int) -> LinearCode:
    return code_from_generator(A.field, A.select_rows(range(ell)))


def row_code_delta(A: Matrix, ell: int) -> int:
    """Minimum distance of the code spanned by the first ``ell`` rows of A."""
    if not 1 <= ell <= A.nrows:
        raise ValueError(f"ell={ell} outside [1, {A.nrows}]")
    return min_distance(row_code(A, ell))


def is_triangular(A: Matrix) -> bool:
    """Column permutation of an upper triangular matrix: column positions
    0..s-2 can be filled with columns zero below the diagonal."""
    s, h = A.shape
    used: set[int] = set()
    for j in range(s - 1):
        col = next((c for c in range(h) if c not in used
                    and all(A.rows[i][c] == 0 for i in range(j + 1, s))), None)
        if col is None:
            return False
        used.add(col)
    return True


def vandermonde_matrix(F: Field, s: int, nodes: Sequence[int]) -> Matrix:
    nodes = [F.element(x) for x in nodes]
    if len(set(nodes)) != len(nodes):
        raise ValueError(f"repeated Vandermonde nodes {nodes}")
    if s > len(nodes):
        raise ValueError(f"s={s} exceeds {len(nodes)} nodes")
    return Matrix(F, s, len(nodes), tuple(tuple(F.pow(x, i) for x in nodes) for i in range(s)))


def grm_matrix(F: Field) -> Matrix:
    """The q x q matrix of generalized binomials ``binom(a_j, a_i)`` over the
    canonical element order; row i holds the i-th Newton basis polynomial
    evaluated at every field element."""
    q = F.q
    rows = []
    for i in range(q):
        den = 1
        for l in range(i):
            den = F.mul(den, F.sub(i, l))
        row = []
        for j in range(q):
            num = 1
            for l in range(i):
                num = F.mul(num, F.sub(j, l))
            row.append(F.div(num, den))
        rows.append(tuple(row))
    return Matrix(F, q, q, tuple(rows))
