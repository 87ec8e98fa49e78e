"""Reed-Solomon and Reed-Muller codes, and the recursive Reed-Muller identity."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .codes import LinearCode, code_from_generator, full_space, zero_code
from .gfield import GF, Field, field_new
from .linalg import Matrix
from .mpc import MpcCode, grm_matrix, mpc_construct


def rs_code(F: Field, n: int, k: int, points: Sequence[int] | None = None) -> LinearCode:
    """Evaluations of polynomials of degree < k at n distinct points.

    Points default to the first n field elements in canonical order.
    """
    if not 1 <= k <= n <= F.q:
        raise ValueError(f"need 1 <= k <= n <= q, got k={k}, n={n}, q={F.q}")
    points = list(range(n)) if points is None else [F.element(x) for x in points]
    if len(points) != n or len(set(points)) != n:
        raise ValueError(f"need {n} distinct evaluation points, got {points}")
    rows = [tuple(F.pow(x, i) for x in points) for i in range(k)]
    return code_from_generator(F, Matrix(F, k, n, tuple(rows)))


def rm_points(F: Field, m: int) -> list[tuple[int, ...]]:
    # Lexicographic, first variable most significant.
    return list(itertools.product(range(F.q), repeat=m))


def rm_monomials(F: Field, nu: int, m: int) -> list[tuple[int, ...]]:
    """Reduced exponent vectors of total degree <= nu, graded lex order."""
    exps = [e for e in itertools.product(range(F.q), repeat=m) if sum(e) <= nu]
    return sorted(exps, key=lambda e: (sum(e), tuple(-x for x in e)))


def rm_code(F: Field, nu: int, m: int) -> LinearCode:
    """``RM_q(nu, m)``: evaluations of reduced polynomials of degree <= nu."""
    n = F.q**m
    if nu < 0:
        return zero_code(F, n)
    if nu >= m * (F.q - 1):
        return full_space(F, n)
    pts = rm_points(F, m)
    rows = []
    for e in rm_monomials(F, nu, m):
        row = []
        for pt in pts:
            v = 1
            for x, a in zip(pt, e):
                v = F.mul(v, F.pow(x, a))
            row.append(v)
        rows.append(tuple(row))
    return code_from_generator(F, Matrix(F, len(rows), n, tuple(rows)))


def rm_recursive_mpc(F: Field, nu: int, m: int) -> MpcCode:
    """``[RM(nu, m-1), ..., RM(nu-q+1, m-1)] . GRM_q``."""
    if m < 1:
        raise ValueError("recursion needs m >= 1")
    parts = [rm_code(F, nu - i, m - 1) for i in range(F.q)]
    return mpc_construct(parts, grm_matrix(F))


def rm_recursive_rhs(F: Field, nu: int, m: int) -> LinearCode:
    return rm_recursive_mpc(F, nu, m).code


@dataclass(frozen=True)
class RsSpec:
    field: Field
    n: int
    k: int
    points: tuple[int, ...] | None = None

    def build(self) -> LinearCode:
        return rs_code(self.field, self.n, self.k, self.points)


@dataclass(frozen=True)
class RmSpec:
    field: Field
    nu: int
    m: int

    def build(self) -> LinearCode:
        return rm_code(self.field, self.nu, self.m)


def parse_family(literal: str) -> RsSpec | RmSpec:
    """Parse ``rs:q=2^2,n=4,k=2`` or ``rm:q=3^1,nu=2,m=2``.

    ``q`` may also be a plain prime power; RS codes accept
    ``points=0;1;3`` for custom evaluation points.
    """
    kind, _, body = literal.partition(":")
    try:
        params = dict(item.split("=", 1) for item in body.split(",") if item)
        F = parse_q(params.pop("q"))
        if kind == "rs":
            pts = params.pop("points", None)
            spec = RsSpec(F, int(params.pop("n")), int(params.pop("k")),
                          tuple(int(x) for x in pts.split(";")) if pts else None)
        elif kind == "rm":
            spec = RmSpec(F, int(params.pop("nu")), int(params.pop("m")))
        else:
            raise ValueError(f"unknown family {kind!r}")
    except (KeyError, ValueError) as exc:
        raise ValueError(f"bad family literal {literal!r}: {exc}") from None
    if params:
        raise ValueError(f"bad family literal {literal!r}: unexpected {sorted(params)}")
    return spec


def parse_q(text: str) -> Field:
    if "^" in text:
        p, m = text.split("^", 1)
        return field_new(int(p), int(m))
    return GF(int(text))
