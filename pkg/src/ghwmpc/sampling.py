"""Random small codes and structure matrices for property checks."""

from __future__ import annotations

import random

from .codes import LinearCode, code_from_generator
from .gfield import Field
from .linalg import Matrix
from .mpc import is_nsc


def random_matrix(F: Field, rows: int, cols: int, rng: random.Random) -> Matrix:
    return Matrix(F, rows, cols, tuple(tuple(rng.randrange(F.q) for _ in range(cols)) for _ in range(rows)))


def random_code(F: Field, n: int, k: int, rng: random.Random) -> LinearCode:
    """A uniformly drawn code of length n and dimension exactly k."""
    while True:
        C = code_from_generator(F, random_matrix(F, k, n, rng))
        if C.k == k:
            return C


def random_subcode(C: LinearCode, k: int, rng: random.Random) -> LinearCode:
    while True:
        coeffs = random_matrix(C.field, k, C.k, rng)
        D = code_from_generator(C.field, coeffs @ C.gen)
        if D.k == k:
            return D


def random_nested(F: Field, n: int, dims: list[int], rng: random.Random) -> list[LinearCode]:
    """Codes ``C_1 ⊇ C_2 ⊇ ...`` with the given non-increasing dimensions."""
    out = [random_code(F, n, dims[0], rng)]
    for k in dims[1:]:
        out.append(random_subcode(out[-1], k, rng) if k else code_from_generator(F, Matrix(F, 0, n, ())))
    return out


def random_nsc(F: Field, s: int, h: int, rng: random.Random, tries: int = 10_000) -> Matrix:
    for _ in range(tries):
        A = random_matrix(F, s, h, rng)
        if is_nsc(A):
            return A
    raise RuntimeError(f"no {s}x{h} NSC matrix found over {F!r}")
