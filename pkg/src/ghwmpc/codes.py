"""Linear codes, supports, block shortening and exact generalized Hamming weights.

Two independent exact routes compute ``d_r(C)``:

``subspaces``
    Walk every ``r``-dimensional subcode once, as a canonical rref matrix of
    coefficients, and take the smallest support.  The support of a subcode is
    the union of the supports of its generator rows.

``columns``
    ``d_r(C) = n - max{|T| : rank G[:, T] <= k - r}``.  A set ``T`` of
    coordinates with ``rank G[:, T] = rho`` leaves ``k - rho`` dimensions of
    codewords vanishing on ``T``.  The maximum is searched depth first over
    column sets that are closed under span, which gives the whole hierarchy
    in one pass.

``auto`` picks whichever has the smaller candidate count.
"""

from __future__ import annotations

import functools
import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from . import linalg
from .gfield import Field
from .linalg import DimensionError, Matrix

DEFAULT_SCALE_GUARD = 10**7
_PARALLEL_THRESHOLD = 200_000


class ScaleGuardError(RuntimeError):
    """An exhaustive computation would exceed the configured candidate budget."""


class EmptyCodeError(ValueError):
    pass


def scale_guard() -> int:
    raw = os.environ.get("GHWMPC_SCALE_GUARD")
    return int(float(raw)) if raw else DEFAULT_SCALE_GUARD


@dataclass(frozen=True)
class LinearCode:
    """A linear code given by its generator in canonical rref form.

    Two codes are equal iff they are the same subspace.  Build instances with
    :func:`code_from_generator`; the raw constructor does not canonicalize.
    """

    field: Field
    n: int
    gen: Matrix

    @property
    def k(self) -> int:
        return self.gen.nrows

    @property
    def q(self) -> int:
        return self.field.q

    def __repr__(self):
        return f"LinearCode({self.field!r}, n={self.n}, k={self.k})"


def code_from_generator(F: Field, M: Matrix | Sequence[Sequence[int]], n: int | None = None) -> LinearCode:
    if not isinstance(M, Matrix):
        M = Matrix.from_rows(F, M, n)
    if M.field != F:
        raise DimensionError(f"matrix over {M.field!r}, expected {F!r}")
    R, _ = linalg.rref(M)
    return LinearCode(F, M.ncols, R)


def zero_code(F: Field, n: int) -> LinearCode:
    return LinearCode(F, n, Matrix(F, 0, n, ()))


def full_space(F: Field, n: int) -> LinearCode:
    return LinearCode(F, n, Matrix.identity(F, n))


def _check_pair(Ca: LinearCode, Cb: LinearCode) -> None:
    if Ca.field != Cb.field or Ca.n != Cb.n:
        raise DimensionError(f"incompatible codes {Ca!r} and {Cb!r}")


# -- codewords and supports -------------------------------------------------

def gaussian_binomial(k: int, r: int, q: int) -> int:
    """Number of r-dimensional subspaces of GF(q)^k."""
    if r < 0 or r > k:
        return 0
    num = den = 1
    for i in range(r):
        num *= q ** (k - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def _span_array(F: Field, rows: Sequence[Sequence[int]], n: int) -> np.ndarray:
    """All combinations of ``rows``; combination ``x`` sits at index sum x_j q^j."""
    out = np.zeros((1, n), dtype=np.uint8)
    for g in rows:
        g = np.asarray(g, dtype=np.intp)
        blocks = [out] + [F.np_add[out, F.np_mul[a][g]] for a in range(1, F.q)]
        out = np.concatenate(blocks, axis=0)
    return out


def iter_codeword_chunks(C: LinearCode, chunk: int = 1 << 16) -> Iterator[np.ndarray]:
    """Yield every codeword (as rows of uint8 arrays) in blocks; order is by
    message index ``sum x_j q^j``."""
    F, rows = C.field, C.gen.rows
    head = 0
    while head < C.k and F.q ** (head + 1) <= chunk:
        head += 1
    base = _span_array(F, rows[:head], C.n)
    tail = rows[head:]
    if not tail:
        yield base
        return
    for t in range(F.q ** len(tail)):
        x = []
        for _ in tail:
            t, d = divmod(t, F.q)
            x.append(d)
        offset = np.asarray(linalg.vecmat(F, x, tail, C.n), dtype=np.intp)
        yield F.np_add[base, offset]


def codewords(C: LinearCode) -> np.ndarray:
    if C.q ** C.k > scale_guard():
        raise ScaleGuardError(f"{C.q}^{C.k} codewords exceed the scale guard")
    return np.concatenate(list(iter_codeword_chunks(C)), axis=0)


def _bitmasks(nonzero: np.ndarray) -> list[int]:
    n = nonzero.shape[1]
    out = None
    for lo in range(0, n, 62):
        part = nonzero[:, lo:lo + 62].astype(np.int64)
        vals = part @ (np.int64(1) << np.arange(part.shape[1], dtype=np.int64))
        vals = [int(v) << lo for v in vals.tolist()]
        out = vals if out is None else [a | b for a, b in zip(out, vals)]
    return out if out is not None else [0] * nonzero.shape[0]


@functools.lru_cache(maxsize=32)
def support_masks(C: LinearCode) -> tuple[int, ...]:
    """Support bitmask of every codeword, indexed like :func:`codewords`."""
    return tuple(_bitmasks(codewords(C) != 0))


def support(C: LinearCode) -> frozenset[int]:
    return frozenset(j for j in range(C.n) if any(r[j] for r in C.gen.rows))


def support_blocks(C: LinearCode, h: int) -> list[frozenset[int]]:
    """Per-block supports ``supp_i(C)`` for ``h`` consecutive blocks."""
    if h < 1 or C.n % h:
        raise DimensionError(f"{h} blocks do not divide length {C.n}")
    n = C.n // h
    s = support(C)
    return [frozenset(j for j in s if i * n <= j < (i + 1) * n) for i in range(h)]


def min_distance(C: LinearCode) -> int:
    if C.k == 0:
        raise EmptyCodeError("minimum distance of the zero code is undefined")
    if C.q ** C.k > scale_guard():
        raise ScaleGuardError(f"{C.q}^{C.k} codewords exceed the scale guard")
    best = C.n
    for block in iter_codeword_chunks(C):
        w = np.count_nonzero(block, axis=1)
        w = w[w > 0]
        if w.size:
            best = min(best, int(w.min()))
    return best


# -- subspace enumeration ---------------------------------------------------

def _pivot_patterns(k: int, r: int) -> list[tuple[int, ...]]:
    return list(itertools.combinations(range(k), r))


def _row_indices(q: int, k: int, pivots: tuple[int, ...]) -> list[list[int]]:
    """For each row of an rref coefficient matrix with these pivots, all
    possible rows encoded as message indices ``sum x_j q^j``."""
    pivset = set(pivots)
    out = []
    for p in pivots:
        free = [c for c in range(p + 1, k) if c not in pivset]
        choices = []
        for vals in itertools.product(range(q), repeat=len(free)):
            choices.append(q**p + sum(v * q**c for v, c in zip(vals, free)))
        out.append(choices)
    return out


def _index_to_vector(idx: int, q: int, k: int) -> list[int]:
    x = []
    for _ in range(k):
        idx, d = divmod(idx, q)
        x.append(d)
    return x


def _subcode_from_indices(C: LinearCode, indices: Sequence[int]) -> LinearCode:
    coeffs = [_index_to_vector(i, C.q, C.k) for i in indices]
    rows = [linalg.vecmat(C.field, x, C.gen.rows, C.n) for x in coeffs]
    return code_from_generator(C.field, Matrix(C.field, len(rows), C.n, tuple(rows)))


def enumerate_subspaces(C: LinearCode, r: int) -> Iterator[LinearCode]:
    """Every r-dimensional subcode of ``C`` exactly once, canonical form."""
    if not 0 <= r <= C.k:
        raise ValueError(f"r={r} outside [0, {C.k}]")
    for pivots in _pivot_patterns(C.k, r):
        for choice in itertools.product(*_row_indices(C.q, C.k, pivots)):
            yield _subcode_from_indices(C, choice)


def _best_in_patterns(C: LinearCode, r: int, patterns: Sequence[int], bound: int) -> tuple[int, int, tuple[int, ...]] | None:
    """Smallest support among subcodes whose pivot pattern index is listed.

    Returns ``(weight, pattern_index, row_indices)`` for the first minimizer
    in enumeration order, or None when nothing beats ``bound``.
    """
    masks = support_masks(C)
    all_patterns = _pivot_patterns(C.k, r)
    best: list = [bound, None, None]

    for pi in patterns:
        rows = [[(idx, masks[idx]) for idx in choices]
                for choices in _row_indices(C.q, C.k, all_patterns[pi])]
        chosen: list[int] = []

        def walk(depth: int, acc: int) -> None:
            if depth == r:
                w = acc.bit_count()
                if w < best[0]:
                    best[:] = [w, pi, tuple(chosen)]
                return
            for idx, m in rows[depth]:
                nxt = acc | m
                if nxt.bit_count() >= best[0]:
                    continue
                chosen.append(idx)
                walk(depth + 1, nxt)
                chosen.pop()

        walk(0, 0)
    if best[1] is None:
        return None
    return best[0], best[1], best[2]


def _ghw_subspaces(C: LinearCode, r: int, workers: int = 1) -> tuple[int, LinearCode]:
    npat = len(_pivot_patterns(C.k, r))
    bound = C.n + 1
    if workers > 1 and gaussian_binomial(C.k, r, C.q) >= _PARALLEL_THRESHOLD and npat > 1:
        chunks = [list(range(i, npat, workers)) for i in range(workers)]
        chunks = [c for c in chunks if c]
        with ProcessPoolExecutor(max_workers=len(chunks)) as ex:
            parts = list(ex.map(_best_in_patterns, [C] * len(chunks), [r] * len(chunks), chunks,
                                [bound] * len(chunks)))
        found = [p for p in parts if p is not None]
        # Deterministic combine: lowest weight, then earliest pattern.
        w, _, idx = min(found, key=lambda t: (t[0], t[1]))
    else:
        w, _, idx = _best_in_patterns(C, r, range(npat), bound)
    return w, _subcode_from_indices(C, idx)


# -- column-closure search --------------------------------------------------

def _max_vanishing_sets(C: LinearCode) -> tuple[list[int], list[tuple[int, ...]]]:
    """For each rank ``rho``, the largest coordinate set T with
    ``rank G[:, T] <= rho`` (size and one such T)."""
    F, k, n = C.field, C.k, C.n
    add, mul, neg, inv = F.add_table, F.mul_table, F.neg_table, F.inv_table
    cols = [list(c) for c in zip(*C.gen.rows)] if k else [[] for _ in range(n)]
    best = [-1] * (k + 1)
    best_t: list[tuple[int, ...]] = [()] * (k + 1)
    chosen: list[int] = []

    def reduce(x: list[int], basis) -> list[int]:
        for p, v in basis:
            c = x[p]
            if c:
                f = mul[neg[c]]
                x = [add[a][f[b]] for a, b in zip(x, v)]
        return x

    def record(rho: int) -> None:
        size = len(chosen)
        for t in range(rho, k + 1):
            if best[t] >= size:
                break
            best[t] = size
            best_t[t] = tuple(chosen)

    def dfs(i: int, basis: list) -> None:
        rho = len(basis)
        record(rho)
        if i == n or len(chosen) + (n - i) <= best[rho]:
            return
        x = reduce(cols[i], basis)
        p = next((j for j, v in enumerate(x) if v), None)
        chosen.append(i)
        if p is None:
            # In the span already: leaving it out can never help.
            dfs(i + 1, basis)
            chosen.pop()
            return
        s = mul[inv[x[p]]]
        dfs(i + 1, basis + [(p, [s[v] for v in x])])
        chosen.pop()
        dfs(i + 1, basis)

    dfs(0, [])
    return best, best_t


def _vanishing_subcode(C: LinearCode, T: Sequence[int], r: int) -> LinearCode:
    K = linalg.left_kernel(C.gen.columns(list(T)))
    rows = [linalg.vecmat(C.field, x, C.gen.rows, C.n) for x in K.rows[:r]]
    return code_from_generator(C.field, Matrix(C.field, len(rows), C.n, tuple(rows)))


@functools.lru_cache(maxsize=256)
def _columns_profile(C: LinearCode) -> tuple[tuple[int, ...], tuple[tuple[int, ...], ...]]:
    best, best_t = _max_vanishing_sets(C)
    return tuple(best), tuple(best_t)


def _ghw_columns(C: LinearCode, r: int) -> tuple[int, LinearCode]:
    best, best_t = _columns_profile(C)
    T = best_t[C.k - r]
    return C.n - best[C.k - r], _vanishing_subcode(C, T, r)


# -- public GHW entry points ------------------------------------------------

METHODS = ("auto", "subspaces", "columns")


def _costs(C: LinearCode, r: int) -> dict[str, int]:
    return {
        "subspaces": C.q ** C.k + gaussian_binomial(C.k, r, C.q),
        "columns": 2 ** C.n,
    }


def choose_method(C: LinearCode, r: int, method: str = "auto") -> str:
    if method not in METHODS:
        raise ValueError(f"unknown GHW method {method!r}")
    costs = _costs(C, r)
    if method == "auto":
        method = min(costs, key=lambda m: (costs[m], m))
    if costs[method] > scale_guard():
        raise ScaleGuardError(
            f"{method} search for d_{r} of {C!r} needs ~{costs[method]:.3g} candidates "
            f"(guard {scale_guard():.3g})")
    return method


def ghw_witness(C: LinearCode, r: int, method: str = "auto", workers: int = 1) -> tuple[int, LinearCode]:
    """``d_r(C)`` together with an r-dimensional subcode attaining it."""
    if not 1 <= r <= C.k:
        raise ValueError(f"r={r} outside [1, {C.k}]")
    if r == C.k:
        return len(support(C)), C
    method = choose_method(C, r, method)
    if method == "subspaces":
        return _ghw_subspaces(C, r, workers)
    return _ghw_columns(C, r)


def ghw(C: LinearCode, r: int, method: str = "auto", workers: int = 1) -> int:
    return ghw_witness(C, r, method, workers)[0]


@functools.lru_cache(maxsize=1024)
def _hierarchy(C: LinearCode, method: str) -> tuple[int, ...]:
    if C.k == 0:
        return ()
    if method == "auto":
        col_cost = 2 ** C.n
        sub_cost = sum(_costs(C, r)["subspaces"] for r in range(1, C.k))
        method = "columns" if col_cost <= sub_cost else "subspaces"
    if method == "columns" and 2 ** C.n <= scale_guard():
        best, _ = _columns_profile(C)
        return tuple(C.n - best[C.k - r] for r in range(1, C.k + 1))
    return tuple(ghw(C, r, method) for r in range(1, C.k + 1))


def weight_hierarchy(C: LinearCode, method: str = "auto") -> tuple[int, ...]:
    """``(d_1(C), ..., d_k(C))``."""
    return _hierarchy(C, method)


# -- block structure --------------------------------------------------------

def shorten_blocks(C: LinearCode, y: Sequence[int]) -> LinearCode:
    """``C(y)``: codewords that vanish on every block i with ``y[i] == 1``.

    Coordinates are kept (shortening without puncturing).
    """
    h = len(y)
    if h < 1 or C.n % h:
        raise DimensionError(f"mask of length {h} incompatible with length {C.n}")
    n = C.n // h
    cols = [i * n + j for i in range(h) if y[i] for j in range(n)]
    if not cols or C.k == 0:
        return C
    K = linalg.left_kernel(C.gen.columns(cols))
    rows = [linalg.vecmat(C.field, x, C.gen.rows, C.n) for x in K.rows]
    return code_from_generator(C.field, Matrix(C.field, len(rows), C.n, tuple(rows)))


def code_sum(Ca: LinearCode, Cb: LinearCode) -> LinearCode:
    _check_pair(Ca, Cb)
    return LinearCode(Ca.field, Ca.n, linalg.row_space_sum(Ca.gen, Cb.gen))


def code_intersection(Ca: LinearCode, Cb: LinearCode) -> LinearCode:
    _check_pair(Ca, Cb)
    return LinearCode(Ca.field, Ca.n, linalg.row_space_intersection(Ca.gen, Cb.gen))


def is_subcode(Ca: LinearCode, Cb: LinearCode) -> bool:
    """True iff ``Ca`` is contained in ``Cb``."""
    _check_pair(Ca, Cb)
    if Ca.k == 0:
        return True
    return linalg.rank(Cb.gen.stack(Ca.gen)) == Cb.k
