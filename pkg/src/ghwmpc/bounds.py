"""Lower and upper bounds for the GHWs of matrix-product codes.

Every lower bound here has the same shape: a finite set Y of integer tuples
(the dimensions of the block-shortened subcodes ``D(y)`` of an unknown
subcode ``D``) and an expression B over constituent GHWs; the bound is
``min_{v in Y} B_v``.  Reports carry the lexicographically smallest minimizer.

GHWs use the extended convention: ``d_0 = 0`` and ``d_r = inf`` for ``r > k``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

from . import linalg
from .codes import (
    LinearCode, ScaleGuardError, code_intersection, code_sum, enumerate_subspaces,
    gaussian_binomial, is_subcode, shorten_blocks, weight_hierarchy,
)
from .linalg import DimensionError, Matrix
from .mpc import MpcCode, PreconditionError, is_nsc, is_triangular, row_code_delta

INF = math.inf
Weight = int | float  # an int, or math.inf

EXHAUSTIVE_GUARD = 10**6

METHOD_IDS = (
    "eq2", "eq3", "2x2-general", "2x2-nz", "2x2-z", "h2-nested", "h3-nested",
    "h3-s2", "general-exhaustive", "upper", "rs-formula",
)
VARIANTS = {"general": "2x2-general", "a21_nonzero": "2x2-nz", "a21_zero": "2x2-z"}


class BoundInternalError(AssertionError):
    """A Y-constrained evaluation reached an undefined GHW index."""


@dataclass(frozen=True)
class BoundReport:
    value: Weight
    witness: tuple
    method: str
    r: int
    notes: tuple[str, ...] = field(default=())


def extended_ghw(C: LinearCode, r: int) -> Weight:
    if r < 0:
        raise ValueError(f"negative GHW index {r}")
    if r == 0:
        return 0
    if r > C.k:
        return INF
    return weight_hierarchy(C)[r - 1]


def _extended(C: LinearCode) -> Callable[[int], Weight]:
    hier = weight_hierarchy(C)

    def d(r: int) -> Weight:
        if r < 0:
            raise ValueError(f"negative GHW index {r}")
        return 0 if r == 0 else hier[r - 1] if r <= len(hier) else INF
    return d


def _strict(C: LinearCode) -> Callable[[int], int]:
    hier = weight_hierarchy(C)

    def d(r: int) -> int:
        if not 0 <= r <= len(hier):
            raise BoundInternalError(f"GHW index {r} outside [0, {len(hier)}] inside a Y-set")
        return 0 if r == 0 else hier[r - 1]
    return d


def _minimize(ys: Iterator[tuple], B: Callable[[tuple], int]) -> tuple[int, tuple]:
    best: tuple[int, tuple] | None = None
    for v in ys:
        b = B(v)
        if best is None or b < best[0]:
            best = (b, v)
    if best is None:
        raise BoundInternalError("empty Y-set")
    return best


# -- minimum distance -------------------------------------------------------

def min_dist_lower_bound(constituents: Sequence[LinearCode], A: Matrix) -> Weight:
    """``min_l d_1(C_l) * delta_l``."""
    _check_shapes(constituents, A)
    if linalg.rank(A) != A.nrows:
        raise PreconditionError("structure matrix is not of full rank")
    return min(extended_ghw(C, 1) * row_code_delta(A, l + 1) for l, C in enumerate(constituents))


def min_dist_lower_bound_nsc(constituents: Sequence[LinearCode], A: Matrix) -> Weight:
    """``min_l (h - l + 1) d_1(C_l)`` for NSC A."""
    _check_shapes(constituents, A)
    _require_nsc(A)
    h = A.ncols
    return min((h - l) * extended_ghw(C, 1) for l, C in enumerate(constituents))


# -- Y-sets -----------------------------------------------------------------

@dataclass(frozen=True)
class Y2Set:
    """Pairs in ``[0, r]^2`` with ``lo_i <= a_i <= hi_i`` and ``a_1 + a_2 <= r``."""

    r: int
    lo1: int
    hi1: int
    lo2: int
    hi2: int

    def __contains__(self, a) -> bool:
        a1, a2 = a
        return (0 <= a1 <= self.r and 0 <= a2 <= self.r and self.lo1 <= a1 <= self.hi1
                and self.lo2 <= a2 <= self.hi2 and a1 + a2 <= self.r)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        r = self.r
        for a1 in range(max(0, self.lo1), min(r, self.hi1) + 1):
            for a2 in range(max(0, self.lo2), min(r - a1, self.hi2) + 1):
                yield (a1, a2)


def y2_general(r: int, dim_sum: int, dim_c2: int, dim_int: int) -> Y2Set:
    return Y2Set(r, r - dim_sum, dim_c2, r - dim_sum, dim_int)


def y2_a21_nonzero(r: int, dim_sum: int, dim_int: int) -> Y2Set:
    return Y2Set(r, r - dim_sum, dim_int, r - dim_sum, dim_int)


def y2_a21_zero(r: int, dim_c1: int, dim_sum: int, dim_c2: int, dim_int: int) -> Y2Set:
    return Y2Set(r, r - dim_c1, dim_c2, r - dim_sum, dim_int)


def y2_nested(r: int, k1: int, k2: int) -> Y2Set:
    return Y2Set(r, r - k1, k2, r - k1, k2)


def _c(i: int) -> int:
    # Cyclic index mod 3 on 0-based positions.
    return i % 3


@dataclass(frozen=True)
class Y3Set:
    """Tuples ``(a1, a2, a3, g1, g2, g3, b)`` of the three-block Y-set.

    Indices i+1, i+2 are taken cyclically mod 3.
    """

    r: int
    k1: int
    k2: int
    k3: int

    def __contains__(self, t) -> bool:
        r = self.r
        a, g, b = t[:3], t[3:6], t[6]
        if not all(0 <= x <= r for x in t):
            return False
        for i in range(3):
            if g[i] > self.k3:
                return False
            if a[i] < max(r - self.k1, g[_c(i + 1)] + g[_c(i + 2)]):
                return False
            if a[_c(i + 1)] + a[_c(i + 2)] - g[i] > b:
                return False
        return b <= min(sum(a) - sum(g), self.k2 + min(a))

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        # Nested loops whose ranges are the defining inequalities; the
        # membership test guards the remaining coupled constraints.
        r, k1, k2, k3 = self.r, self.k1, self.k2, self.k3
        for a1, a2, a3 in itertools.product(range(max(0, r - k1), r + 1), repeat=3):
            a = (a1, a2, a3)
            gmax = min(k3, r)
            for g in itertools.product(range(gmax + 1), repeat=3):
                if any(a[i] < g[_c(i + 1)] + g[_c(i + 2)] for i in range(3)):
                    continue
                lo = max(a[_c(i + 1)] + a[_c(i + 2)] - g[i] for i in range(3))
                hi = min(r, sum(a) - sum(g), k2 + min(a))
                for b in range(max(0, lo), hi + 1):
                    yield (*a, *g, b)

    def dense(self) -> Iterator[tuple[int, ...]]:
        """Literal scan of ``[0, r]^7`` filtered by membership; for auditing."""
        for t in itertools.product(range(self.r + 1), repeat=7):
            if t in self:
                yield t


@dataclass(frozen=True)
class Y3PrimeSet:
    """Tuples ``(a1, a2, a3, b)`` of the two-constituent, three-block Y-set."""

    r: int
    k1: int
    k2: int

    def __contains__(self, t) -> bool:
        r = self.r
        a, b = t[:3], t[3]
        if not all(0 <= x <= r for x in t):
            return False
        if any(x < r - self.k1 for x in a):
            return False
        if any(a[_c(i + 1)] + a[_c(i + 2)] > b for i in range(3)):
            return False
        return b <= min(sum(a), self.k2 + min(a))

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        r = self.r
        for a in itertools.product(range(max(0, r - self.k1), r + 1), repeat=3):
            lo = max(a[_c(i + 1)] + a[_c(i + 2)] for i in range(3))
            hi = min(r, sum(a), self.k2 + min(a))
            for b in range(lo, hi + 1):
                yield (*a, b)

    def dense(self) -> Iterator[tuple[int, ...]]:
        for t in itertools.product(range(self.r + 1), repeat=4):
            if t in self:
                yield t


# -- B expressions ----------------------------------------------------------

def b_2x2(first_left, first_right, second_left, second_right, r: int, a: tuple[int, int]) -> int:
    """``max{L1(r-a1), R1(a2)} + max{L2(r-a2), R2(a1)}``; the four GHW
    functions depend on the variant."""
    a1, a2 = a
    return max(first_left(r - a1), first_right(a2)) + max(second_left(r - a2), second_right(a1))


def b_h2_nested(d1, d2, r: int, a: tuple[int, int]) -> int:
    return b_2x2(d1, d2, d1, d2, r, a)


def b_h3(d1, d2, d3, r: int, t: tuple[int, ...]) -> int:
    a, g, b = t[:3], t[3:6], t[6]
    return sum(max(d1(r - a[i]), d2(b - a[i]), d3(g[i])) for i in range(3))


def b_h3_s2(d1, d2, r: int, t: tuple[int, ...]) -> int:
    a, b = t[:3], t[3]
    return sum(max(d1(r - a[i]), d2(b - a[i])) for i in range(3))


# -- checks -----------------------------------------------------------------

def _check_shapes(constituents: Sequence[LinearCode], A: Matrix) -> None:
    if len(constituents) != A.nrows:
        raise DimensionError(f"{len(constituents)} constituents for a {A.nrows}x{A.ncols} matrix")
    F, n = constituents[0].field, constituents[0].n
    if any(C.field != F or C.n != n for C in constituents) or A.field != F:
        raise DimensionError("constituents and matrix must share field and length")


def _require_nsc(A: Matrix) -> None:
    rep = is_nsc(A)
    if not rep.is_nsc:
        raise PreconditionError(f"structure matrix is not NSC (singular minor {rep.witness})", rep)


def _require_nested(constituents: Sequence[LinearCode]) -> None:
    for i in range(len(constituents) - 1):
        if not is_subcode(constituents[i + 1], constituents[i]):
            raise PreconditionError(f"constituents not nested: C{i + 2} is not inside C{i + 1}")


def _require_r(r: int, top: int) -> None:
    if not 1 <= r <= top:
        raise ValueError(f"r={r} outside [1, {top}]")


def _require_shape(A: Matrix, s: int, h: int) -> None:
    if A.shape != (s, h):
        raise DimensionError(f"expected a {s}x{h} matrix, got {A.nrows}x{A.ncols}")


# -- lower bounds -----------------------------------------------------------

def normalize_2x2(A: Matrix) -> tuple[Matrix, bool]:
    """Swap the columns of a 2x2 matrix when ``a22 == 0``."""
    if A.rows[1][1] != 0:
        return A, False
    return A.columns([1, 0]), True


def lb_2x2(C1: LinearCode, C2: LinearCode, A: Matrix, r: int, variant: str = "general") -> BoundReport:
    """Lower bound for ``d_r([C1, C2] . A)`` with a 2x2 NSC matrix; the
    constituents need not be nested.

    ``variant`` is ``general``, ``a21_nonzero`` or ``a21_zero``; the latter two
    must agree with A after the column normalization.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    _check_shapes([C1, C2], A)
    _require_shape(A, 2, 2)
    _require_nsc(A)
    _require_r(r, C1.k + C2.k)
    A, swapped = normalize_2x2(A)
    notes = ("columns swapped so that a22 != 0",) if swapped else ()
    a21 = A.rows[1][0]
    if variant == "a21_nonzero" and a21 == 0:
        raise PreconditionError("variant a21_nonzero needs a21 != 0")
    if variant == "a21_zero" and a21 != 0:
        raise PreconditionError("variant a21_zero needs a21 == 0")

    S, I = code_sum(C1, C2), code_intersection(C1, C2)
    dS, dI, d1, d2 = _strict(S), _strict(I), _strict(C1), _strict(C2)
    if variant == "general":
        ys = y2_general(r, S.k, C2.k, I.k)
        fns = (dS, dI, dS, d2)
    elif variant == "a21_nonzero":
        ys = y2_a21_nonzero(r, S.k, I.k)
        fns = (dS, dI, dS, dI)
    else:
        ys = y2_a21_zero(r, C1.k, S.k, C2.k, I.k)
        fns = (d1, dI, dS, d2)
    value, wit = _minimize(iter(ys), lambda a: b_2x2(*fns, r, a))
    return BoundReport(value, wit, VARIANTS[variant], r, notes)


def lb_h2_nested(C1: LinearCode, C2: LinearCode, A: Matrix, r: int) -> BoundReport:
    _check_shapes([C1, C2], A)
    _require_shape(A, 2, 2)
    _require_nested([C1, C2])
    _require_nsc(A)
    _require_r(r, C1.k + C2.k)
    d1, d2 = _strict(C1), _strict(C2)
    value, wit = _minimize(iter(y2_nested(r, C1.k, C2.k)), lambda a: b_h2_nested(d1, d2, r, a))
    return BoundReport(value, wit, "h2-nested", r)


def lb_h3_nested(C1: LinearCode, C2: LinearCode, C3: LinearCode, A: Matrix, r: int) -> BoundReport:
    """Witness is ``(a1, a2, a3, g1, g2, g3, b)``."""
    _check_shapes([C1, C2, C3], A)
    _require_shape(A, 3, 3)
    _require_nested([C1, C2, C3])
    _require_nsc(A)
    _require_r(r, C1.k + C2.k + C3.k)
    d1, d2, d3 = _strict(C1), _strict(C2), _strict(C3)
    value, wit = _minimize(iter(Y3Set(r, C1.k, C2.k, C3.k)), lambda t: b_h3(d1, d2, d3, r, t))
    return BoundReport(value, wit, "h3-nested", r)


def lb_h3_s2(C1: LinearCode, C2: LinearCode, A: Matrix, r: int) -> BoundReport:
    """Witness is ``(a1, a2, a3, b)``."""
    _check_shapes([C1, C2], A)
    _require_shape(A, 2, 3)
    _require_nested([C1, C2])
    _require_nsc(A)
    _require_r(r, C1.k + C2.k)
    d1, d2 = _strict(C1), _strict(C2)
    value, wit = _minimize(iter(Y3PrimeSet(r, C1.k, C2.k)), lambda t: b_h3_s2(d1, d2, r, t))
    return BoundReport(value, wit, "h3-s2", r)


# -- the exhaustive bound ---------------------------------------------------

def _masks_of_weight(h: int, j: int) -> Iterator[tuple[int, ...]]:
    for pos in itertools.combinations(range(h), j):
        yield tuple(int(i in pos) for i in range(h))


def dims_B(D: LinearCode, i: int, j: int, h: int) -> int:
    """``dim(D(e_i) + sum_{wt(y)=j} D(y)) - dim D(e_i)`` (block i is 0-based)."""
    if not 0 <= i < h:
        raise ValueError(f"block {i} outside [0, {h})")
    if not 0 <= j <= h:
        raise ValueError(f"weight {j} outside [0, {h}]")
    return _block_dims(D, h)[i][j]


def _block_dims(D: LinearCode, h: int) -> list[list[int]]:
    """Table of ``|B_j^i|`` for every block i and every 0 <= j <= h."""
    short = {y: shorten_blocks(D, y) for y in itertools.product((0, 1), repeat=h)}
    out = []
    for i in range(h):
        ei = tuple(int(t == i) for t in range(h))
        base = short[ei]
        row = []
        for j in range(h + 1):
            gen = base.gen
            for y in _masks_of_weight(h, j):
                if not y[i]:
                    gen = gen.stack(short[y].gen)
            row.append(linalg.rank(gen) - base.k)
        out.append(row)
    return out


def general_bound_for_subcode(D: LinearCode, constituents: Sequence[LinearCode], h: int) -> tuple[int, tuple]:
    """``sum_i max_j d_{|B_j^i|}(C_{j+1})`` for one subcode D, with the
    ``|B_j^i|`` table (j < s) as witness."""
    s = len(constituents)
    ds = [_strict(C) for C in constituents]
    dims = _block_dims(D, h)
    total = sum(max(ds[j](dims[i][j]) for j in range(s)) for i in range(h))
    return total, tuple(tuple(row[:s]) for row in dims)


def lb_general_exhaustive(mpc: MpcCode, r: int, guard: int = EXHAUSTIVE_GUARD) -> BoundReport:
    """Minimum over all r-dimensional subcodes D of the MPC of the per-block
    bound.  Exponential; a validation oracle for the Y-set bounds."""
    _require_nested(mpc.constituents)
    _require_nsc(mpc.A)
    C = mpc.code
    _require_r(r, C.k)
    count = gaussian_binomial(C.k, r, C.q)
    if count > guard:
        raise ScaleGuardError(f"{count} subcodes exceed the exhaustive-bound guard {guard}")
    best: tuple[int, tuple] | None = None
    for D in enumerate_subspaces(C, r):
        v = general_bound_for_subcode(D, mpc.constituents, mpc.h)
        if best is None or v[0] < best[0]:
            best = v
    return BoundReport(best[0], best[1], "general-exhaustive", r)


# -- upper bound ------------------------------------------------------------

def ub_ghw(mpc: MpcCode, r: int, constituent_ghws: Sequence[Sequence[int]] | None = None) -> BoundReport:
    """``min_l d_r(C_l) * delta_l`` over l with ``r <= dim C_l``.

    Needs nested constituents; otherwise A must be triangular and the row
    weight ``wt(R_l)`` replaces ``delta_l``.  When no l qualifies the trivial
    bound ``n h`` is returned and flagged vacuous.  Witness is ``(l,)``, 1-based.
    """
    if r < 1:
        raise ValueError(f"r={r} must be >= 1")
    cs = mpc.constituents
    if constituent_ghws is None:
        constituent_ghws = [weight_hierarchy(C) for C in cs]
    nested = mpc.is_nested()
    if nested:
        factor = [row_code_delta(mpc.A, l + 1) for l in range(len(cs))]
        notes: tuple[str, ...] = ()
    elif is_triangular(mpc.A):
        factor = [sum(1 for x in mpc.A.rows[l] if x) for l in range(len(cs))]
        notes = ("non-nested constituents, triangular matrix",)
    else:
        raise PreconditionError("upper bound needs nested constituents or a triangular matrix")
    best: tuple[int, tuple] | None = None
    for l, (C, hier) in enumerate(zip(cs, constituent_ghws)):
        if r <= C.k:
            v = hier[r - 1] * factor[l]
            if best is None or v < best[0]:
                best = (v, (l + 1,))
    if best is None:
        return BoundReport(mpc.n * mpc.h, (), "upper", r, notes + ("vacuous: r exceeds dim C1",))
    return BoundReport(best[0], best[1], "upper", r, notes)


# -- Reed-Solomon closed form ----------------------------------------------

def _d_mds(n: int, k: int, r: int) -> Weight:
    if r == 0:
        return 0
    return n - k + r if r <= k else INF


def rs_ghw_closed_form(n: int, k1: int, k2: int, r: int) -> int:
    """Exact ``d_r([RS(k1), RS(k2)] . A)`` for a 2x2 NSC matrix A."""
    if not 1 <= k2 <= k1 <= n:
        raise ValueError(f"need 1 <= k2 <= k1 <= n, got k1={k1}, k2={k2}, n={n}")
    _require_r(r, k1 + k2)
    if r > max(k1 - k2, k2):
        return 2 * n + r - (k1 + k2)
    return min(2 * _d_mds(n, k1, r), _d_mds(n, k2, r))


def _is_mds(C: LinearCode) -> bool:
    return C.k > 0 and weight_hierarchy(C)[0] == C.n - C.k + 1


def ghw_closed_form_mds(C1: LinearCode, C2: LinearCode, A: Matrix, r: int) -> BoundReport:
    """The Reed-Solomon formula applied to any nested pair of MDS codes."""
    _check_shapes([C1, C2], A)
    _require_shape(A, 2, 2)
    _require_nsc(A)
    _require_nested([C1, C2])
    if not (_is_mds(C1) and _is_mds(C2)):
        raise PreconditionError("closed form needs two nonzero MDS constituents")
    notes = ("formula extended from Reed-Solomon to nested MDS pairs",)
    return BoundReport(rs_ghw_closed_form(C1.n, C1.k, C2.k, r), (C1.n, C1.k, C2.k), "rs-formula", r, notes)
