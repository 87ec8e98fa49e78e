"""Recompute the published tables and worked examples, cell by cell."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .bounds import Y3PrimeSet, lb_2x2, lb_h2_nested, lb_h3_nested, lb_h3_s2, rs_ghw_closed_form, ub_ghw
from .codes import code_sum, ghw, weight_hierarchy
from .families import rm_code, rs_code
from .formats import fixture_code, fixture_matrix
from .gfield import GF
from .mpc import grm_matrix, mpc_construct, vandermonde_matrix

# Published values.
TABLE1 = {"d_r(C1)": (3, 6, 8), "d_r(C2)": (5, 8), "d_r(C1+C2)": (3, 5, 6, 7, 8)}
TABLE2 = {"lower D1": (5, 8, 11, 14, 16), "lower D2": (6, 10, 12, 14, 16)}
TABLE3 = {"d_r(D1)": (5, 8, 11, 14, 16), "d_r(D2)": (6, 10, 12, 15, 16)}
EX_H3S2 = {"lower": 9, "upper": 9, "true": 9}
EX_H3S2_Y = ((0, 0, 0, 0), (1, 0, 0, 1), (0, 1, 0, 1), (0, 0, 1, 1), (1, 1, 1, 2))


@dataclass(frozen=True)
class Cell:
    label: str
    expected: object
    computed: object

    @property
    def ok(self) -> bool:
        return self.expected == self.computed


def example_codes():
    C1, C2 = fixture_code("c1.code"), fixture_code("c2.code")
    return C1, C2, fixture_matrix("a1.mat"), fixture_matrix("a2.mat")


def table1() -> list[Cell]:
    C1, C2, _, _ = example_codes()
    got = {"d_r(C1)": C1, "d_r(C2)": C2, "d_r(C1+C2)": code_sum(C1, C2)}
    return [Cell(k, TABLE1[k], tuple(ghw(C, r) for r in range(1, C.k + 1))) for k, C in got.items()]


def table2() -> list[Cell]:
    C1, C2, A1, A2 = example_codes()
    return [
        Cell("lower D1", TABLE2["lower D1"], tuple(lb_2x2(C1, C2, A1, r, "a21_zero").value for r in range(1, 6))),
        Cell("lower D2", TABLE2["lower D2"], tuple(lb_2x2(C1, C2, A2, r, "a21_nonzero").value for r in range(1, 6))),
    ]


def table3() -> list[Cell]:
    C1, C2, A1, A2 = example_codes()
    out = []
    for label, A in (("d_r(D1)", A1), ("d_r(D2)", A2)):
        D = mpc_construct([C1, C2], A).code
        out.append(Cell(label, TABLE3[label], tuple(ghw(D, r) for r in range(1, D.k + 1))))
    return out


def ex_h3s2() -> list[Cell]:
    C1, C2 = fixture_code("ex_h3s2_c1.code"), fixture_code("ex_h3s2_c2.code")
    A = fixture_matrix("ex_h3s2_a.mat")
    m = mpc_construct([C1, C2], A)
    return [
        # A set: compare in sorted order, the published listing is unordered.
        Cell("Y3' at r=2", tuple(sorted(EX_H3S2_Y)), tuple(sorted(Y3PrimeSet(2, C1.k, C2.k)))),
        Cell("lower", EX_H3S2["lower"], lb_h3_s2(C1, C2, A, 2).value),
        Cell("upper", EX_H3S2["upper"], ub_ghw(m, 2).value),
        Cell("true", EX_H3S2["true"], ghw(m.code, 2)),
    ]


def rs_hierarchy(qs=(4, 5, 7), max_n: int = 5) -> list[Cell]:
    """Closed form vs exact GHWs of ``[RS(k1), RS(k2)] . A`` for a fixed
    2x2 Vandermonde A on nodes 1, 2."""
    out = []
    for q in qs:
        F = GF(q)
        A = vandermonde_matrix(F, 2, [1, 2])
        for n in range(1, min(max_n, q) + 1):
            for k1 in range(1, n + 1):
                for k2 in range(1, k1 + 1):
                    code = mpc_construct([rs_code(F, n, k1), rs_code(F, n, k2)], A).code
                    formula = tuple(rs_ghw_closed_form(n, k1, k2, r) for r in range(1, k1 + k2 + 1))
                    out.append(Cell(f"q={q} n={n} k1={k1} k2={k2}", formula, weight_hierarchy(code)))
    return out


def rm_q2(ms=(2, 3)) -> list[Cell]:
    """Two-block nested bound on the binary RM recursion vs exact GHWs."""
    F = GF(2)
    A = grm_matrix(F)
    out = []
    for m in ms:
        for nu in range(0, m + 1):
            C, C1, C2 = rm_code(F, nu, m), rm_code(F, nu, m - 1), rm_code(F, nu - 1, m - 1)
            lower = tuple(lb_h2_nested(C1, C2, A, r).value for r in range(1, C.k + 1))
            out.append(Cell(f"RM_2({nu},{m})", weight_hierarchy(C), lower))
    return out


def rm_q3(ms=(2,)) -> list[Cell]:
    """Three-block nested bound on the ternary RM recursion vs exact GHWs."""
    F = GF(3)
    A = grm_matrix(F)
    out = []
    for m in ms:
        for nu in range(0, 2 * m + 1):
            C = rm_code(F, nu, m)
            cs = [rm_code(F, nu - i, m - 1) for i in range(3)]
            lower = tuple(lb_h3_nested(*cs, A, r).value for r in range(1, C.k + 1))
            out.append(Cell(f"RM_3({nu},{m})", weight_hierarchy(C), lower))
    return out


EXAMPLES: dict[str, Callable[[], list[Cell]]] = {
    "table1": table1,
    "table2": table2,
    "table3": table3,
    "ex-h3s2": ex_h3s2,
    "rs-hierarchy": rs_hierarchy,
    "rm-q2": rm_q2,
    "rm-q3": rm_q3,
}
