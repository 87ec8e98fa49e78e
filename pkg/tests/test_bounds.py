import itertools
import math
import random

import pytest

from ghwmpc import bounds
from ghwmpc.bounds import (
    INF, BoundInternalError, Y3PrimeSet, Y3Set, b_h2_nested, dims_B, extended_ghw, ghw_closed_form_mds,
    lb_2x2, lb_general_exhaustive, lb_h2_nested, lb_h3_nested, lb_h3_s2, min_dist_lower_bound,
    min_dist_lower_bound_nsc, rs_ghw_closed_form, ub_ghw, y2_nested,
)
from ghwmpc.codes import (
    ScaleGuardError, ghw, shorten_blocks, weight_hierarchy, zero_code,
)
from ghwmpc.families import rs_code
from ghwmpc.formats import fixture_code, fixture_matrix
from ghwmpc.gfield import GF
from ghwmpc.linalg import Matrix
from ghwmpc.mpc import PreconditionError, mpc_construct, vandermonde_matrix
from ghwmpc.sampling import random_code, random_nested, random_nsc


def example_codes():
    return fixture_code("c1.code"), fixture_code("c2.code"), fixture_matrix("a1.mat"), fixture_matrix("a2.mat")


def ex_h3s2():
    C1, C2 = fixture_code("ex_h3s2_c1.code"), fixture_code("ex_h3s2_c2.code")
    return C1, C2, fixture_matrix("ex_h3s2_a.mat")


def test_extended_ghw():
    F = GF(4)
    C = rs_code(F, 4, 3)
    assert extended_ghw(C, 0) == 0
    assert extended_ghw(rs_code(F, 4, 1), 2) == INF
    assert extended_ghw(C, 2) == 3
    with pytest.raises(ValueError):
        extended_ghw(C, -1)


def test_strict_evaluator_raises_on_out_of_range():
    d = bounds._strict(rs_code(GF(4), 4, 1))
    with pytest.raises(BoundInternalError):
        d(2)
    with pytest.raises(BoundInternalError):
        d(-1)


def test_min_distance_bounds():
    C1, C2, A1, _ = example_codes()
    assert min_dist_lower_bound([C1, C2], A1) == 5
    assert min_dist_lower_bound([C1], Matrix.identity(C1.field, 1)) == 3
    E1, E2, A = ex_h3s2()
    assert min_dist_lower_bound_nsc([E1, E2], A) == 6
    # eq3 is a true lower bound here and eq2 coincides for NSC matrices.
    assert min_dist_lower_bound([E1, E2], A) == 6 <= ghw(mpc_construct([E1, E2], A).code, 1)


def test_table2_values_and_inner_minimum():
    C1, C2, A1, A2 = example_codes()
    assert [lb_2x2(C1, C2, A1, r, "a21_zero").value for r in range(1, 6)] == [5, 8, 11, 14, 16]
    assert [lb_2x2(C1, C2, A2, r, "a21_nonzero").value for r in range(1, 6)] == [6, 10, 12, 14, 16]
    # At r = 3 the three candidate terms are 14, 12 and 11.
    rep = lb_2x2(C1, C2, A1, 3, "a21_zero")
    assert rep.value == 11 and rep.method == "2x2-z"
    from ghwmpc.codes import code_intersection, code_sum
    dS, dI = bounds._extended(code_sum(C1, C2)), bounds._extended(code_intersection(C1, C2))
    d1, d2 = bounds._extended(C1), bounds._extended(C2)
    terms = {a: bounds.b_2x2(d1, dI, dS, d2, 3, a) for a in [(0, 0), (1, 0), (2, 0)]}
    assert terms == {(0, 0): 8 + 6, (1, 0): 6 + max(6, 5), (2, 0): 3 + max(6, 8)}


def test_general_variant_is_weaker_or_equal():
    C1, C2, A1, A2 = example_codes()
    for A, variant in ((A1, "a21_zero"), (A2, "a21_nonzero")):
        for r in range(1, 6):
            assert lb_2x2(C1, C2, A, r, "general").value <= lb_2x2(C1, C2, A, r, variant).value


def test_variant_mismatch_and_column_swap():
    C1, C2, A1, A2 = example_codes()
    with pytest.raises(PreconditionError):
        lb_2x2(C1, C2, A1, 1, "a21_nonzero")
    with pytest.raises(PreconditionError):
        lb_2x2(C1, C2, A2, 1, "a21_zero")
    swapped = A1.columns([1, 0])  # a22 == 0
    rep = lb_2x2(C1, C2, swapped, 2, "a21_zero")
    assert rep.notes and rep.value == lb_2x2(C1, C2, A1, 2, "a21_zero").value
    with pytest.raises(PreconditionError):
        lb_2x2(C1, C2, Matrix.from_rows(GF(3), [[1, 0], [1, 1]]), 1)
    with pytest.raises(ValueError):
        lb_2x2(C1, C2, A1, 6)
    with pytest.raises(ValueError):
        lb_2x2(C1, C2, A1, 1, "bogus")


def test_witness_reproduces_value_and_is_lex_first():
    C1, C2, A1, _ = example_codes()
    from ghwmpc.codes import code_intersection, code_sum
    S, I = code_sum(C1, C2), code_intersection(C1, C2)
    fns = tuple(bounds._extended(C) for C in (C1, I, S, C2))
    for r in range(1, 6):
        rep = lb_2x2(C1, C2, A1, r, "a21_zero")
        ys = bounds.y2_a21_zero(r, C1.k, S.k, C2.k, I.k)
        assert rep.witness in ys
        assert bounds.b_2x2(*fns, r, rep.witness) == rep.value
        minimizers = [a for a in ys if bounds.b_2x2(*fns, r, a) == rep.value]
        assert rep.witness == min(minimizers)


def test_y2_nested_membership():
    Y = y2_nested(4, 3, 2)
    dense = [a for a in itertools.product(range(5), repeat=2) if a in Y]
    assert list(Y) == dense
    assert all(1 <= a1 <= 2 and 1 <= a2 <= 2 and a1 + a2 <= 4 for a1, a2 in dense)


@pytest.mark.parametrize("r,k1,k2,k3", [(r, k1, k2, k3) for k1 in (1, 2, 3) for k2 in range(k1 + 1)
                                        for k3 in range(k2 + 1) for r in range(1, k1 + k2 + k3 + 1)])
def test_y3_iteration_equals_dense_scan(r, k1, k2, k3):
    Y = Y3Set(r, k1, k2, k3)
    it = list(Y)
    assert it == list(Y.dense())
    for t in it:
        a, g, b = t[:3], t[3:6], t[6]
        assert all(a[i] + g[i] <= b for i in range(3))
    if k3 == 0:
        projected = sorted({t[:3] + (t[6],) for t in it})
        assert projected == list(Y3PrimeSet(r, k1, k2))


@pytest.mark.parametrize("r,k1,k2", [(r, k1, k2) for k1 in range(1, 5) for k2 in range(k1 + 1)
                                     for r in range(1, k1 + k2 + 1)])
def test_y3prime_iteration_equals_dense_scan(r, k1, k2):
    Y = Y3PrimeSet(r, k1, k2)
    assert list(Y) == list(Y.dense())


def test_ex_h3s2_bound_and_b_values():
    C1, C2, A = ex_h3s2()
    Y = set(Y3PrimeSet(2, C1.k, C2.k))
    assert Y == {(0, 0, 0, 0), (1, 0, 0, 1), (0, 1, 0, 1), (0, 0, 1, 1), (1, 1, 1, 2)}
    d1, d2 = bounds._strict(C1), bounds._strict(C2)
    assert sorted(bounds.b_h3_s2(d1, d2, 2, t) for t in Y) == [9, 10, 10, 10, 12]
    rep = lb_h3_s2(C1, C2, A, 2)
    assert (rep.value, rep.witness) == (9, (0, 0, 0, 0))
    m = mpc_construct([C1, C2], A)
    assert ub_ghw(m, 2).value == 9 == ghw(m.code, 2)
    assert lb_h3_s2(C1, C2, A, 1).value <= 3 * ghw(C1, 1)


def test_h2_nested_examples():
    F = GF(4)
    A = vandermonde_matrix(F, 2, [1, 2])
    R3, R1 = rs_code(F, 4, 3), rs_code(F, 4, 1)
    assert lb_h2_nested(R3, R1, A, 1).value == 4
    assert lb_h2_nested(R3, R1, A, 4).value == 8 + 4 - 4
    C = random_code(GF(3), 5, 2, random.Random(1))
    A3 = vandermonde_matrix(GF(3), 2, [1, 2])
    assert lb_h2_nested(C, C, A3, 1).value == ghw(C, 1)
    with pytest.raises(PreconditionError):
        lb_h2_nested(R1, R3, A, 1)


@pytest.mark.parametrize("q", [4, 5, 7])
def test_closed_form_piecewise_identity(q):
    # For interior alpha the nested B collapses to a two-branch expression.
    for n in range(2, min(q, 6) + 1):
        for k1 in range(1, n + 1):
            for k2 in range(1, k1 + 1):
                d1 = lambda r, k=k1: bounds._d_mds(n, k, r)
                d2 = lambda r, k=k2: bounds._d_mds(n, k, r)
                for r in range(2, k1 + k2 + 1):
                    for a in y2_nested(r, k1, k2):
                        if any(x in (0, r) for x in a):
                            continue
                        z = sum(a)
                        expected = 2 * (n - k1 + r) - z if r >= k1 - k2 + z else 2 * (n - k2) + z
                        assert b_h2_nested(d1, d2, r, a) == expected


def test_closed_form_examples_and_t_mds():
    assert rs_ghw_closed_form(4, 3, 1, 2) == 6
    assert rs_ghw_closed_form(4, 3, 1, 3) == 7
    for n in range(1, 8):
        for k1 in range(1, n + 1):
            for k2 in range(1, k1 + 1):
                vals = [rs_ghw_closed_form(n, k1, k2, r) for r in range(1, k1 + k2 + 1)]
                assert vals[-1] == 2 * n
                assert all(a < b for a, b in zip(vals, vals[1:]))
                t = max(k1 - k2, k2)
                for r, v in enumerate(vals, 1):
                    assert v <= 2 * n - (k1 + k2) + r
                    if r > t:
                        assert v == 2 * n - (k1 + k2) + r
    with pytest.raises(ValueError):
        rs_ghw_closed_form(4, 1, 2, 1)


def test_mds_pair_formula_and_flag():
    F = GF(5)
    A = vandermonde_matrix(F, 2, [1, 2])
    C1, C2 = rs_code(F, 5, 3), rs_code(F, 5, 2)
    m = mpc_construct([C1, C2], A)
    for r in range(1, 6):
        rep = ghw_closed_form_mds(C1, C2, A, r)
        assert rep.value == ghw(m.code, r)
        assert rep.notes
    with pytest.raises(PreconditionError):
        ghw_closed_form_mds(fixture_code("c1.code"), fixture_code("c1.code"), fixture_matrix("a2.mat"), 1)


@pytest.mark.parametrize("seed", range(15))
def test_2x2_variants_coincide_when_nested(seed):
    rng = random.Random(seed)
    F = GF(rng.choice([3, 4, 5]))
    n = rng.randint(2, 5)
    k1 = rng.randint(1, n)
    C1, C2 = random_nested(F, n, [k1, rng.randint(0, k1)], rng)
    A = random_nsc(F, 2, 2, rng)
    variant = "a21_nonzero" if bounds.normalize_2x2(A)[0].rows[1][0] else "a21_zero"
    for r in range(1, C1.k + C2.k + 1):
        v = lb_h2_nested(C1, C2, A, r).value
        assert lb_2x2(C1, C2, A, r, "general").value == v
        assert lb_2x2(C1, C2, A, r, variant).value == v


def test_h3_with_zero_third_constituent_matches_h3_s2():
    rng = random.Random(5)
    F = GF(4)
    for _ in range(10):
        n = rng.randint(2, 4)
        k1 = rng.randint(1, n)
        C1, C2 = random_nested(F, n, [k1, rng.randint(0, k1)], rng)
        A3 = random_nsc(F, 3, 3, rng)
        A2 = A3.select_rows([0, 1])
        Z = zero_code(F, n)
        for r in range(1, C1.k + C2.k + 1):
            assert lb_h3_nested(C1, C2, Z, A3, r).value == lb_h3_s2(C1, C2, A2, r).value


def test_h3_r1_matches_eq3():
    rng = random.Random(11)
    F = GF(3)
    for _ in range(10):
        n = rng.randint(2, 4)
        k1 = rng.randint(1, n)
        k2 = rng.randint(0, k1)
        cs = random_nested(F, n, [k1, k2, rng.randint(0, k2)], rng)
        A = random_nsc(F, 3, 3, rng)
        assert lb_h3_nested(*cs, A, 1).value == min_dist_lower_bound_nsc(cs, A)


def test_dims_B_small_cases():
    F = GF(3)
    rng = random.Random(2)
    C1, C2 = random_nested(F, 3, [2, 1], rng)
    A = vandermonde_matrix(F, 2, [1, 2])
    code = mpc_construct([C1, C2], A).code
    from ghwmpc.codes import enumerate_subspaces
    for r in range(code.k + 1):
        for D in enumerate_subspaces(code, r):
            for i in range(2):
                ei = tuple(int(t == i) for t in range(2))
                nxt = tuple(int(t == (i + 1) % 2) for t in range(2))
                assert dims_B(D, i, 0, 2) == r - shorten_blocks(D, ei).k
                assert dims_B(D, i, 1, 2) == shorten_blocks(D, nxt).k
    Z = zero_code(F, 9)
    assert all(dims_B(Z, i, j, 3) == 0 for i in range(3) for j in range(3))
    with pytest.raises(ValueError):
        dims_B(Z, 3, 0, 3)


def test_dims_B_three_blocks_gamma():
    F = GF(3)
    rng = random.Random(4)
    cs = random_nested(F, 2, [2, 1, 1], rng)
    A = random_nsc(F, 3, 3, rng)
    code = mpc_construct(cs, A).code
    from ghwmpc.codes import enumerate_subspaces
    for D in enumerate_subspaces(code, 2):
        for i in range(3):
            y = tuple(int(t != i) for t in range(3))
            assert dims_B(D, i, 2, 3) == shorten_blocks(D, y).k


def test_general_exhaustive_examples():
    C1, C2, A = ex_h3s2()
    m = mpc_construct([C1, C2], A)
    assert lb_general_exhaustive(m, 1).value == min_dist_lower_bound_nsc([C1, C2], A)
    top = lb_general_exhaustive(m, m.code.k).value
    assert top <= m.code.n
    with pytest.raises(ScaleGuardError):
        lb_general_exhaustive(m, 2, guard=10)


def test_upper_bound_cases():
    F = GF(4)
    A = vandermonde_matrix(F, 2, [1, 2])
    m = mpc_construct([rs_code(F, 4, 3), rs_code(F, 4, 1)], A)
    r1 = ub_ghw(m, 1)
    assert r1.value == min(2 * 2, 4 * 1) == ghw(m.code, 1)
    vac = ub_ghw(m, 4)
    assert vac.value == 8 and any("vacuous" in n for n in vac.notes)
    C1, C2, A1, A2 = example_codes()
    tri = ub_ghw(mpc_construct([C1, C2], A1), 1)
    assert tri.value == min(3 * 2, 5 * 1) and tri.notes
    with pytest.raises(PreconditionError):
        ub_ghw(mpc_construct([C1, C2], A2), 1)


def test_infinity_semantics():
    assert max(INF, 3) == INF and min(INF, 3) == 3 and INF + 3 == INF
    assert math.isinf(extended_ghw(zero_code(GF(2), 3), 1))
