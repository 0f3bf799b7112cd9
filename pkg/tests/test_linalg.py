"""Tests for the exact linear algebra layer.

Expected values marked with "oracle" were produced by the independent
sympy script tests/oracles/linalg_oracle.py and frozen here.
"""

import random
from fractions import Fraction as F

import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st

from lieq.linalg import (
    FactorTerm,
    MatrixQ,
    PolyQ,
    QuadExt,
    char_poly,
    factor_over_rationals,
    matrix_exp_nilpotent,
    nullspace,
    solve_linear,
    solve_or_invert,
    sqrt_exact,
    symmetric_signature,
)

N_RANDOM_CONJUGATIONS = 50
MAX_ENTRY = 6

small_fractions = st.fractions(min_value=-4, max_value=4, max_denominator=3)


def mat(rows):
    return MatrixQ(rows)


def rand_invertible(rng, n):
    while True:
        P = MatrixQ([[F(rng.randint(-MAX_ENTRY, MAX_ENTRY)) for _ in range(n)] for _ in range(n)])
        if solve_or_invert(P) is not None:
            return P


# ---------------------------------------------------------------- matrices

def test_matmul_identity_and_pow():
    A = mat([[1, 2], [3, 4]])
    I = MatrixQ.identity(2)
    assert A @ I == A
    assert A ** 0 == I
    assert A ** 3 == A @ A @ A


def test_rref_rank_and_nullspace_frozen():
    A = mat([[1, 2, 0, -1], [2, 4, 1, 0], [3, 6, 1, -1]])
    assert A.rank() == 2
    ns = nullspace(A)
    # oracle: nullspace_A
    assert [v.col(0) for v in ns] == [
        (F(-2), F(1), F(0), F(0)),
        (F(1), F(0), F(-2), F(1)),
    ]
    for v in ns:
        assert (A @ v).is_zero()


def test_nullspace_full_rank_is_empty():
    assert nullspace(mat([[1, 0], [0, 1]])) == []


def test_solve_or_invert_frozen():
    B = mat([[2, 1, 0], [0, F(1, 3), 4], [1, 0, 1]])
    Binv = solve_or_invert(B)
    # oracle: inverse_B
    assert Binv == mat(
        [
            [F(1, 14), F(-3, 14), F(6, 7)],
            [F(6, 7), F(3, 7), F(-12, 7)],
            [F(-1, 14), F(3, 14), F(1, 7)],
        ]
    )
    assert B @ Binv == MatrixQ.identity(3)


def test_solve_or_invert_singular_and_shape():
    assert solve_or_invert(mat([[1, 2], [2, 4]])) is None
    with pytest.raises(ValueError):
        solve_or_invert(mat([[1, 2, 3], [4, 5, 6]]))


def test_solve_linear():
    M = mat([[1, 2], [3, 4]])
    x = solve_linear(M, [5, 11])
    assert x == (F(1), F(2))
    assert solve_linear(mat([[1, 1], [1, 1]]), [0, 1]) is None


@seed(1)
@settings(max_examples=40, deadline=None)
@given(st.lists(small_fractions, min_size=4, max_size=4))
def test_inverse_roundtrip(entries):
    M = mat([entries[:2], entries[2:]])
    Minv = solve_or_invert(M)
    if Minv is not None:
        assert M @ Minv == MatrixQ.identity(2)
        assert Minv @ M == MatrixQ.identity(2)


# ---------------------------------------------------------- char polynomial

def test_char_poly_frozen():
    # oracle: charpoly_* (ascending coefficients of det(M - x I))
    assert char_poly(mat([[0, -1], [1, 0]])) == PolyQ([1, 0, 1])
    assert char_poly(mat([[2, 1], [0, 2]])) == PolyQ([4, -4, 1])
    M3 = mat([[F(1, 2), 3, 0], [-1, 0, F(2, 3)], [5, 1, -2]])
    assert char_poly(M3) == PolyQ([F(11, 3), F(-4, 3), F(-3, 2), -1])
    M4 = mat([[1, 2, 3, 0], [0, -1, 0, 1], [2, 0, -1, -2], [1, 1, 0, 1]])
    assert char_poly(M4) == PolyQ([18, 4, -9, 0, 1])


def test_char_poly_size_cap():
    with pytest.raises(ValueError):
        char_poly(MatrixQ.identity(8))


def test_char_poly_conjugation_invariant():
    rng = random.Random(1)
    M = mat([[1, 2, 0], [0, 3, -1], [1, 0, 0]])
    p = char_poly(M)
    for _ in range(N_RANDOM_CONJUGATIONS):
        P = rand_invertible(rng, 3)
        Pinv = solve_or_invert(P)
        assert char_poly(Pinv @ M @ P) == p


def test_cayley_hamilton():
    M = mat([[1, 2, 3, 0], [0, -1, 0, 1], [2, 0, -1, -2], [1, 1, 0, 1]])
    assert char_poly(M).eval_matrix(M).is_zero()


# ---------------------------------------------------------------- factoring

def monic(coeffs):
    lead = F(coeffs[-1])
    return PolyQ([F(c) / lead for c in coeffs])


def test_factor_frozen():
    # oracle: factors_* (sympy primitive factors, made monic here)
    got = factor_over_rationals(PolyQ([-1, 0, 0, 0, 1]))
    assert [(t.poly, t.multiplicity) for t in got] == [
        (monic([-1, 1]), 1),
        (monic([1, 1]), 1),
        (monic([1, 0, 1]), 1),
    ]
    got = factor_over_rationals(PolyQ([4, 0, 0, 0, 1]))
    assert [(t.poly, t.multiplicity) for t in got] == [
        (monic([2, -2, 1]), 1),
        (monic([2, 2, 1]), 1),
    ]
    deg6 = PolyQ([1, 0, 1]) ** 2 * PolyQ([F(-1, 2), 1]) * PolyQ([3, 1])
    got = factor_over_rationals(deg6)
    assert [(t.poly, t.multiplicity) for t in got] == [
        (monic([-1, 2]), 1),
        (monic([3, 1]), 1),
        (monic([1, 0, 1]), 2),
    ]
    deg7 = PolyQ([1, 1, 0, 1]) * PolyQ([-2, 0, 1]) * PolyQ([1, 1]) * PolyQ([0, 1])
    got = factor_over_rationals(deg7)
    assert [(t.poly, t.multiplicity) for t in got] == [
        (monic([0, 1]), 1),
        (monic([1, 1]), 1),
        (monic([-2, 0, 1]), 1),
        (monic([1, 1, 0, 1]), 1),
    ]


def test_factor_irreducible_quartic_flagged():
    # oracle: factors_quartic_irred
    got = factor_over_rationals(PolyQ([2, 0, -4, 0, 1]))
    assert len(got) == 1
    term = got[0]
    assert term.poly == PolyQ([2, 0, -4, 0, 1])
    assert term.multiplicity == 1
    assert not term.eigen_supported


def test_factor_two_cubics():
    # oracle: factors_sextic_two_cubics
    got = factor_over_rationals(PolyQ([-2, 0, 0, 1]) * PolyQ([1, 1, 0, 1]))
    assert [(t.poly, t.multiplicity, t.eigen_supported) for t in got] == [
        (PolyQ([-2, 0, 0, 1]), 1, False),
        (PolyQ([1, 1, 0, 1]), 1, False),
    ]


def test_factor_zero_and_degree_cap():
    with pytest.raises(ValueError):
        factor_over_rationals(PolyQ.zero())
    with pytest.raises(ValueError):
        factor_over_rationals(PolyQ.x_power(8))


@seed(1)
@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(min_value=-3, max_value=3), min_size=1, max_size=4))
def test_factor_product_reconstructs(coeffs):
    p = PolyQ(coeffs + [1])  # force nonzero, monic-izable
    prod = PolyQ([1])
    for term in factor_over_rationals(p):
        prod = prod * term.poly ** term.multiplicity
    assert prod == p.monic()


# --------------------------------------------------------------- matrix exp

def test_exp_nilpotent_frozen():
    N = mat([[0, 1, 2], [0, 0, 3], [0, 0, 0]])
    # oracle: exp_N
    assert matrix_exp_nilpotent(N) == mat([[1, 1, F(7, 2)], [0, 1, 3], [0, 0, 1]])
    N4 = mat([[0, 2, 0, 1], [0, 0, -1, 0], [0, 0, 0, 3], [0, 0, 0, 0]])
    # oracle: exp_N4
    assert matrix_exp_nilpotent(N4) == mat(
        [[1, 2, -1, 0], [0, 1, -1, F(-3, 2)], [0, 0, 1, 3], [0, 0, 0, 1]]
    )


def test_exp_rejects_non_nilpotent():
    with pytest.raises(ValueError, match=r"N\^2"):
        matrix_exp_nilpotent(mat([[1, 0], [0, 0]]))


def test_exp_inverse_pairing():
    N = mat([[0, 1, 2], [0, 0, 3], [0, 0, 0]])
    assert matrix_exp_nilpotent(N) @ matrix_exp_nilpotent(-N) == MatrixQ.identity(3)


# ---------------------------------------------------------------- signature

def test_signature_frozen():
    # oracle: sig_diag, sig_hyperbolic, sig_4x4
    assert symmetric_signature(mat([[3, 0, 0], [0, -2, 0], [0, 0, 0]])) == (1, 1, 1)
    assert symmetric_signature(mat([[0, 1], [1, 0]])) == (1, 1, 0)
    S = mat([[1, 2, 0, 0], [2, 1, 0, 0], [0, 0, 5, 1], [0, 0, 1, 5]])
    assert symmetric_signature(S) == (3, 1, 0)


def test_signature_rejects_asymmetric():
    with pytest.raises(ValueError):
        symmetric_signature(mat([[0, 1], [2, 0]]))


# ------------------------------------------------------------------ QuadExt

def test_quadext_normalization():
    assert QuadExt(0, 1, 8) == QuadExt(0, 2, 2)
    assert QuadExt(0, 1, F(4, 9)) == F(2, 3)
    assert QuadExt(0, 1, 4) == 2
    assert QuadExt(3, 0, 5) == 3
    r = QuadExt(0, 1, -18)
    assert (r.b, r.d) == (F(3), -2)


def test_quadext_arithmetic():
    r2 = QuadExt(0, 1, 2)
    assert r2 * r2 == 2
    assert (1 + r2) * (1 - r2) == -1
    assert (r2 + r2) / 2 == r2
    x = QuadExt(1, 2, 3)
    assert x * x.inverse() == 1
    assert x - x == 0
    assert x ** 2 == QuadExt(13, 4, 3)


def test_quadext_ordering():
    r2, r3 = QuadExt(0, 1, 2), QuadExt(0, 1, 3)
    assert r2 < r3
    assert -r3 < -r2
    assert r2 > 1 and r2 < 2
    assert QuadExt(1, -1, 2) < 0  # 1 - sqrt(2)
    assert QuadExt(3, -2, 2) > 0  # 3 - 2 sqrt(2)
    assert abs(QuadExt(1, -1, 2)) == QuadExt(-1, 1, 2)
    with pytest.raises(ValueError):
        QuadExt(0, 1, -1) < 1


def test_quadext_cross_field_rejected():
    with pytest.raises(TypeError):
        QuadExt(1, 1, 2) < QuadExt(1, 1, 3)


def test_sqrt_exact():
    assert sqrt_exact(F(9, 4)) == F(3, 2)
    assert sqrt_exact(2) == QuadExt(0, 1, 2)
    assert sqrt_exact(0) == 0
    with pytest.raises(ValueError):
        sqrt_exact(-1)


def test_quadext_matrix_ops():
    r2 = QuadExt(0, 1, 2)
    M = MatrixQ([[r2, 1], [0, r2]])
    assert (M @ M)[0, 0] == 2
    inv = solve_or_invert(M)
    assert inv is not None
    assert M @ inv == MatrixQ.identity(2)
    p = char_poly(M)
    assert p == PolyQ([2, -2 * r2, 1])


# -------------------------------------------------------------------- PolyQ

def test_poly_divmod_and_eval():
    p = PolyQ([2, -3, 1])  # (x-1)(x-2)
    q, r = p.divmod(PolyQ([-1, 1]))
    assert q == PolyQ([-2, 1]) and r.is_zero
    assert p.evaluate(F(5)) == 12
    M = mat([[1, 1], [0, 2]])
    assert p.eval_matrix(M) == (M - MatrixQ.identity(2)) @ (M - MatrixQ.identity(2).scale(2))


@seed(1)
@settings(max_examples=40, deadline=None)
@given(
    st.lists(small_fractions, min_size=1, max_size=5),
    st.lists(small_fractions, min_size=1, max_size=3),
)
def test_poly_divmod_roundtrip(a_coeffs, b_coeffs):
    a, b = PolyQ(a_coeffs), PolyQ(b_coeffs)
    if b.is_zero:
        return
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.is_zero or r.degree < b.degree
