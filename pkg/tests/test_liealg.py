"""Structure-constant Lie algebra tests.

Frozen expected values come from tests/oracles/structure_oracle.py (sympy,
independent of this package).
"""

import random
from fractions import Fraction

import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st

from lieq.liealg import JacobiViolation, LieAlgebra, SeriesProfile, Subspace
from lieq.linalg import MatrixQ

N_RANDOM_BASE_CHANGES = 50
N_BRACKET_SAMPLES = 100
MAX_ENTRY = 5

small_fractions = st.fractions(
    min_value=-MAX_ENTRY, max_value=MAX_ENTRY, max_denominator=3
)


def e(n, i, three=None):
    return tuple(1 if t == i else 0 for t in range(n))


def span(n, indices):
    return Subspace(n, [e(n, i) for i in indices])


# All fixture tables use 0-based (i, j) keys with [e_i, e_j] = coeff vector.
ABELIAN2 = LieAlgebra(2, {})
SOLV2 = LieAlgebra(2, {(0, 1): [1, 0]})
HEISENBERG3 = LieAlgebra(3, {(1, 2): [1, 0, 0]})
SL2 = LieAlgebra(3, {(0, 1): [-2, 0, 0], (0, 2): [0, 1, 0], (1, 2): [0, 0, -2]})
NILP41 = LieAlgebra(4, {(1, 2): [1, 0, 0, 0]})
NILP42 = LieAlgebra(4, {(1, 3): [1, 0, 0, 0], (2, 3): [0, 1, 0, 0]})
SOLV5 = LieAlgebra(
    5,
    {
        (0, 4): [Fraction(3, 2), 0, 0, 0, 0],
        (1, 2): [1, 0, 0, 0, 0],
        (1, 4): [0, 1, 0, 0, 0],
        (2, 4): [0, 0, Fraction(1, 2), 0, 0],
        (3, 4): [0, 0, 0, 1, 0],
    },
)
NILP64 = LieAlgebra(
    6,
    {
        (3, 4): [0, 1, 0, 0, 0, 0],
        (3, 5): [0, 0, 1, 0, 0, 0],
        (4, 5): [0, 0, 0, 1, 0, 0],
    },
)
NILP65 = LieAlgebra(6, {(2, 4): [0, 1, 0, 0, 0, 0], (3, 5): [0, 1, 0, 0, 0, 0]})
NILP69 = LieAlgebra(
    6,
    {
        (2, 4): [0, 1, 0, 0, 0, 0],
        (2, 5): [1, 0, 0, 0, 0, 0],
        (3, 4): [-1, 0, 0, 0, 0, 0],
        (3, 5): [0, 1, 0, 0, 0, 0],
    },
)
NILP616 = LieAlgebra(
    6,
    {
        (1, 4): [1, 0, 0, 0, 0, 0],
        (2, 3): [-1, 0, 0, 0, 0, 0],
        (2, 5): [0, 1, 0, 0, 0, 0],
        (3, 5): [0, 0, 1, 0, 0, 0],
        (4, 5): [0, 0, 0, 1, 0, 0],
    },
)

FIXTURES = {
    "abelian2": ABELIAN2,
    "solv2": SOLV2,
    "heisenberg3": HEISENBERG3,
    "sl2": SL2,
    "nilp41": NILP41,
    "nilp42": NILP42,
    "solv5": SOLV5,
    "nilp64": NILP64,
    "nilp65": NILP65,
    "nilp69": NILP69,
    "nilp616": NILP616,
}

# oracle: series/center/killing table
EXPECTED = {
    # tag: (derived_dims, lcs_dims, center_dim, killing_rank)
    "abelian2": ((0,), (0,), 2, 0),
    "solv2": ((1, 0), (1, 1), 0, 1),
    "heisenberg3": ((1, 0), (1, 0), 1, 0),
    "sl2": ((3,), (3,), 0, 3),
    "nilp41": ((1, 0), (1, 0), 2, 0),
    "nilp42": ((2, 0), (2, 1, 0), 1, 0),
    "solv5": ((4, 1, 0), (4, 4), 0, 1),
    "nilp64": ((3, 0), (3, 2, 0), 3, 0),
    "nilp65": ((1, 0), (1, 0), 2, 0),
    "nilp69": ((2, 0), (2, 0), 2, 0),
    "nilp616": ((4, 1, 0), (4, 3, 2, 1, 0), 1, 0),
}


# ---------------------------------------------------------------- construction


def test_dimension_bounds():
    with pytest.raises(ValueError, match="outside supported range"):
        LieAlgebra(0, {})
    with pytest.raises(ValueError, match="outside supported range"):
        LieAlgebra(8, {})
    assert LieAlgebra(7, {}).dim == 7


def test_bad_bracket_indices():
    with pytest.raises(ValueError, match=r"\(2,2\) out of range"):
        LieAlgebra(3, {(1, 1): [1, 0, 0]})
    with pytest.raises(ValueError, match=r"\(3,2\) out of range"):
        LieAlgebra(3, {(2, 1): [1, 0, 0]})
    with pytest.raises(ValueError, match=r"\(1,4\) out of range"):
        LieAlgebra(3, {(0, 3): [1, 0, 0]})


def test_bad_coefficient_length():
    with pytest.raises(ValueError, match="length 2, expected 3"):
        LieAlgebra(3, {(0, 1): [1, 0]})


def test_zero_rows_dropped():
    g = LieAlgebra(3, {(0, 1): [0, 0, 0], (1, 2): [1, 0, 0]})
    assert set(g.table) == {(1, 2)}


# -------------------------------------------------------------------- brackets


def test_bracket_heisenberg():
    assert HEISENBERG3.bracket(e(3, 1), e(3, 2)) == (1, 0, 0)
    assert HEISENBERG3.bracket(e(3, 2), e(3, 1)) == (-1, 0, 0)
    assert HEISENBERG3.bracket(e(3, 0), e(3, 2)) == (0, 0, 0)
    assert HEISENBERG3.bracket((2, 3, 0), (0, 1, 5)) == (15, 0, 0)


def test_structure_constant_both_orders():
    assert SL2.structure_constant(0, 1) == (-2, 0, 0)
    assert SL2.structure_constant(1, 0) == (2, 0, 0)
    assert SL2.structure_constant(2, 2) == (0, 0, 0)
    assert SL2.structure_constant(0, 2) == (0, 1, 0)


@seed(1)
@settings(max_examples=N_BRACKET_SAMPLES, deadline=None)
@given(
    x=st.tuples(*[small_fractions] * 5),
    y=st.tuples(*[small_fractions] * 5),
    z=st.tuples(*[small_fractions] * 5),
    c=small_fractions,
)
def test_bracket_antisymmetric_bilinear(x, y, z, c):
    lhs = SOLV5.bracket(x, y)
    assert lhs == tuple(-v for v in SOLV5.bracket(y, x))
    xs = tuple(a + c * b for a, b in zip(x, z))
    assert SOLV5.bracket(xs, y) == tuple(
        a + c * b for a, b in zip(lhs, SOLV5.bracket(z, y))
    )


# ---------------------------------------------------------------------- jacobi


@pytest.mark.parametrize("tag", sorted(FIXTURES))
def test_jacobi_holds(tag):
    assert FIXTURES[tag].check_jacobi() is None


def test_jacobi_violation_witness():
    # corrupted table: [e1,e2]=e3, [e1,e3]=e1, [e2,e3]=e2
    bad = LieAlgebra(
        3, {(0, 1): [0, 0, 1], (0, 2): [1, 0, 0], (1, 2): [0, 1, 0]}
    )
    v = bad.check_jacobi()
    # oracle: jacobi_bad triple (0, 1, 2) -> [0, 0, -2]
    assert v == JacobiViolation(0, 1, 2, (0, 0, -2))


# -------------------------------------------------------------------- adjoints


def test_ad_matrix_columns():
    ad3 = HEISENBERG3.ad_matrix(e(3, 2))
    assert ad3 == MatrixQ([[0, -1, 0], [0, 0, 0], [0, 0, 0]])
    adH = SL2.ad_basis(1)
    assert adH == MatrixQ([[2, 0, 0], [0, 0, 0], [0, 0, -2]])


@seed(1)
@settings(max_examples=N_BRACKET_SAMPLES, deadline=None)
@given(x=st.tuples(*[small_fractions] * 3), y=st.tuples(*[small_fractions] * 3))
def test_ad_is_bracket_homomorphism(x, y):
    lhs = SL2.ad_matrix(SL2.bracket(x, y))
    ax, ay = SL2.ad_matrix(x), SL2.ad_matrix(y)
    assert lhs == ax @ ay - ay @ ax


# ---------------------------------------------------------------------- series


@pytest.mark.parametrize("tag", sorted(FIXTURES))
def test_series_dims(tag):
    derived, lcs, _, _ = EXPECTED[tag]
    p = FIXTURES[tag].series_profile()
    assert p.derived_dims == derived
    assert p.lcs_dims == lcs
    assert FIXTURES[tag].derived_series_dims() == derived
    assert FIXTURES[tag].lower_central_series_dims() == lcs


@pytest.mark.parametrize("tag", sorted(FIXTURES))
def test_solvability_flags(tag):
    g = FIXTURES[tag]
    p = g.series_profile()
    assert g.is_solvable() == p.solvable == (p.derived_dims[-1] == 0)
    assert g.is_nilpotent() == p.nilpotent == (p.lcs_dims[-1] == 0)
    if p.nilpotent:
        assert p.solvable


def test_solvability_expected_flags():
    assert SOLV2.is_solvable() and not SOLV2.is_nilpotent()
    assert SOLV5.is_solvable() and not SOLV5.is_nilpotent()
    assert not SL2.is_solvable() and not SL2.is_nilpotent()
    assert HEISENBERG3.is_nilpotent()
    assert ABELIAN2.is_nilpotent()


@pytest.mark.parametrize("tag", sorted(FIXTURES))
def test_center_dim(tag):
    assert FIXTURES[tag].center().dim == EXPECTED[tag][2]


def test_center_witnesses():
    assert HEISENBERG3.center() == span(3, [0])
    assert NILP41.center() == span(4, [0, 3])


@pytest.mark.parametrize("tag", sorted(FIXTURES))
def test_killing_rank(tag):
    assert FIXTURES[tag].killing_matrix().rank() == EXPECTED[tag][3]


def test_killing_matrix_sl2():
    assert SL2.killing_matrix() == MatrixQ([[0, 0, 4], [0, 8, 0], [4, 0, 0]])


def test_derived_algebra_solv5():
    assert SOLV5.derived_algebra() == span(5, [0, 1, 2, 3])


# ------------------------------------------------------- ideals and restriction


def test_is_ideal():
    assert SOLV5.is_ideal(span(5, [0, 1, 2, 3]))
    assert HEISENBERG3.is_ideal(span(3, [0]))
    assert not HEISENBERG3.is_ideal(span(3, [1]))
    for tag, g in FIXTURES.items():
        assert g.is_ideal(g.derived_algebra()), tag


def test_restrict_to_nilradical_of_solv5():
    inner = SOLV5.restrict(span(5, [0, 1, 2, 3]))
    assert inner == LieAlgebra(4, {(1, 2): [1, 0, 0, 0]})


def test_restrict_rejects_unclosed_subspace():
    with pytest.raises(ValueError, match=r"\[u_1, u_2\] lies outside"):
        HEISENBERG3.restrict(span(3, [1, 2]))


def test_product_space():
    full = Subspace.full(3)
    assert HEISENBERG3.product_space(full, full) == span(3, [0])
    assert HEISENBERG3.product_space(span(3, [0]), full).dim == 0


# ------------------------------------------------------------------ nilradical


def test_verify_nilradical_solv5():
    assert SOLV5.verify_nilradical(span(5, [0, 1, 2, 3]))
    # proper nilpotent ideal missing the derived algebra
    assert not SOLV5.verify_nilradical(span(5, [0, 1, 2]))
    # the whole algebra is not nilpotent
    assert not SOLV5.verify_nilradical(Subspace.full(5))


def test_verify_nilradical_solv2():
    assert SOLV2.verify_nilradical(span(2, [0]))
    assert not SOLV2.verify_nilradical(Subspace(2, []))


def test_verify_nilradical_requires_solvable():
    with pytest.raises(ValueError, match="requires a solvable algebra"):
        SL2.verify_nilradical(span(3, [0]))


def test_nilradical_codim_search():
    s, codim = SOLV5.nilradical_codim_search()
    assert s == span(5, [0, 1, 2, 3])
    assert codim == 1
    s2, codim2 = SOLV2.nilradical_codim_search()
    assert (s2, codim2) == (span(2, [0]), 1)
    s3, codim3 = HEISENBERG3.nilradical_codim_search()
    assert (s3, codim3) == (Subspace.full(3), 0)


def test_nilpotent_elements_subspace():
    assert SOLV2.nilpotent_elements_subspace() == span(2, [0])
    assert SOLV5.nilpotent_elements_subspace() == span(5, [0, 1, 2, 3])
    assert HEISENBERG3.nilpotent_elements_subspace() == Subspace.full(3)
    assert ABELIAN2.nilpotent_elements_subspace() == Subspace.full(2)
    with pytest.raises(ValueError, match="requires a solvable algebra"):
        SL2.nilpotent_elements_subspace()


# ----------------------------------------------------------------- base change


def _random_invertible(rng, n):
    while True:
        P = MatrixQ(
            [
                [Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(n)]
                for _ in range(n)
            ]
        )
        if P.rank() == n:
            return P


def test_change_basis_identity_and_roundtrip():
    rng = random.Random(1)
    P = _random_invertible(rng, 5)
    moved = SOLV5.change_basis(P)
    from lieq.linalg import solve_or_invert

    assert moved.change_basis(solve_or_invert(P)) == SOLV5
    assert SOLV5.change_basis(MatrixQ.identity(5)) == SOLV5


def test_change_basis_rejects_singular():
    with pytest.raises(ValueError, match="singular"):
        SOLV5.change_basis(MatrixQ.zeros(5, 5))
    with pytest.raises(ValueError, match="must be 5x5"):
        SOLV5.change_basis(MatrixQ.identity(4))


def test_change_basis_permutation():
    # swapping e1 and e2 in the Heisenberg table flips the sign of [e2,e3]
    P = MatrixQ([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    g = HEISENBERG3.change_basis(P)
    assert g == LieAlgebra(3, {(0, 2): [0, 1, 0]})
    assert g.check_jacobi() is None


@pytest.mark.parametrize("tag", ["solv5", "nilp616", "sl2"])
def test_invariants_under_random_base_change(tag):
    g = FIXTURES[tag]
    expected_profile = g.series_profile()
    expected_center = g.center().dim
    expected_killing = g.killing_matrix().rank()
    rng = random.Random(1)
    for _ in range(N_RANDOM_BASE_CHANGES):
        moved = g.change_basis(_random_invertible(rng, g.dim))
        assert moved.check_jacobi() is None
        assert moved.series_profile() == expected_profile
        assert moved.center().dim == expected_center
        assert moved.killing_matrix().rank() == expected_killing


# ------------------------------------------------------------- decomposability


def test_decomposability_heuristic():
    assert NILP41.decomposability_heuristic() == ((0, 1, 2), (3,))
    assert HEISENBERG3.decomposability_heuristic() is None
    assert SL2.decomposability_heuristic() is None
    assert ABELIAN2.decomposability_heuristic() == ((0,), (1,))


def test_decomposability_parts_are_ideals():
    parts = NILP65.decomposability_heuristic()
    if parts is not None:
        a, b = parts
        assert NILP65.is_ideal(span(6, a))
        assert NILP65.is_ideal(span(6, b))
        assert len(a) + len(b) == 6


# ------------------------------------------------------------------- subspaces


def test_subspace_coordinates_and_membership():
    s = Subspace(3, [[1, 1, 0], [0, 0, 1]])
    assert s.dim == 2
    assert s.contains_vector([2, 2, 5])
    assert s.coordinates([2, 2, 5]) == (2, 5)
    assert s.coordinates([1, 0, 0]) is None
    assert not s.contains_vector([1, 0, 0])


def test_subspace_canonical_equality():
    a = Subspace(3, [[1, 1, 0], [0, 0, 1]])
    b = Subspace(3, [[1, 1, 1], [0, 0, 2]])
    assert a == b
    assert hash(a) == hash(b)
    assert a != Subspace(3, [[1, 0, 0], [0, 0, 1]])


def test_subspace_add():
    a = Subspace(3, [[1, 0, 0]])
    b = Subspace(3, [[0, 1, 0]])
    assert a.add(b) == Subspace(3, [[1, 0, 0], [0, 1, 0]])
    assert a.add_vectors([[0, 0, 1]]).dim == 2
    assert Subspace.full(3).dim == 3
    assert Subspace(3, []).dim == 0
