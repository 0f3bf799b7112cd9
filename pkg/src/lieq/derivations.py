"""Derivation algebras, automorphism checks, and representation comparisons.

The derivation algebra of a structure-constant Lie algebra is computed as the
exact nullspace of the Leibniz system in the n^2 matrix unknowns.  Companion
helpers check single matrices (derivation / automorphism), exponentiate
nilpotent derivations, verify commutator tables of explicit matrix families,
and decide equivalence of matrix representations via the intertwiner space.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .liealg import LieAlgebra, Subspace
from .linalg import MatrixQ, matrix_exp_nilpotent, nullspace, solve_linear, solve_or_invert

# the invertible-intertwiner search enumerates an integer coefficient grid
# exhaustively when it is no larger than this; for bigger intertwiner spaces
# it falls back to a fixed number of seeded random coefficient draws
INTERTWINER_GRID_BUDGET = 100_000
INTERTWINER_RANDOM_TRIALS = 300


def _flatten(M: MatrixQ) -> Tuple:
    return tuple(M[(p, q)] for p in range(M.rows) for q in range(M.cols))


@dataclass(frozen=True)
class DerivationBasis:
    """Echelon-deterministic basis of the derivation algebra of one algebra."""

    algebra_dim: int
    basis: Tuple[MatrixQ, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def _span(self) -> Subspace:
        n = self.algebra_dim
        return Subspace(n * n, [_flatten(D) for D in self.basis])

    def contains(self, M: MatrixQ) -> bool:
        """Exact membership of M in the computed span."""
        if M.shape() != (self.algebra_dim, self.algebra_dim):
            return False
        return self._span.contains_vector(_flatten(M))

    def coordinates(self, M: MatrixQ) -> Optional[Tuple[Fraction, ...]]:
        """Coefficients of M over the listed basis, or None when outside."""
        if M.shape() != (self.algebra_dim, self.algebra_dim):
            return None
        if not self.basis:
            return () if M.is_zero() else None
        flats = [_flatten(D) for D in self.basis]
        cols = MatrixQ([[f[r] for f in flats] for r in range(len(flats[0]))])
        return solve_linear(cols, _flatten(M))


def derivation_basis(g: LieAlgebra) -> DerivationBasis:
    """Solve D[e_i,e_j] = [De_i,e_j] + [e_i,De_j] for all i < j exactly.

    The unknown D is an n x n matrix; the Leibniz conditions form a linear
    system over its n^2 entries (unknown (p,q) at index p*n+q).
    """
    n = g.dim
    rows: List[List[Fraction]] = []
    for i in range(n):
        for j in range(i + 1, n):
            cij = g.structure_constant(i, j)
            for k in range(n):
                row = [Fraction(0)] * (n * n)
                for q in range(n):
                    if cij[q] != 0:
                        row[k * n + q] += cij[q]
                for p in range(n):
                    cpj = g.structure_constant(p, j)
                    if cpj[k] != 0:
                        row[p * n + i] -= cpj[k]
                    cip = g.structure_constant(i, p)
                    if cip[k] != 0:
                        row[p * n + j] -= cip[k]
                rows.append(row)
    if not rows:
        kernel = [MatrixQ.column([1 if t == s else 0 for t in range(n * n)]) for s in range(n * n)]
    else:
        kernel = nullspace(MatrixQ(rows))
    mats = tuple(
        MatrixQ([[v[(p * n + q, 0)] for q in range(n)] for p in range(n)]) for v in kernel
    )
    return DerivationBasis(n, mats)


def is_derivation(g: LieAlgebra, D: MatrixQ) -> bool:
    """Leibniz check of D on all basis pairs of g."""
    if D.shape() != (g.dim, g.dim):
        raise ValueError(f"derivation candidate must be {g.dim}x{g.dim}")
    n = g.dim
    for i in range(n):
        ei = [1 if t == i else 0 for t in range(n)]
        for j in range(i + 1, n):
            ej = [1 if t == j else 0 for t in range(n)]
            lhs = D.apply(g.structure_constant(i, j))
            rhs = tuple(
                a + b
                for a, b in zip(g.bracket(D.col(i), ej), g.bracket(ei, D.col(j)))
            )
            if tuple(lhs) != rhs:
                return False
    return True


def is_automorphism(g: LieAlgebra, A: MatrixQ) -> bool:
    """True iff A is invertible and A[x,y] = [Ax,Ay] on all basis pairs."""
    if A.shape() != (g.dim, g.dim):
        raise ValueError(f"automorphism candidate must be {g.dim}x{g.dim}")
    if solve_or_invert(A) is None:
        return False
    n = g.dim
    for i in range(n):
        for j in range(i + 1, n):
            lhs = tuple(A.apply(g.structure_constant(i, j)))
            if lhs != g.bracket(A.col(i), A.col(j)):
                return False
    return True


def exp_derivation(g: LieAlgebra, D: MatrixQ) -> MatrixQ:
    """exp(D) for a nilpotent derivation D; the result is an automorphism."""
    if not is_derivation(g, D):
        raise ValueError("matrix is not a derivation of the algebra")
    return matrix_exp_nilpotent(D)


class BracketTableSpec:
    """Expected commutator relations [M_i, M_j] for a family of m matrices.

    The table maps (i, j) with i < j to the coefficient vector of
    [M_i, M_j] over the family; missing pairs mean a vanishing commutator.
    """

    __slots__ = ("m", "table")

    def __init__(self, m: int, table: Dict[Tuple[int, int], Sequence]):
        if m < 1:
            raise ValueError("need at least one generator")
        self.m = m
        clean: Dict[Tuple[int, int], Tuple] = {}
        for (i, j), coeffs in table.items():
            if not (0 <= i < j < m):
                raise ValueError(f"table indices ({i + 1},{j + 1}) out of range for {m} generators")
            v = tuple(coeffs)
            if len(v) != m:
                raise ValueError(f"coefficient vector of length {len(v)}, expected {m}")
            if any(c != 0 for c in v):
                clean[(i, j)] = v
        self.table = clean

    def expected(self, i: int, j: int, mats: Sequence[MatrixQ]) -> MatrixQ:
        n = mats[0].rows
        out = MatrixQ.zeros(n, n)
        for c, M in zip(self.table.get((i, j), ()), mats):
            if c != 0:
                out = out + M * c
        return out


@dataclass(frozen=True)
class TableMismatch:
    i: int
    j: int
    expected: MatrixQ
    actual: MatrixQ


def check_bracket_table(
    mats: Sequence[MatrixQ], spec: BracketTableSpec
) -> Optional[TableMismatch]:
    """None when every commutator matches the table; else the first mismatch."""
    if len(mats) != spec.m:
        raise ValueError(f"expected {spec.m} matrices, got {len(mats)}")
    n = mats[0].rows
    for M in mats:
        if M.shape() != (n, n):
            raise ValueError("matrices must be square and of equal size")
    for i in range(spec.m):
        for j in range(i + 1, spec.m):
            actual = mats[i] @ mats[j] - mats[j] @ mats[i]
            expected = spec.expected(i, j, mats)
            if actual != expected:
                return TableMismatch(i, j, expected, actual)
    return None


@dataclass(frozen=True)
class EquivalenceResult:
    """Outcome of an intertwiner search between two matrix families.

    intertwiner is an invertible T with T A_i = B_i T when one was found.
    certain is True exactly when the answer is definitive: either a witness
    was found, or the intertwiner space is {0} so no witness can exist.
    """

    intertwiner: Optional[MatrixQ]
    certain: bool
    nullspace_dim: int

    @property
    def equivalent(self) -> Optional[bool]:
        if self.intertwiner is not None:
            return True
        return False if self.certain else None


def representation_equivalence(
    A: Sequence[MatrixQ], B: Sequence[MatrixQ]
) -> EquivalenceResult:
    """Search {T : T A_i = B_i T for all i} for an invertible element.

    The intertwiner space is solved exactly; the invertible-element search
    runs over small integer coefficient grids and is deterministic.  A
    nonzero space with no invertible element found within the budget is
    reported as undetermined (certain = False).
    """
    if len(A) != len(B):
        raise ValueError(f"family sizes differ: {len(A)} vs {len(B)}")
    if not A:
        raise ValueError("need at least one matrix per family")
    n = A[0].rows
    for M in list(A) + list(B):
        if M.shape() != (n, n):
            raise ValueError("matrices must be square and of equal size")
    rows = []
    for MA, MB in zip(A, B):
        for p in range(n):
            for q in range(n):
                row = [Fraction(0)] * (n * n)
                for r in range(n):
                    row[p * n + r] += MA[(r, q)]
                    row[r * n + q] -= MB[(p, r)]
                rows.append(row)
    kernel = nullspace(MatrixQ(rows))
    d = len(kernel)
    if d == 0:
        return EquivalenceResult(None, True, 0)
    basis = [
        MatrixQ([[v[(p * n + q, 0)] for q in range(n)] for p in range(n)]) for v in kernel
    ]
    # grid values: enough distinct points that a nonvanishing determinant
    # polynomial cannot be zero on the whole grid
    values: List[Fraction] = [Fraction(0)]
    step = 1
    while len(values) <= n:
        values += [Fraction(step), Fraction(-step)]
        step += 1
    if len(values) ** d <= INTERTWINER_GRID_BUDGET:
        candidates = product(values, repeat=d)
    else:
        rng = random.Random(0)
        candidates = (
            tuple(Fraction(rng.randint(-9, 9)) for _ in range(d))
            for _ in range(INTERTWINER_RANDOM_TRIALS)
        )
    for coeffs in candidates:
        if all(c == 0 for c in coeffs):
            continue
        T = MatrixQ.zeros(n, n)
        for c, Tk in zip(coeffs, basis):
            if c != 0:
                T = T + Tk * c
        if T.rank() == n:
            return EquivalenceResult(T, True, d)
    return EquivalenceResult(None, False, d)
