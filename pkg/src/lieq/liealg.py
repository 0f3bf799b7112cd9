"""Finite-dimensional Lie algebras over Q given by structure constants.

A `LieAlgebra` stores the brackets [e_i, e_j] for i < j as exact coefficient
vectors; everything else (Jacobi checking, adjoint matrices, derived and
lower central series, centers, ideals, nilradical checks, base change) is
derived from that table with exact arithmetic.

Dimension is capped at 7.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .linalg import MatrixQ, nullspace, solve_or_invert

MAX_DIM = 7


def _vec(entries: Sequence, n: int) -> Tuple[Fraction, ...]:
    out = tuple(Fraction(x) if not isinstance(x, Fraction) else x for x in entries)
    if len(out) != n:
        raise ValueError(f"coefficient vector of length {len(out)}, expected {n}")
    return out


def _zero(n: int) -> Tuple[Fraction, ...]:
    return tuple([Fraction(0)] * n)


class Subspace:
    """Subspace of Q^n with a unique reduced-echelon basis."""

    __slots__ = ("ambient", "basis", "_pivots")

    def __init__(self, ambient: int, vectors: Sequence[Sequence] = ()):
        self.ambient = ambient
        rows = [_vec(v, ambient) for v in vectors]
        if rows:
            R, pivots = MatrixQ(rows).rref()
            self.basis = tuple(R.row(i) for i in range(len(pivots)))
            self._pivots = pivots
        else:
            self.basis = ()
            self._pivots = ()

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains_vector(self, v: Sequence) -> bool:
        return self.coordinates(v) is not None

    def coordinates(self, v: Sequence) -> Optional[Tuple[Fraction, ...]]:
        """Coordinates of v in the echelon basis, or None when v is outside."""
        w = list(_vec(v, self.ambient))
        coords = []
        for row, p in zip(self.basis, self._pivots):
            c = w[p]
            coords.append(c)
            if c != 0:
                w = [w[k] - c * row[k] for k in range(self.ambient)]
        if any(x != 0 for x in w):
            return None
        return tuple(coords)

    def contains(self, other: "Subspace") -> bool:
        return all(self.contains_vector(v) for v in other.basis)

    def add(self, other: "Subspace") -> "Subspace":
        return Subspace(self.ambient, list(self.basis) + list(other.basis))

    def add_vectors(self, vectors: Sequence[Sequence]) -> "Subspace":
        return Subspace(self.ambient, list(self.basis) + [list(v) for v in vectors])

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim} of {self.ambient})"


@dataclass(frozen=True)
class SeriesProfile:
    """Dimension profiles of the derived and lower central series.

    Each list records the dimensions of successive terms after the algebra
    itself, stopping once a term vanishes or repeats its predecessor (the
    stable value is recorded once).
    """

    derived_dims: Tuple[int, ...]
    lcs_dims: Tuple[int, ...]
    solvable: bool
    nilpotent: bool


@dataclass(frozen=True)
class JacobiViolation:
    i: int
    j: int
    k: int
    residual: Tuple[Fraction, ...]


class LieAlgebra:
    """Lie algebra on basis e_1..e_n given by brackets [e_i, e_j] for i < j."""

    __slots__ = ("dim", "table", "_nilradical_cache")

    def __init__(self, dim: int, table: Dict[Tuple[int, int], Sequence]):
        if not 1 <= dim <= MAX_DIM:
            raise ValueError(f"dimension {dim} outside supported range 1..{MAX_DIM}")
        self.dim = dim
        clean: Dict[Tuple[int, int], Tuple[Fraction, ...]] = {}
        for (i, j), coeffs in table.items():
            if not (0 <= i < j < dim):
                raise ValueError(f"bracket indices ({i + 1},{j + 1}) out of range for dim {dim}")
            v = _vec(coeffs, dim)
            if any(c != 0 for c in v):
                clean[(i, j)] = v
        self.table = clean
        self._nilradical_cache: Optional[Subspace] = None

    def structure_constant(self, i: int, j: int) -> Tuple[Fraction, ...]:
        """[e_i, e_j] as a coefficient vector, any index order."""
        if i == j:
            return _zero(self.dim)
        if i < j:
            return self.table.get((i, j), _zero(self.dim))
        v = self.table.get((j, i))
        return _zero(self.dim) if v is None else tuple(-c for c in v)

    def bracket(self, x: Sequence, y: Sequence) -> Tuple[Fraction, ...]:
        xv, yv = _vec(x, self.dim), _vec(y, self.dim)
        out = [Fraction(0)] * self.dim
        for (i, j), cij in self.table.items():
            f = xv[i] * yv[j] - xv[j] * yv[i]
            if f != 0:
                for k in range(self.dim):
                    if cij[k] != 0:
                        out[k] += f * cij[k]
        return tuple(out)

    def check_jacobi(self) -> Optional[JacobiViolation]:
        """None when the Jacobi identity holds; else the first bad triple."""
        n = self.dim
        basis = [[1 if t == s else 0 for t in range(n)] for s in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    r1 = self.bracket(self.structure_constant(i, j), basis[k])
                    r2 = self.bracket(self.structure_constant(j, k), basis[i])
                    r3 = self.bracket(self.structure_constant(k, i), basis[j])
                    res = tuple(a + b + c for a, b, c in zip(r1, r2, r3))
                    if any(x != 0 for x in res):
                        return JacobiViolation(i, j, k, res)
        return None

    def ad_matrix(self, x: Sequence) -> MatrixQ:
        """Matrix of ad(x); column j holds [x, e_j]."""
        cols = []
        for j in range(self.dim):
            ej = [1 if t == j else 0 for t in range(self.dim)]
            cols.append(self.bracket(x, ej))
        return MatrixQ([[cols[j][i] for j in range(self.dim)] for i in range(self.dim)])

    def ad_basis(self, i: int) -> MatrixQ:
        return self.ad_matrix([1 if t == i else 0 for t in range(self.dim)])

    # ------------------------------------------------------------- subspaces

    def product_space(self, a: Subspace, b: Subspace) -> Subspace:
        """Span of [x, y] over basis pairs of a and b."""
        vecs = [self.bracket(u, v) for u in a.basis for v in b.basis]
        return Subspace(self.dim, [v for v in vecs if any(c != 0 for c in v)])

    def derived_algebra(self) -> Subspace:
        g = Subspace.full(self.dim)
        return self.product_space(g, g)

    def _series_dims(self, step) -> Tuple[Tuple[int, ...], bool]:
        term = Subspace.full(self.dim)
        dims: List[int] = []
        while True:
            nxt = step(term)
            dims.append(nxt.dim)
            if nxt.dim == 0:
                return tuple(dims), True
            if nxt.dim == term.dim:
                return tuple(dims), False
            term = nxt

    def series_profile(self) -> SeriesProfile:
        derived, solvable = self._series_dims(lambda t: self.product_space(t, t))
        full = Subspace.full(self.dim)
        lcs, nilpotent = self._series_dims(lambda t: self.product_space(full, t))
        return SeriesProfile(derived, lcs, solvable, nilpotent)

    def derived_series_dims(self) -> Tuple[int, ...]:
        return self.series_profile().derived_dims

    def lower_central_series_dims(self) -> Tuple[int, ...]:
        return self.series_profile().lcs_dims

    def is_solvable(self) -> bool:
        return self._series_dims(lambda t: self.product_space(t, t))[1]

    def is_nilpotent(self) -> bool:
        full = Subspace.full(self.dim)
        return self._series_dims(lambda t: self.product_space(full, t))[1]

    def center(self) -> Subspace:
        stacked = self.ad_basis(0)
        for j in range(1, self.dim):
            stacked = stacked.vstack(self.ad_basis(j))
        return Subspace(self.dim, [v.col(0) for v in nullspace(stacked)])

    def is_ideal(self, s: Subspace) -> bool:
        for j in range(self.dim):
            ej = [1 if t == j else 0 for t in range(self.dim)]
            for u in s.basis:
                if not s.contains_vector(self.bracket(ej, u)):
                    return False
        return True

    def restrict(self, s: Subspace) -> "LieAlgebra":
        """The bracket structure on s in its echelon basis; s must be closed."""
        k = s.dim
        table: Dict[Tuple[int, int], Tuple[Fraction, ...]] = {}
        for i in range(k):
            for j in range(i + 1, k):
                w = self.bracket(s.basis[i], s.basis[j])
                coords = s.coordinates(w)
                if coords is None:
                    raise ValueError(
                        f"subspace is not closed under the bracket: "
                        f"[u_{i + 1}, u_{j + 1}] lies outside"
                    )
                table[(i, j)] = coords
        return LieAlgebra(k, table)

    def _complement_indices(self, s: Subspace) -> List[int]:
        """Standard basis indices completing s to the full space."""
        chosen: List[int] = []
        cur = s
        for idx in range(self.dim):
            if cur.dim == self.dim:
                break
            e = [1 if t == idx else 0 for t in range(self.dim)]
            if not cur.contains_vector(e):
                cur = cur.add_vectors([e])
                chosen.append(idx)
        return chosen

    def verify_nilradical(self, s: Subspace) -> bool:
        """Check that s is the nilradical of a solvable algebra.

        Requires solvability; confirms s is a nilpotent ideal containing the
        derived algebra and that no nilpotent ideal is strictly larger.  Every
        nilpotent ideal lies inside the nilradical, so maximality amounts to
        s having the nilradical's dimension: at codimension 1 that is just g
        itself not being nilpotent, and in general s must equal the set of
        ad-nilpotent elements.
        """
        if not self.is_solvable():
            raise ValueError("nilradical verification requires a solvable algebra")
        if not self.is_ideal(s):
            return False
        if s.dim > 0:
            try:
                inner = self.restrict(s)
            except ValueError:
                return False
            if not inner.is_nilpotent():
                return False
        if not s.contains(self.derived_algebra()):
            return False
        if s.dim == self.dim:
            return True
        if s.dim == self.dim - 1:
            return not self.is_nilpotent()
        return s == self._nilradical_exact()

    def nilradical_codim_search(self) -> Tuple[Subspace, int]:
        """The nilradical of a solvable algebra and its codimension.

        Deterministic and basis-independent; see _nilradical_exact for the
        trace-form characterization used.
        """
        if not self.is_solvable():
            raise ValueError("nilradical search requires a solvable algebra")
        nr = self._nilradical_exact()
        return nr, self.dim - nr.dim

    def nilpotent_elements_subspace(self) -> Subspace:
        """Elements with nilpotent adjoint action, for a solvable algebra.

        The set is a subspace: the nilradical.
        """
        if not self.is_solvable():
            raise ValueError("requires a solvable algebra")
        return self._nilradical_exact()

    def _nilradical_exact(self) -> Subspace:
        """Set of ad-nilpotent elements of a solvable algebra, exactly.

        For solvable g this set is the nilradical, and it is cut out by the
        linear conditions tr(ad(x) w) = 0 with w running over the unital
        matrix algebra A generated by ad(g): ad(g) is simultaneously
        triangularizable over the complex numbers, so tr(ad(x) w) reads off a
        combination of the diagonal (weight) entries of ad(x), all of which
        vanish exactly on the nilradical; conversely w = (ad x)^(k-1) lies in
        A, so the conditions force tr((ad x)^k) = 0 for every k, hence ad(x)
        nilpotent.  The computation is rational and basis-independent.
        """
        if self._nilradical_cache is None:
            n = self.dim
            if self.is_nilpotent():
                self._nilradical_cache = Subspace.full(n)
                return self._nilradical_cache
            ads = [self.ad_basis(i) for i in range(n)]
            span = _FlatSpan()
            words: List[MatrixQ] = []
            frontier: List[MatrixQ] = []
            for W in [MatrixQ.identity(n), *ads]:
                if span.add(_flatten(W)):
                    words.append(W)
                    frontier.append(W)
            while frontier:
                fresh: List[MatrixQ] = []
                for W in frontier:
                    for A in ads:
                        P = A @ W
                        if span.add(_flatten(P)):
                            words.append(P)
                            fresh.append(P)
                frontier = fresh
            rows = [
                [sum(a.row(p)[q] * W.row(q)[p] for p in range(n) for q in range(n)) for a in ads]
                for W in words
            ]
            kernel = nullspace(MatrixQ(rows))
            self._nilradical_cache = Subspace(n, [v.col(0) for v in kernel])
        return self._nilradical_cache

    # ------------------------------------------------------------ base change

    def change_basis(self, P: MatrixQ) -> "LieAlgebra":
        """Structure constants in the basis given by the columns of P."""
        if P.shape() != (self.dim, self.dim):
            raise ValueError(f"base change must be {self.dim}x{self.dim}")
        Pinv = solve_or_invert(P)
        if Pinv is None:
            raise ValueError("base change matrix is singular")
        n = self.dim
        table: Dict[Tuple[int, int], Tuple[Fraction, ...]] = {}
        for i in range(n):
            for j in range(i + 1, n):
                w = self.bracket(P.col(i), P.col(j))
                table[(i, j)] = Pinv.apply(w)
        return LieAlgebra(n, table)

    def decomposability_heuristic(self) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
        """A pair of complementary coordinate ideals, or None when not found.

        None means unknown: only splittings along the given basis are tried.
        """
        n = self.dim
        rest = list(range(1, n))
        for size in range(1, n):
            for subset in _subsets(rest, size - 1):
                part_a = (0,) + subset
                part_b = tuple(t for t in range(n) if t not in part_a)
                if not part_b:
                    continue
                sa = Subspace(n, [[1 if t == idx else 0 for t in range(n)] for idx in part_a])
                sb = Subspace(n, [[1 if t == idx else 0 for t in range(n)] for idx in part_b])
                if self.is_ideal(sa) and self.is_ideal(sb):
                    return part_a, part_b
        return None

    def killing_matrix(self) -> MatrixQ:
        ads = [self.ad_basis(i) for i in range(self.dim)]
        return MatrixQ(
            [[(ads[i] @ ads[j]).trace() for j in range(self.dim)] for i in range(self.dim)]
        )

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.dim == other.dim and self.table == other.table

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, brackets={len(self.table)})"


def _flatten(M: MatrixQ) -> Tuple[Fraction, ...]:
    return tuple(x for i in range(M.rows) for x in M.row(i))


class _FlatSpan:
    """Incremental row space over Q with reduced pivot rows, for closures."""

    def __init__(self):
        self.rows: Dict[int, Tuple[Fraction, ...]] = {}

    def add(self, vec: Sequence[Fraction]) -> bool:
        """Reduce vec against the span; add and return True if independent."""
        v = list(vec)
        for p in sorted(self.rows):
            c = v[p]
            if c:
                row = self.rows[p]
                v = [a - c * b for a, b in zip(v, row)]
        for idx, c in enumerate(v):
            if c:
                self.rows[idx] = tuple(a / c for a in v)
                return True
        return False


def _subsets(items: Sequence[int], size: int):
    from itertools import combinations

    return combinations(items, size)
