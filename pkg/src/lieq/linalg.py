"""Exact linear algebra over the rationals and real quadratic extensions.

Everything in here is exact: matrices carry `fractions.Fraction` entries (or
`QuadExt` elements a + b*sqrt(d) for a fixed square-free integer d), row
reduction never pivots by magnitude, and characteristic polynomials are
computed by the Faddeev-LeVerrier recursion.  Floating point appears nowhere
in this module.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

Rational = Fraction

Scalar = Union[Fraction, "QuadExt"]


def _as_scalar(x) -> Scalar:
    if isinstance(x, QuadExt):
        return x
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact scalar")


def _square_free(n: int) -> Tuple[int, int]:
    """Write n = s**2 * d with d square-free (d carries the sign of n)."""
    if n == 0:
        return 1, 0
    sign = -1 if n < 0 else 1
    n = abs(n)
    s, d, p = 1, 1, 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            d *= p
        p += 1 if p == 2 else 2
    return s, sign * d * n


class QuadExt:
    """Element a + b*sqrt(d) of a real or imaginary quadratic field.

    d is normalized to a square-free integer; a rational radicand p/q is
    rewritten as sqrt(p*q)/q first.  Arithmetic is closed for a fixed d and
    mixes freely with Fraction/int.  Order comparisons are defined for real
    values whenever both operands live in a common quadratic field (or one of
    them is rational, or both are pure multiples of square roots).
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b=0, d=1):
        a = Fraction(a)
        b = Fraction(b)
        if isinstance(d, QuadExt):
            raise TypeError("radicand must be rational")
        d = Fraction(d)
        if b == 0 or d == 0:
            self.a, self.b, self.d = a, Fraction(0), 1
            return
        # b*sqrt(p/q) = (b/q)*sqrt(p*q)
        b = b / d.denominator
        rad = d.numerator * d.denominator
        s, d0 = _square_free(rad)
        b = b * s
        if d0 == 1:
            self.a, self.b, self.d = a + b, Fraction(0), 1
        else:
            self.a, self.b, self.d = a, b, d0

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is irrational")
        return self.a

    def _coerce(self, other) -> Optional["QuadExt"]:
        if isinstance(other, QuadExt):
            if other.b == 0:
                return QuadExt(other.a)
            if self.b == 0 or other.d == self.d:
                return other
            return None
        if isinstance(other, (int, Fraction)):
            return QuadExt(Fraction(other))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self.d if self.b != 0 else o.d
        out = QuadExt.__new__(QuadExt)
        out.a, out.b, out.d = self.a + o.a, self.b + o.b, d
        if out.b == 0:
            out.d = 1
        return out

    __radd__ = __add__

    def __neg__(self):
        out = QuadExt.__new__(QuadExt)
        out.a, out.b, out.d = -self.a, -self.b, self.d
        return out

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.b != 0 and o.b != 0:
            d = self.d
            a = self.a * o.a + self.b * o.b * d
            b = self.a * o.b + self.b * o.a
        else:
            d = self.d if self.b != 0 else o.d
            a = self.a * o.a
            b = self.a * o.b + self.b * o.a
        out = QuadExt.__new__(QuadExt)
        out.a, out.b, out.d = a, b, d if b != 0 else 1
        return out

    __rmul__ = __mul__

    def conjugate(self) -> "QuadExt":
        out = QuadExt.__new__(QuadExt)
        out.a, out.b, out.d = self.a, -self.b, self.d
        return out

    def inverse(self) -> "QuadExt":
        n = self.a * self.a - self.b * self.b * self.d
        if n == 0:
            if self.a == 0 and self.b == 0:
                raise ZeroDivisionError("division by zero")
            raise ZeroDivisionError("zero field norm")  # impossible: d square-free
        c = self.conjugate()
        out = QuadExt.__new__(QuadExt)
        out.a, out.b, out.d = c.a / n, c.b / n, self.d
        if out.b == 0:
            out.d = 1
        return out

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = QuadExt(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, QuadExt):
            if self.b == 0 and other.b == 0:
                return self.a == other.a
            return self.a == other.a and self.b == other.b and self.d == other.d
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def sign(self) -> int:
        """Sign of the real value a + b*sqrt(d); requires d > 0 when b != 0."""
        if self.b == 0:
            return -1 if self.a < 0 else (1 if self.a > 0 else 0)
        if self.d < 0:
            raise ValueError(f"{self} is not real")
        if self.a == 0:
            return 1 if self.b > 0 else -1
        if self.a > 0 and self.b > 0:
            return 1
        if self.a < 0 and self.b < 0:
            return -1
        # opposite signs: compare a^2 with b^2 d
        lead = 1 if self.a > 0 else -1
        return lead if self.a * self.a > self.b * self.b * self.d else -lead

    def _diff_sign(self, other) -> int:
        o = self._coerce(other)
        if o is None and isinstance(other, QuadExt):
            # different radicands: comparable when both are pure radicals
            if self.a == 0 and other.a == 0:
                if self.d < 0 or other.d < 0:
                    raise ValueError("complex values are unordered")
                sb, ob = self.b.__gt__(0), other.b.__gt__(0)
                if self.b == 0 or other.b == 0 or sb != ob:
                    s = 1 if self.b > 0 else (-1 if self.b < 0 else 0)
                    t = 1 if other.b > 0 else (-1 if other.b < 0 else 0)
                    return (s > t) - (s < t)
                lhs = self.b * self.b * self.d
                rhs = other.b * other.b * other.d
                mag = (lhs > rhs) - (lhs < rhs)
                return mag if sb else -mag
            raise TypeError(f"cannot order elements of Q(sqrt {self.d}) and Q(sqrt {other.d})")
        if o is None:
            raise TypeError(f"cannot compare QuadExt with {type(other).__name__}")
        return (self - o).sign()

    def __lt__(self, other):
        return self._diff_sign(other) < 0

    def __le__(self, other):
        return self._diff_sign(other) <= 0

    def __gt__(self, other):
        return self._diff_sign(other) > 0

    def __ge__(self, other):
        return self._diff_sign(other) >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __float__(self):
        if self.b == 0:
            return float(self.a)
        if self.d < 0:
            raise ValueError(f"{self} is complex; use complex()")
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __complex__(self):
        if self.d < 0 and self.b != 0:
            return complex(float(self.a), float(self.b) * math.sqrt(-self.d))
        return complex(float(self))

    def __repr__(self):
        if self.b == 0:
            return f"{self.a}"
        if self.a == 0:
            return f"{self.b}*sqrt({self.d})"
        op = "+" if self.b > 0 else "-"
        return f"{self.a} {op} {abs(self.b)}*sqrt({self.d})"


def sqrt_exact(q) -> Scalar:
    """Exact square root of a nonnegative rational: Fraction when perfect, else QuadExt."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("sqrt_exact needs a nonnegative rational")
    if q == 0:
        return Fraction(0)
    r = QuadExt(0, 1, q)
    return r.a if r.b == 0 else r


def scalar_float(x) -> float:
    return float(x)


class MatrixQ:
    """Immutable dense matrix with exact entries (Fraction or QuadExt)."""

    __slots__ = ("rows", "cols", "_r")

    def __init__(self, rows: Sequence[Sequence]):
        data = tuple(tuple(_as_scalar(x) for x in row) for row in rows)
        if not data or not data[0]:
            raise ValueError("matrix must be nonempty")
        w = len(data[0])
        if any(len(r) != w for r in data):
            raise ValueError("ragged rows")
        self.rows = len(data)
        self.cols = w
        self._r = data

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "MatrixQ":
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "MatrixQ":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def column(cls, entries: Sequence) -> "MatrixQ":
        return cls([[x] for x in entries])

    @classmethod
    def diagonal(cls, entries: Sequence) -> "MatrixQ":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij) -> Scalar:
        i, j = ij
        return self._r[i][j]

    def row(self, i: int) -> Tuple[Scalar, ...]:
        return self._r[i]

    def col(self, j: int) -> Tuple[Scalar, ...]:
        return tuple(r[j] for r in self._r)

    def row_list(self) -> List[List[Scalar]]:
        return [list(r) for r in self._r]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __eq__(self, other):
        if not isinstance(other, MatrixQ):
            return NotImplemented
        if self.rows != other.rows or self.cols != other.cols:
            return False
        return all(
            self._r[i][j] == other._r[i][j]
            for i in range(self.rows)
            for j in range(self.cols)
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self._r))

    def __add__(self, other: "MatrixQ") -> "MatrixQ":
        self._check_shape(other)
        return MatrixQ(
            [
                [self._r[i][j] + other._r[i][j] for j in range(self.cols)]
                for i in range(self.rows)
            ]
        )

    def __sub__(self, other: "MatrixQ") -> "MatrixQ":
        self._check_shape(other)
        return MatrixQ(
            [
                [self._r[i][j] - other._r[i][j] for j in range(self.cols)]
                for i in range(self.rows)
            ]
        )

    def __neg__(self) -> "MatrixQ":
        return MatrixQ([[-x for x in row] for row in self._r])

    def scale(self, c) -> "MatrixQ":
        c = _as_scalar(c)
        return MatrixQ([[c * x for x in row] for row in self._r])

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other: "MatrixQ") -> "MatrixQ":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.shape()} @ {other.shape()}")
        oc = other.cols
        out = []
        for i in range(self.rows):
            ri = self._r[i]
            row = []
            for j in range(oc):
                s = Fraction(0)
                for k in range(self.cols):
                    a = ri[k]
                    if a != 0:
                        s = s + a * other._r[k][j]
                row.append(s)
            out.append(row)
        return MatrixQ(out)

    def __pow__(self, k: int) -> "MatrixQ":
        if not self.is_square:
            raise ValueError("power of a non-square matrix")
        if k < 0:
            inv = solve_or_invert(self)
            if inv is None:
                raise ZeroDivisionError("matrix is singular")
            return inv ** (-k)
        out = MatrixQ.identity(self.rows)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base if k > 1 else base
            k >>= 1
        return out

    def transpose(self) -> "MatrixQ":
        return MatrixQ([[self._r[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def trace(self) -> Scalar:
        if not self.is_square:
            raise ValueError("trace of a non-square matrix")
        s = Fraction(0)
        for i in range(self.rows):
            s = s + self._r[i][i]
        return s

    def is_zero(self) -> bool:
        return all(x == 0 for row in self._r for x in row)

    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def apply(self, v: Sequence) -> Tuple[Scalar, ...]:
        """Matrix-vector product with a plain sequence."""
        if len(v) != self.cols:
            raise ValueError(f"vector length {len(v)} vs {self.cols} columns")
        vv = [_as_scalar(x) for x in v]
        out = []
        for i in range(self.rows):
            s = Fraction(0)
            for k in range(self.cols):
                a = self._r[i][k]
                if a != 0 and vv[k] != 0:
                    s = s + a * vv[k]
            out.append(s)
        return tuple(out)

    def hstack(self, other: "MatrixQ") -> "MatrixQ":
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        return MatrixQ([list(self._r[i]) + list(other._r[i]) for i in range(self.rows)])

    def vstack(self, other: "MatrixQ") -> "MatrixQ":
        if self.cols != other.cols:
            raise ValueError("column mismatch in vstack")
        return MatrixQ(list(self._r) + list(other._r))

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "MatrixQ":
        return MatrixQ([[self._r[i][j] for j in col_idx] for i in row_idx])

    def rref(self) -> Tuple["MatrixQ", Tuple[int, ...]]:
        """Reduced row echelon form and pivot columns (deterministic, exact)."""
        m = [list(r) for r in self._r]
        nr, nc = self.rows, self.cols
        pivots: List[int] = []
        r = 0
        for c in range(nc):
            pr = None
            for i in range(r, nr):
                if m[i][c] != 0:
                    pr = i
                    break
            if pr is None:
                continue
            m[r], m[pr] = m[pr], m[r]
            pv = m[r][c]
            if pv != 1:
                m[r] = [x / pv for x in m[r]]
            for i in range(nr):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [m[i][j] - f * m[r][j] for j in range(nc)]
            pivots.append(c)
            r += 1
            if r == nr:
                break
        return MatrixQ(m), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def to_float(self) -> List[List[float]]:
        return [[float(x) for x in row] for row in self._r]

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self._r)
        return f"MatrixQ[{body}]"

    def _check_shape(self, other: "MatrixQ"):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError(f"shape mismatch: {self.shape()} vs {other.shape()}")


def nullspace(M: MatrixQ) -> List[MatrixQ]:
    """Deterministic kernel basis: RREF with unit assignment to each free variable."""
    R, pivots = M.rref()
    pivot_set = set(pivots)
    free = [c for c in range(M.cols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [Fraction(0)] * M.cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            coef = R[r, fc]
            if coef != 0:
                v[pc] = -coef
        basis.append(MatrixQ.column(v))
    return basis


def solve_or_invert(M: MatrixQ) -> Optional[MatrixQ]:
    """Exact inverse of a square matrix, or None when singular."""
    if not M.is_square:
        raise ValueError(f"cannot invert a {M.rows}x{M.cols} matrix")
    n = M.rows
    aug = [list(M.row(i)) + [Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    for c in range(n):
        pr = None
        for i in range(c, n):
            if aug[i][c] != 0:
                pr = i
                break
        if pr is None:
            return None
        aug[c], aug[pr] = aug[pr], aug[c]
        pv = aug[c][c]
        if pv != 1:
            aug[c] = [x / pv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [aug[i][j] - f * aug[c][j] for j in range(2 * n)]
    return MatrixQ([row[n:] for row in aug])


def solve_linear(M: MatrixQ, b: Sequence) -> Optional[Tuple[Scalar, ...]]:
    """One exact solution of M x = b (free variables set to 0), or None."""
    bb = [_as_scalar(x) for x in b]
    if len(bb) != M.rows:
        raise ValueError("right-hand side length mismatch")
    aug = MatrixQ([list(M.row(i)) + [bb[i]] for i in range(M.rows)])
    R, pivots = aug.rref()
    if M.cols in pivots:
        return None
    x = [Fraction(0)] * M.cols
    for r, pc in enumerate(pivots):
        x[pc] = R[r, M.cols]
    return tuple(x)


class PolyQ:
    """Dense univariate polynomial, coefficients ascending, exact."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = [_as_scalar(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls) -> "PolyQ":
        return cls([])

    @classmethod
    def x_power(cls, k: int, c=1) -> "PolyQ":
        return cls([0] * k + [c])

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        if self.is_zero:
            raise ValueError("zero polynomial has no degree")
        return len(self.coeffs) - 1

    def leading(self) -> Scalar:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k: int) -> Scalar:
        return self.coeffs[k] if k < len(self.coeffs) else Fraction(0)

    def __eq__(self, other):
        if not isinstance(other, PolyQ):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "PolyQ") -> "PolyQ":
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyQ([self.coeff(i) + other.coeff(i) for i in range(n)])

    def __sub__(self, other: "PolyQ") -> "PolyQ":
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyQ([self.coeff(i) - other.coeff(i) for i in range(n)])

    def __neg__(self) -> "PolyQ":
        return PolyQ([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, PolyQ):
            if self.is_zero or other.is_zero:
                return PolyQ.zero()
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(other.coeffs):
                    if b != 0:
                        out[i + j] = out[i + j] + a * b
            return PolyQ(out)
        c = _as_scalar(other)
        return PolyQ([c * x for x in self.coeffs])

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "PolyQ":
        out = PolyQ([1])
        for _ in range(k):
            out = out * self
        return out

    def divmod(self, other: "PolyQ") -> Tuple["PolyQ", "PolyQ"]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(0, len(rem) - len(other.coeffs) + 1)
        d = other.degree
        lead = other.leading()
        while len(rem) - 1 >= d and rem:
            k = len(rem) - 1 - d
            f = rem[-1] / lead
            q[k] = f
            for i, c in enumerate(other.coeffs):
                rem[k + i] = rem[k + i] - f * c
            while rem and rem[-1] == 0:
                rem.pop()
        return PolyQ(q), PolyQ(rem)

    def monic(self) -> "PolyQ":
        if self.is_zero:
            return self
        lead = self.leading()
        return PolyQ([c / lead for c in self.coeffs])

    def evaluate(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_matrix(self, M: MatrixQ) -> MatrixQ:
        if not M.is_square:
            raise ValueError("polynomial of a non-square matrix")
        acc = MatrixQ.zeros(M.rows, M.cols)
        for c in reversed(self.coeffs):
            acc = acc @ M
            if c != 0:
                acc = acc + MatrixQ.identity(M.rows).scale(c)
        return acc

    def derivative(self) -> "PolyQ":
        return PolyQ([i * c for i, c in enumerate(self.coeffs)][1:])

    def __repr__(self):
        if self.is_zero:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            term = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if i > 0 and c == 1:
                pass
            elif i > 0 and c == -1:
                term = "-" + term
            else:
                term = f"{c}" if i == 0 else f"{c}*{term}"
            parts.append(term)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


def char_poly(M: MatrixQ) -> PolyQ:
    """det(M - x*I) by Faddeev-LeVerrier; supported for sizes up to 7."""
    if not M.is_square:
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = M.rows
    if n > 7:
        raise ValueError(f"size {n} exceeds the supported bound of 7")
    # Faddeev-LeVerrier yields det(x*I - M) = x^n - c1 x^(n-1) - ... - cn
    cs = []
    Mk = M
    for k in range(1, n + 1):
        ck = Mk.trace() * Fraction(1, k)
        cs.append(ck)
        if k < n:
            Mk = M @ (Mk - MatrixQ.identity(n).scale(ck))
    asc = [-cs[n - 1 - i] for i in range(n)] + [Fraction(1)]
    if n % 2 == 1:
        asc = [-c for c in asc]
    return PolyQ(asc)


class FactorTerm(NamedTuple):
    poly: "PolyQ"  # monic irreducible over Q
    multiplicity: int
    eigen_supported: bool  # degree <= 2, usable for eigen decomposition


def _int_divisors(n: int) -> List[int]:
    n = abs(n)
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return sorted(out)


def _primitive_int(p: PolyQ) -> List[int]:
    den = 1
    for c in p.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    g = 0
    for v in ints:
        g = math.gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    if ints[-1] < 0:
        ints = [-v for v in ints]
    return ints

def _int_poly_eval(ints: List[int], x: int) -> int:
    acc = 0
    for c in reversed(ints):
        acc = acc * x + c
    return acc


def _trial_divide(rem: PolyQ, deg: int) -> Optional[PolyQ]:
    """Search an integer factor of the given degree by divisor interpolation.

    Classical Kronecker search: an integer factor g of an integer polynomial P
    satisfies g(k) | P(k) at every integer k, so candidate factors are
    interpolated from divisor choices at a few points and then verified by
    exact division.  The caller guarantees rem has no rational roots, hence
    P(k) != 0 at the probe points.
    """
    ints = _primitive_int(rem)
    lead, const = ints[-1], ints[0]
    p1, pm1 = _int_poly_eval(ints, 1), _int_poly_eval(ints, -1)
    p2 = _int_poly_eval(ints, 2)
    tops = [s * d for d in _int_divisors(lead) for s in (1, -1)]
    g0s = [s * d for d in _int_divisors(const) for s in (1, -1)]
    g1s = [s * d for d in _int_divisors(p1) for s in (1, -1)]
    gm1s = [s * d for d in _int_divisors(pm1) for s in (1, -1)] if deg == 3 else [None]

    def verified(cand, gm1, g2):
        if gm1 == 0 or g2 == 0 or pm1 % gm1 != 0 or p2 % g2 != 0:
            return None
        g = PolyQ(cand)
        return g.monic() if rem.divmod(g)[1].is_zero else None

    for a_top in tops:
        for g0 in g0s:
            for g1 in g1s:
                if deg == 2:
                    a1 = g1 - a_top - g0
                    hit = verified([g0, a1, a_top], a_top - a1 + g0,
                                   4 * a_top + 2 * a1 + g0)
                    if hit is not None:
                        return hit
                    continue
                for gm1 in gm1s:
                    if (g1 - gm1) % 2 != 0:
                        continue
                    a2 = (g1 + gm1) // 2 - g0
                    a1 = (g1 - gm1) // 2 - a_top
                    hit = verified([g0, a1, a2, a_top], gm1,
                                   8 * a_top + 4 * a2 + 2 * a1 + g0)
                    if hit is not None:
                        return hit
    return None


def factor_over_rationals(p: PolyQ) -> List[FactorTerm]:
    """Factor into monic irreducibles over Q (degree <= 7).

    The product of factors to their multiplicities equals p up to the rational
    leading coefficient.  Factors of degree >= 3 are returned with
    eigen_supported=False: they are irreducible but outside the scope of the
    eigen machinery built on quadratic extensions.
    """
    if p.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    if p.degree > 7:
        raise ValueError(f"degree {p.degree} exceeds the supported bound of 7")
    found: List[PolyQ] = []
    rem = p.monic()

    # powers of x
    k = 0
    while not rem.is_zero and rem.coeff(0) == 0 and rem.degree > 0:
        rem = rem.divmod(PolyQ([0, 1]))[0]
        k += 1
    found.extend([PolyQ([0, 1])] * k)

    # rational roots via divisors of the primitive integer polynomial's ends
    while rem.degree >= 1:
        ints = _primitive_int(rem)
        hit = None
        for qd in _int_divisors(ints[-1]):
            for pn in _int_divisors(ints[0]):
                for root in (Fraction(pn, qd), Fraction(-pn, qd)):
                    if rem.evaluate(root) == 0:
                        hit = root
                        break
                if hit is not None:
                    break
            if hit is not None:
                break
        if hit is None:
            break
        rem = rem.divmod(PolyQ([-hit, 1]))[0]
        found.append(PolyQ([-hit, 1]))

    # quadratic factors (irreducible: no rational roots remain)
    while rem.degree >= 4:
        g = _trial_divide(rem, 2)
        if g is None:
            break
        rem = rem.divmod(g)[0]
        found.append(g)
    # a cubic split can only hide in remainders of degree 6 or 7
    while rem.degree >= 6:
        g = _trial_divide(rem, 3)
        if g is None:
            break
        rem = rem.divmod(g)[0]
        found.append(g)
    if rem.degree >= 1:
        found.append(rem.monic())

    counted = {}
    for f in found:
        counted[f.coeffs] = counted.get(f.coeffs, 0) + 1
    out = [
        FactorTerm(PolyQ(c), m, len(c) - 1 <= 2)
        for c, m in counted.items()
    ]
    out.sort(key=lambda t: (t.poly.degree, t.poly.coeffs))
    return out


def matrix_exp_nilpotent(N: MatrixQ) -> MatrixQ:
    """Exact exp of a verified-nilpotent matrix: sum of N^k / k! for k < size."""
    if not N.is_square:
        raise ValueError("exponential of a non-square matrix")
    n = N.rows
    powers = [MatrixQ.identity(n)]
    for _ in range(n):
        powers.append(powers[-1] @ N)
    if not powers[n].is_zero():
        raise ValueError(f"matrix is not nilpotent: N^{n} != 0")
    acc = MatrixQ.zeros(n, n)
    fact = 1
    for k in range(n):
        if k > 0:
            fact *= k
        acc = acc + powers[k].scale(Fraction(1, fact))
    return acc


def symmetric_signature(S: MatrixQ) -> Tuple[int, int, int]:
    """Signature (positive, negative, zero) of a symmetric matrix by congruence."""
    if not S.is_square:
        raise ValueError("signature of a non-square matrix")
    if S != S.transpose():
        raise ValueError("matrix is not symmetric")
    n = S.rows
    a = [list(S.row(i)) for i in range(n)]

    def swap(i, j):
        a[i], a[j] = a[j], a[i]
        for r in a:
            r[i], r[j] = r[j], r[i]

    def add_into(i, j):  # row/col i += row/col j
        a[i] = [a[i][c] + a[j][c] for c in range(n)]
        for r in a:
            r[i] = r[i] + r[j]

    pos = neg = zero = 0
    for i in range(n):
        if a[i][i] == 0:
            pivot = next((j for j in range(i + 1, n) if a[j][j] != 0), None)
            if pivot is not None:
                swap(i, pivot)
            else:
                off = next((j for j in range(i + 1, n) if a[i][j] != 0), None)
                if off is None:
                    zero += 1
                    continue
                add_into(i, off)
        d = a[i][i]
        for j in range(i + 1, n):
            if a[j][i] != 0:
                f = a[j][i] / d
                a[j] = [a[j][c] - f * a[i][c] for c in range(n)]
                for r in a:
                    r[j] = r[j] - f * r[i]
        s = d.sign() if isinstance(d, QuadExt) else (1 if d > 0 else -1)
        if s > 0:
            pos += 1
        else:
            neg += 1
    return pos, neg, zero
