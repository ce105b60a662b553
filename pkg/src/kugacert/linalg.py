"""
Exact integer and rational linear algebra.

IntMatrix values are sympy ImmutableMatrix instances with integer entries.
Lattice work (kernels, saturation) runs on numpy object arrays of Python
ints with unimodular column operations driven by an extended Euclid step,
so every basis returned is a Z-basis and never needs rounding.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator
from sympy import ImmutableMatrix, Integer, Matrix, Rational, eye, zeros

from kugacert.errors import InvalidInputError

IntMatrix = ImmutableMatrix
IntVector = tuple[int, ...]


# ---------------------------------------------------------------------------
# Construction helpers
# ---------------------------------------------------------------------------

def _integer_entry(x) -> Integer:
    if isinstance(x, float) and not x.is_integer():
        raise ValueError(f"{x} is not an integer")
    return Integer(int(x))


def as_int_matrix(data) -> ImmutableMatrix:
    """Build an integer IntMatrix from nested sequences (ints or decimal strings)."""
    if isinstance(data, Matrix | ImmutableMatrix):
        m = ImmutableMatrix(data)
    else:
        rows = [list(r) for r in data]
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise InvalidInputError("matrix rows must be non-empty and of equal length")
        try:
            m = ImmutableMatrix([[_integer_entry(x) for x in r] for r in rows])
        except (TypeError, ValueError) as exc:
            raise InvalidInputError(f"matrix entries must be integers: {exc}") from exc
    if not all(x.is_Integer for x in m):
        raise InvalidInputError("matrix entries must be integers")
    return m


def primitive(v: Sequence[int]) -> IntVector:
    """Divide a nonzero integer vector by the gcd of its entries."""
    g = math.gcd(*(int(x) for x in v))
    if g == 0:
        raise InvalidInputError("the zero vector has no primitive representative")
    return tuple(int(x) // g for x in v)


def is_primitive(v: Sequence[int]) -> bool:
    return math.gcd(*(int(x) for x in v)) == 1


def sign_normalize(v: Sequence[int]) -> IntVector:
    """Flip v so that its first nonzero entry is positive."""
    for x in v:
        if x != 0:
            return tuple(int(y) for y in v) if x > 0 else tuple(-int(y) for y in v)
    return tuple(int(y) for y in v)


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


# ---------------------------------------------------------------------------
# Symplectic predicate
# ---------------------------------------------------------------------------

def standard_symplectic_form(g: int) -> ImmutableMatrix:
    """J with blocks (0, -1_g; 1_g, 0)."""
    j = zeros(2 * g, 2 * g)
    j[:g, g:] = -eye(g)
    j[g:, :g] = eye(g)
    return ImmutableMatrix(j)


def is_symplectic(m, g: int) -> bool:
    """True iff m^t J m = J for the standard skew form of genus g."""
    if g < 1:
        raise InvalidInputError("g must be positive")
    m = ImmutableMatrix(m)
    if m.shape != (2 * g, 2 * g):
        raise InvalidInputError(f"expected a {2 * g}x{2 * g} matrix, got {m.shape[0]}x{m.shape[1]}")
    j = standard_symplectic_form(g)
    return m.T * j * m == j


# ---------------------------------------------------------------------------
# Quadratic forms
# ---------------------------------------------------------------------------

class QuadForm(BaseModel):
    """A symmetric matrix over Q, usually integral."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    matrix: ImmutableMatrix

    @field_validator("matrix", mode="before")
    @classmethod
    def validate_matrix(cls, v) -> ImmutableMatrix:
        if not isinstance(v, Matrix | ImmutableMatrix):
            rows = [list(r) for r in v]
            v = ImmutableMatrix([[Rational(x) for x in r] for r in rows])
        v = ImmutableMatrix(v)
        if v.rows != v.cols or v.rows == 0:
            raise ValueError("quadratic form matrix must be square and non-empty")
        if v != v.T:
            raise ValueError("quadratic form matrix must be symmetric")
        return v

    @property
    def dim(self) -> int:
        return self.matrix.rows

    def value(self, x: Sequence[int]) -> Rational:
        """x^t q x."""
        col = Matrix(list(x))
        return (col.T * self.matrix * col)[0, 0]

    def is_integral(self) -> bool:
        return all(e.is_Integer for e in self.matrix)

    def pullback(self, h) -> "QuadForm":
        """The substituted form h^t q h."""
        h = ImmutableMatrix(h)
        return QuadForm(matrix=h.T * self.matrix * h)


def ldl(q: QuadForm) -> tuple[list[Fraction], list[list[Fraction]]] | None:
    """
    Rational LDL^t of a positive definite form, or None.

    Returns (d, mu) with q(x) = sum_i d[i] * (x_i + sum_{j>i} mu[i][j] x_j)^2.
    """
    n = q.dim
    a = [[to_fraction(q.matrix[i, j]) for j in range(n)] for i in range(n)]
    d: list[Fraction] = []
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        if a[i][i] <= 0:
            return None
        d.append(a[i][i])
        for j in range(i + 1, n):
            mu[i][j] = a[i][j] / a[i][i]
        for j in range(i + 1, n):
            for k in range(i + 1, n):
                a[j][k] -= a[j][i] * a[i][k] / a[i][i]
    return d, mu


def is_psd(q: QuadForm) -> bool:
    """
    Exact positive semi-definiteness via symmetric elimination with
    diagonal pivoting.
    """
    n = q.dim
    a = [[Rational(q.matrix[i, j]) for j in range(n)] for i in range(n)]
    active = list(range(n))
    while active:
        if any(a[i][i] < 0 for i in active):
            return False
        pivot = next((i for i in active if a[i][i] > 0), None)
        if pivot is None:
            # zero diagonal: PSD only if the remaining block vanishes
            return all(a[i][j] == 0 for i in active for j in active)
        rest = [i for i in active if i != pivot]
        for j in rest:
            for k in rest:
                a[j][k] -= a[j][pivot] * a[pivot][k] / a[pivot][pivot]
        active = rest
    return True


def rank_and_radical(q: QuadForm) -> tuple[int, list[IntVector]]:
    """Rank over Q and a saturated integer basis of the kernel."""
    rank = q.matrix.rank()
    scaled = q.matrix * _common_denominator(q.matrix)
    radical = [sign_normalize(v) for v in integer_kernel(scaled)]
    return rank, sorted(radical, reverse=True)


def _common_denominator(m) -> int:
    return math.lcm(*(int(Rational(x).q) for x in m)) if len(m) else 1


# ---------------------------------------------------------------------------
# Lattice kernels and saturation
# ---------------------------------------------------------------------------

def exgcd(a: int, b: int) -> np.ndarray:
    """
    A 2x2 unimodular integer matrix M with M @ [a, b] = [gcd(a, b), 0].
    """
    a_sign = -1 if a < 0 else 1
    b_sign = -1 if b < 0 else 1
    a, b = a * a_sign, b * b_sign
    m = np.array([[b, 0, 1], [a, 1, 0]], dtype=object)
    while m[1, 0] != 0:
        q = m[0, 0] // m[1, 0]
        m[0] -= q * m[1]
        m = m[::-1]
    g = m[0, 0]
    m = m[:, 1:] * np.array([a_sign, b_sign], dtype=object)
    if g != 0:
        m[1] = [-b_sign * b // g, a_sign * a // g]
    return m


def integer_kernel(a) -> list[IntVector]:
    """
    A Z-basis of {x in Z^n : a x = 0}.

    Column-reduces a with unimodular operations tracked in u; the columns
    of u that end up over zero columns of a u span the integer kernel.
    """
    mat = np.array([[int(x) for x in row] for row in Matrix(a).tolist()], dtype=object)
    if mat.size == 0:
        return []
    rows, cols = mat.shape
    u = np.eye(cols, dtype=object)
    pivot = 0
    for i in range(rows):
        if pivot == cols:
            break
        for j in range(pivot + 1, cols):
            if mat[i, j] == 0:
                continue
            m = exgcd(mat[i, pivot], mat[i, j]).T
            mat[:, [pivot, j]] = mat[:, [pivot, j]] @ m
            u[:, [pivot, j]] = u[:, [pivot, j]] @ m
        if mat[i, pivot] != 0:
            pivot += 1
    return [tuple(int(x) for x in u[:, k]) for k in range(pivot, cols)]


def saturate(vectors: Iterable[Sequence[int]], ambient_rank: int) -> list[IntVector]:
    """A Z-basis of span(vectors) intersected with Z^ambient_rank."""
    vs = [list(v) for v in vectors]
    if not vs:
        return []
    annihilator = integer_kernel(Matrix(vs))
    if not annihilator:
        return [tuple(int(i == k) for i in range(ambient_rank)) for k in range(ambient_rank)]
    return integer_kernel(Matrix([list(w) for w in annihilator]))


def lattice_coordinates(basis: Sequence[Sequence[int]], v: Sequence[int]) -> tuple[Rational, ...] | None:
    """Coordinates of v in the given (independent) basis, or None if v is outside the span."""
    b = Matrix([list(x) for x in basis]).T
    col = Matrix(list(v))
    gram = b.T * b
    coords = gram.LUsolve(b.T * col)
    if b * coords != col:
        return None
    return tuple(Rational(c) for c in coords)


def rank_of(vectors: Sequence[Sequence[int]]) -> int:
    if not vectors:
        return 0
    return Matrix([list(v) for v in vectors]).rank()


def to_fraction(x) -> Fraction:
    r = Rational(x)
    return Fraction(int(r.p), int(r.q))


def render_rational(x) -> str:
    """Canonical text form "p/q" ("p" for integers)."""
    r = Rational(x.numerator, x.denominator) if isinstance(x, Fraction) else Rational(x)
    return str(r.p) if r.q == 1 else f"{r.p}/{r.q}"
