"""
Cones of quadratic forms and their lifts over the n-fold fibre product.

A point of the lifted cone is q = (b; l_1, ..., l_n): a positive
semi-definite form b on a lattice of rank g'' together with n integer
covectors vanishing on the radical of b. Ambient coordinates list the
upper-triangular entries b_ij (i <= j, row-major) followed by the
covectors in order.

Perfect-cone fans are built for g'' <= 2 only; all constructions work
inside an explicit window because the lifted fans are infinite periodic
complexes.
"""

from __future__ import annotations

import itertools
import logging
from fractions import Fraction
from typing import Sequence

from pydantic import BaseModel, ConfigDict, field_validator, model_validator
from sympy import ImmutableMatrix, Matrix

from kugacert.cones import Cone
from kugacert.errors import EmptyFanError, InvalidInputError, UnsupportedRankError
from kugacert.fans import CheckResult, Fan
from kugacert.linalg import IntVector, QuadForm, as_int_matrix, is_primitive, is_psd, rank_and_radical, sign_normalize

logger = logging.getLogger(__name__)

DEFAULT_FAN_WINDOW = 2
MAX_GDD = 2


# ---------------------------------------------------------------------------
# Coordinates
# ---------------------------------------------------------------------------

def sym_coordinates(g_dd: int) -> list[tuple[int, int]]:
    """Index pairs (i, j), i <= j, of the quadratic part in row-major order."""
    return [(i, j) for i in range(g_dd) for j in range(i, g_dd)]


def lifted_rank(g_dd: int, n: int) -> int:
    return g_dd * (g_dd + 1) // 2 + n * g_dd


def base_projection(g_dd: int, n: int) -> tuple[IntVector, ...]:
    """The map (b; l) -> b as the matrix [I | 0]."""
    s = g_dd * (g_dd + 1) // 2
    total = lifted_rank(g_dd, n)
    return tuple(tuple(int(i == k) for k in range(total)) for i in range(s))


class LiftedPoint(BaseModel):
    """A point (b; l_1, ..., l_n) with integer covectors l_j."""

    model_config = ConfigDict(frozen=True)

    b: QuadForm
    ells: tuple[IntVector, ...] = ()

    @field_validator("b", mode="before")
    @classmethod
    def coerce_form(cls, v):
        if isinstance(v, QuadForm):
            return v
        return QuadForm(matrix=v)

    @field_validator("ells", mode="before")
    @classmethod
    def validate_ells(cls, v) -> tuple[IntVector, ...]:
        out = []
        for ell in v:
            row = []
            for x in ell:
                if int(x) != x:
                    raise ValueError(f"covector entries must be integers, got {x}")
                row.append(int(x))
            out.append(tuple(row))
        return tuple(out)

    @model_validator(mode="after")
    def check_lengths(self) -> "LiftedPoint":
        if any(len(ell) != self.b.dim for ell in self.ells):
            raise ValueError(f"covectors must have length {self.b.dim}")
        return self

    @property
    def g_dd(self) -> int:
        return self.b.dim

    @property
    def n(self) -> int:
        return len(self.ells)

    def to_vector(self) -> IntVector:
        if not self.b.is_integral():
            raise InvalidInputError("only integral points have lattice coordinates")
        head = tuple(int(self.b.matrix[i, j]) for i, j in sym_coordinates(self.g_dd))
        return head + tuple(x for ell in self.ells for x in ell)

    @classmethod
    def from_vector(cls, v: Sequence[int], g_dd: int, n: int) -> "LiftedPoint":
        if len(v) != lifted_rank(g_dd, n):
            raise InvalidInputError(f"expected {lifted_rank(g_dd, n)} coordinates, got {len(v)}")
        pairs = sym_coordinates(g_dd)
        b = [[0] * g_dd for _ in range(g_dd)]
        for (i, j), x in zip(pairs, v):
            b[i][j] = b[j][i] = int(x)
        rest = list(v[len(pairs):])
        ells = [rest[k * g_dd:(k + 1) * g_dd] for k in range(n)]
        return cls(b=b, ells=ells)


def in_cone_C(b: QuadForm) -> bool:
    """b is positive semi-definite (its radical is rational automatically)."""
    return is_psd(b)


def in_cone_C_tilde(q: LiftedPoint) -> bool:
    """b is PSD and every covector vanishes on the radical of b."""
    if not is_psd(q.b):
        return False
    _, radical = rank_and_radical(q.b)
    return all(sum(a * r for a, r in zip(ell, v)) == 0 for ell in q.ells for v in radical)


def _rank1_vector(xi: Sequence[int], cs: Sequence[int]) -> IntVector:
    head = tuple(xi[i] * xi[j] for i, j in sym_coordinates(len(xi)))
    return head + tuple(c * x for c in cs for x in xi)


def rank1_lift_generators(xi: Sequence[int], n: int, coeff_bound: int) -> list[LiftedPoint]:
    """The points (xi xi^t; c_1 xi, ..., c_n xi) with |c_j| <= coeff_bound."""
    if coeff_bound < 1:
        raise InvalidInputError("coeff_bound must be at least 1")
    if not any(xi) or not is_primitive(xi):
        raise InvalidInputError(f"xi = {list(xi)} is not primitive")
    b = [[xi[i] * xi[j] for j in range(len(xi))] for i in range(len(xi))]
    return [
        LiftedPoint(b=b, ells=[[c * x for x in xi] for c in cs])
        for cs in itertools.product(range(-coeff_bound, coeff_bound + 1), repeat=n)
    ]


# ---------------------------------------------------------------------------
# Perfect cone decomposition
# ---------------------------------------------------------------------------

PRINCIPAL_TRIANGLE: tuple[IntVector, ...] = ((0, 1), (1, 0), (1, 1))


def _flip(triangle: tuple[IntVector, ...], edge: tuple[IntVector, IntVector]) -> tuple[IntVector, ...]:
    """The Farey neighbour of a triangle across one of its edges."""
    a, b = edge
    (c,) = [v for v in triangle if v not in edge]
    plus = sign_normalize([x + y for x, y in zip(a, b)])
    minus = sign_normalize([x - y for x, y in zip(a, b)])
    new = minus if plus == c else plus
    return tuple(sorted((a, b, new)))


def perfect_triangles(window: int | None = None, word_length: int | None = None) -> list[tuple[IntVector, ...]]:
    """
    Maximal perfect cones for g'' = 2 as triples of primitive xi, reached
    from the principal cone by Farey flips.

    `window` keeps triangles whose xi entries are bounded by it in absolute
    value; `word_length` bounds the number of flips instead.
    """
    if window is None and word_length is None:
        window = DEFAULT_FAN_WINDOW
    start = tuple(sorted(PRINCIPAL_TRIANGLE))
    seen = {start}
    frontier = [(start, 0)]
    while frontier:
        triangle, depth = frontier.pop()
        if word_length is not None and depth >= word_length:
            continue
        for edge in itertools.combinations(triangle, 2):
            new = _flip(triangle, edge)
            if new in seen:
                continue
            if window is not None and any(abs(x) > window for v in new for x in v):
                continue
            seen.add(new)
            frontier.append((new, depth + 1))
    return sorted(seen)


def _base_cones(g_dd: int, window: int | None = None, word_length: int | None = None) -> list[tuple[IntVector, ...]]:
    if g_dd < 1:
        raise InvalidInputError("g'' must be positive")
    if g_dd > MAX_GDD:
        raise UnsupportedRankError(f"perfect cone fans are only built for g'' <= {MAX_GDD}, got {g_dd}")
    if g_dd == 1:
        return [((1,),)]
    return perfect_triangles(window, word_length)


def perfect_cone_fan(g_dd: int, window: int | None = None, word_length: int | None = None) -> Fan:
    """The perfect cone decomposition of C for g'' <= 2, restricted to a window."""
    cones = _base_cones(g_dd, window, word_length)
    rank = g_dd * (g_dd + 1) // 2
    return Fan.from_generators(
        rank,
        [[_rank1_vector(xi, ()) for xi in triangle] for triangle in cones],
        window=window,
    )


# ---------------------------------------------------------------------------
# Lifted fan
# ---------------------------------------------------------------------------

def _nearest(t: Fraction) -> tuple[int, ...]:
    floor = t.numerator // t.denominator
    if t - floor == Fraction(1, 2):
        return (floor, floor + 1)
    return (round(t),)


def _solve(rows: Sequence[IntVector], rhs: Sequence[Fraction]) -> tuple[Fraction, ...] | None:
    if len(rows) == 1:
        return (rhs[0] / rows[0][0],)
    (a, b), (c, d) = rows
    det = a * d - b * c
    if det == 0:
        return None
    return (
        (rhs[0] * d - rhs[1] * b) / det,
        (rhs[1] * a - rhs[0] * c) / det,
    )


def _nearest_maps(xis: tuple[IntVector, ...], window: int) -> set[tuple[tuple[int, ...], ...]]:
    """
    Nearest-integer maps xi -> N(<M, xi>) over the vertices M of the
    arrangement {<M, xi> in 1/2 + Z}, keeping maps with every |c| < window.
    """
    g_dd = len(xis[0])
    halves = [Fraction(2 * k + 1, 2) for k in range(-window, window)]
    maps = set()
    for chosen in itertools.combinations(xis, g_dd):
        for rhs in itertools.product(halves, repeat=g_dd):
            m = _solve(chosen, rhs)
            if m is None:
                continue
            values = tuple(_nearest(sum(mi * x for mi, x in zip(m, xi))) for xi in xis)
            if all(abs(c) < window for cs in values for c in cs):
                maps.add(values)
    return maps


def lifted_fan(g_dd: int, n: int, window: int = DEFAULT_FAN_WINDOW) -> Fan:
    """
    Cones over the bounded faces of the hull of the rank-one lifted points.

    For each base cone with rays xi_1..xi_k and each n-tuple of nearest
    maps, the cone is spanned by (xi xi^t; c_1 xi, ..., c_n xi) with c_j in
    the j-th map's values at xi. Only inclusion-maximal cones with every
    |c_j| < window survive. Base cones use xi entries up to window - 1.
    """
    if window < 2:
        raise InvalidInputError("window must be at least 2")
    if n < 1:
        raise InvalidInputError("n must be at least 1")
    base = _base_cones(g_dd, window=window - 1)
    found: set[frozenset[IntVector]] = set()
    for xis in base:
        maps = sorted(_nearest_maps(xis, window))
        for choice in itertools.product(maps, repeat=n):
            gens = set()
            for a, xi in enumerate(xis):
                for cs in itertools.product(*(m[a] for m in choice)):
                    gens.add(_rank1_vector(xi, cs))
            found.add(frozenset(gens))
    maximal = [s for s in found if not any(s < other for other in found)]
    if not maximal:
        raise EmptyFanError(f"window {window} produces no interior cone")
    logger.debug("lifted fan g''=%d n=%d window=%d: %d cones", g_dd, n, window, len(maximal))
    rank = lifted_rank(g_dd, n)
    return Fan.from_generators(
        rank,
        sorted(sorted(s) for s in maximal),
        projection=base_projection(g_dd, n),
        layout=(g_dd, n),
        window=window,
    )


def base_fan(g_dd: int, window: int = DEFAULT_FAN_WINDOW) -> Fan:
    """The perfect cone fan a lifted fan of the given window sits over."""
    return perfect_cone_fan(g_dd, window=window - 1)


# ---------------------------------------------------------------------------
# Group action
# ---------------------------------------------------------------------------

def _unimodular(h) -> ImmutableMatrix:
    h = as_int_matrix(h)
    if h.rows != h.cols or abs(h.det()) != 1:
        raise InvalidInputError("h must be an invertible integer matrix")
    return h


def _act(h: ImmutableMatrix, x: Sequence[Sequence[int]], b, ells: Sequence[Sequence]) -> tuple:
    b_new = h.T * b * h
    ells_new = []
    for j, ell in enumerate(ells):
        shift = Matrix([list(x[j])]) * b * h
        ells_new.append(list(Matrix([list(ell)]) * h + shift))
    return b_new, ells_new


def _translations(x, g_dd: int, n: int) -> list[list[int]]:
    x = [list(v) for v in x] if x else [[0] * g_dd for _ in range(n)]
    if len(x) != n or any(len(v) != g_dd for v in x):
        raise InvalidInputError(f"x must be {n} integer vectors of length {g_dd}")
    return [[int(t) for t in v] for v in x]


def group_act(h, x, q: LiftedPoint) -> LiftedPoint:
    """
    (h, x) . (b; l) = (h^t b h; l_j h + x_j^t b h).

    h acts by substitution; the translation x_j shifts l_j by b(x_j, .).
    """
    h = _unimodular(h)
    if h.rows != q.g_dd:
        raise InvalidInputError(f"h must be {q.g_dd}x{q.g_dd}")
    x = _translations(x, q.g_dd, q.n)
    b_new, ells_new = _act(h, x, q.b.matrix, q.ells)
    image = LiftedPoint(b=b_new, ells=ells_new)
    if in_cone_C_tilde(q) and not in_cone_C_tilde(image):
        raise InvalidInputError("action did not preserve the lifted cone")
    return image


def lifted_action_matrix(h, x, g_dd: int, n: int) -> ImmutableMatrix:
    """Matrix of group_act on ambient coordinates (columns are images of basis vectors)."""
    h = _unimodular(h)
    if h.rows != g_dd:
        raise InvalidInputError(f"h must be {g_dd}x{g_dd}")
    x = _translations(x, g_dd, n)
    rank = lifted_rank(g_dd, n)
    columns = []
    for k in range(rank):
        e = [int(i == k) for i in range(rank)]
        point = LiftedPoint.from_vector(e, g_dd, n)
        b_new, ells_new = _act(h, x, point.b.matrix, point.ells)
        columns.append(LiftedPoint(b=b_new, ells=ells_new).to_vector())
    return ImmutableMatrix(columns).T


def ray_permutation_check(u, fan: Fan) -> CheckResult:
    """
    Every cone mapped to itself by u must have its rays fixed.

    Cones exchanged with a different cone are listed under details["swaps"].
    """
    u = as_int_matrix(u)
    if u.shape != (fan.ambient_rank, fan.ambient_rank):
        raise InvalidInputError(f"u must be {fan.ambient_rank}x{fan.ambient_rank}")
    by_generators = {frozenset(c.generators): c for c in fan.cones}
    offending = []
    swaps = set()
    for cone in fan.cones:
        images = {g: tuple(int(x) for x in u * Matrix(list(g))) for g in cone.generators}
        target = frozenset(images.values())
        if target not in by_generators:
            raise InvalidInputError(f"u does not preserve the fan: cone {[list(g) for g in cone.generators]}")
        if target == frozenset(cone.generators):
            moved = sorted(g for g, image in images.items() if image != g)
            if moved:
                offending.append({"cone": [list(g) for g in cone.generators], "moved": [list(g) for g in moved]})
        else:
            pair = sorted([tuple(cone.generators), tuple(sorted(target))])
            swaps.add(tuple(pair))
    return CheckResult(
        name="ray_permutation",
        passed=not offending,
        offending=offending,
        details={"swaps": [[[list(g) for g in gens] for gens in pair] for pair in sorted(swaps)]},
    )
