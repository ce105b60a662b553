"""
Rational polyhedral cones in Z^N.

A Cone is stored by its primitive ray generators. Linear feasibility
questions (pointedness, face test, membership) go to scipy's HiGHS LP
solver; every feasible answer is rounded to small rationals and checked
again in exact arithmetic. When the rounded answer fails that check, an
exact vertex of the feasible set is solved for with sympy instead.
"""

from __future__ import annotations

import itertools
import logging
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator
from scipy.optimize import linprog
from sympy import Matrix

from kugacert.errors import InvalidInputError
from kugacert.linalg import (
    IntVector,
    integer_kernel,
    is_primitive,
    lattice_coordinates,
    rank_of,
    saturate,
    to_fraction,
)

logger = logging.getLogger(__name__)

# Denominator bound used when rationalising LP solutions.
LP_DENOMINATOR_LIMIT = 10**6

# Candidate bases tried by the exact fallback before it gives up.
EXACT_VERTEX_LIMIT = 200_000


# ---------------------------------------------------------------------------
# LP oracle
# ---------------------------------------------------------------------------

def _rationalise(values: Iterable[float]) -> list[Fraction]:
    return [Fraction(float(x)).limit_denominator(LP_DENOMINATOR_LIMIT) for x in values]


def _dot(w: Sequence[Fraction], v: Sequence[int]) -> Fraction:
    return sum((wi * vi for wi, vi in zip(w, v)), Fraction(0))


def _exact_vertex(
    ge_rows: Sequence[Sequence[int]],
    ge_rhs: Sequence[int],
    eq_rows: Sequence[Sequence[int]],
    eq_rhs: Sequence[int],
    nvars: int,
    hint: Iterable[int] = (),
) -> list[Fraction] | None:
    """
    A vertex of the pointed polyhedron {y : ge_rows y >= ge_rhs, eq_rows y = eq_rhs}.

    Tries every set of inequalities that, made tight, pins y down uniquely;
    rows in `hint` (the solver's active set) are tried first. Returns None
    when no vertex is feasible or the search exceeds EXACT_VERTEX_LIMIT.
    """
    k = nvars - rank_of(eq_rows)
    first = set(hint)
    order = sorted(range(len(ge_rows)), key=lambda i: (i not in first, i))
    for tried, subset in enumerate(itertools.combinations(order, k)):
        if tried >= EXACT_VERTEX_LIMIT:
            logger.warning("exact vertex search gave up after %d candidate bases", tried)
            return None
        rows = [list(r) for r in eq_rows] + [list(ge_rows[i]) for i in subset]
        a = Matrix(rows)
        if a.rank() < nvars:
            continue
        b = Matrix(list(eq_rhs) + [ge_rhs[i] for i in subset])
        try:
            solution, _ = a.gauss_jordan_solve(b)
        except ValueError:
            continue
        y = [to_fraction(x) for x in solution]
        if all(_dot(y, r) >= c for r, c in zip(ge_rows, ge_rhs)):
            return y
    return None


def separating_functional(
    positive: Sequence[Sequence[int]],
    zero: Sequence[Sequence[int]] = (),
) -> list[Fraction] | None:
    """
    A functional w with w.v >= 1 on `positive` and w.v = 0 on `zero`, or None.
    """
    if not positive:
        return [Fraction(0)] * (len(zero[0]) if zero else 0)
    dim = len(positive[0])
    a_ub = -np.array(positive, dtype=float)
    b_ub = -np.ones(len(positive))
    a_eq = np.array(zero, dtype=float) if zero else None
    b_eq = np.zeros(len(zero)) if zero else None
    res = linprog(
        np.zeros(dim), A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=b_eq,
        bounds=[(None, None)] * dim, method="highs",
    )
    if res.status != 0:
        return None
    w = _rationalise(res.x)
    if all(_dot(w, v) >= 1 for v in positive) and all(_dot(w, v) == 0 for v in zero):
        return w
    logger.debug("separating functional did not verify exactly; solving for a vertex")
    # w restricted to span(positive + zero) makes the feasible set pointed
    complement = integer_kernel(Matrix([list(v) for v in list(positive) + list(zero)]))
    eq_rows = [list(v) for v in zero] + [list(k) for k in complement]
    tight = [i for i, v in enumerate(positive) if abs(float(np.dot(res.x, v)) - 1) < 1e-7]
    return _exact_vertex(positive, [1] * len(positive), eq_rows, [0] * len(eq_rows), dim, tight)


def conic_combination(generators: Sequence[Sequence[int]], v: Sequence[int]) -> list[Fraction] | None:
    """Non-negative coefficients expressing v in the generators, or None."""
    if not generators:
        return [] if not any(v) else None
    a_eq = np.array(generators, dtype=float).T
    res = linprog(
        np.zeros(len(generators)), A_eq=a_eq, b_eq=np.array(v, dtype=float),
        bounds=[(0, None)] * len(generators), method="highs",
    )
    if res.status != 0:
        return None
    lam = _rationalise(res.x)
    recombined = [sum(li * g[k] for li, g in zip(lam, generators)) for k in range(len(v))]
    if recombined == [Fraction(x) for x in v]:
        return lam
    logger.debug("conic combination did not verify exactly; solving for a vertex")
    m = len(generators)
    identity = [[int(i == j) for j in range(m)] for i in range(m)]
    columns = [[g[k] for g in generators] for k in range(len(v))]
    tight = [i for i, x in enumerate(res.x) if x < 1e-9]
    return _exact_vertex(identity, [0] * m, columns, list(v), m, tight)


# ---------------------------------------------------------------------------
# Cone
# ---------------------------------------------------------------------------

class Cone(BaseModel):
    """A strongly convex cone spanned by primitive integer generators."""

    model_config = ConfigDict(frozen=True)

    ambient_rank: int
    generators: tuple[IntVector, ...]

    @field_validator("generators", mode="before")
    @classmethod
    def validate_generators(cls, v) -> tuple[IntVector, ...]:
        gens = {tuple(int(x) for x in g) for g in v}
        if not gens:
            raise ValueError("a cone needs at least one generator")
        for g in gens:
            if not any(g):
                raise ValueError("generators must be nonzero")
            if not is_primitive(g):
                raise ValueError(f"generator {list(g)} is not primitive")
        return tuple(sorted(gens))

    @model_validator(mode="after")
    def check_shape_and_convexity(self) -> "Cone":
        if any(len(g) != self.ambient_rank for g in self.generators):
            raise ValueError(f"generators must have length {self.ambient_rank}")
        if separating_functional(self.generators) is None:
            raise ValueError("cone is not strongly convex")
        return self

    @classmethod
    def of(cls, *generators: Sequence[int]) -> "Cone":
        return cls(ambient_rank=len(generators[0]), generators=generators)

    @property
    def dimension(self) -> int:
        return _cached_rank(self.generators)

    @property
    def is_simplicial(self) -> bool:
        return len(self.generators) == self.dimension

    @property
    def lattice_basis(self) -> tuple[IntVector, ...]:
        """Z-basis of the lattice span(cone) intersected with Z^N."""
        return _cached_saturation(self.generators, self.ambient_rank)

    def coordinates(self, v: Sequence[int]) -> tuple[Fraction, ...] | None:
        """Coordinates of v in lattice_basis (None outside the span)."""
        if len(self.lattice_basis) == self.ambient_rank:
            # saturated full-rank lattice: the basis is the standard one
            return tuple(Fraction(int(x)) for x in v)
        coords = lattice_coordinates(self.lattice_basis, v)
        if coords is None:
            return None
        return tuple(Fraction(int(c.p), int(c.q)) for c in coords)

    def interior_point(self) -> IntVector:
        return tuple(sum(col) for col in zip(*self.generators))

    def barycentric(self, v: Sequence[int]) -> tuple[Fraction, ...] | None:
        """Coefficients of v in the generators of a simplicial cone (None outside the span)."""
        if not self.is_simplicial:
            raise InvalidInputError("barycentric coordinates need a simplicial cone")
        coords = lattice_coordinates(self.generators, v)
        if coords is None:
            return None
        return tuple(Fraction(int(c.p), int(c.q)) for c in coords)

    def contains(self, v: Sequence[int]) -> bool:
        if self.is_simplicial:
            t = self.barycentric(v)
            return t is not None and all(x >= 0 for x in t)
        if rank_of(list(self.generators) + [list(v)]) > self.dimension:
            return False
        return conic_combination(self.generators, v) is not None

    def is_face(self, subset: Iterable[Sequence[int]]) -> bool:
        """True iff cone(subset) is a face of this cone (subset drawn from the generators)."""
        s = {tuple(int(x) for x in v) for v in subset}
        if not s <= set(self.generators):
            return False
        rest = [g for g in self.generators if g not in s]
        return separating_functional(rest, sorted(s)) is not None

    def extreme_rays(self) -> tuple[IntVector, ...]:
        """Generators not in the cone spanned by the others."""
        return _cached_extreme_rays(self.generators)

    def facets(self) -> list[tuple[IntVector, ...]]:
        """
        Generator sets of the facets, found exactly from hyperplanes
        through dimension - 1 independent generators.
        """
        r = self.dimension
        if r <= 1:
            return [()] if r == 1 else []
        coords = {g: tuple(int(c) for c in self.coordinates(g)) for g in self.generators}
        found: set[tuple[IntVector, ...]] = set()
        for subset in itertools.combinations(self.generators, r - 1):
            if rank_of(subset) < r - 1:
                continue
            normal = integer_kernel(Matrix([list(coords[g]) for g in subset]))
            if len(normal) != 1:
                continue
            w = normal[0]
            values = {g: sum(wi * ci for wi, ci in zip(w, coords[g])) for g in self.generators}
            if all(x >= 0 for x in values.values()) or all(x <= 0 for x in values.values()):
                found.add(tuple(sorted(g for g, x in values.items() if x == 0)))
        return sorted(found)

    def faces(self, k: int) -> list[tuple[IntVector, ...]]:
        """Generator sets of the k-dimensional faces."""
        if k == self.dimension:
            return [self.generators]
        if k > self.dimension or k < 0:
            return []
        out: set[tuple[IntVector, ...]] = set()
        for facet in self.facets():
            if k == self.dimension - 1:
                out.add(facet)
            else:
                out.update(Cone(ambient_rank=self.ambient_rank, generators=facet).faces(k))
        return sorted(out)


@lru_cache(maxsize=None)
def _cached_extreme_rays(generators: tuple[IntVector, ...]) -> tuple[IntVector, ...]:
    if len(generators) == rank_of(generators):
        return generators
    return tuple(
        g for g in generators
        if conic_combination([h for h in generators if h != g], g) is None
    )


@lru_cache(maxsize=None)
def _cached_rank(generators: tuple[IntVector, ...]) -> int:
    return rank_of(generators)


@lru_cache(maxsize=None)
def _cached_saturation(generators: tuple[IntVector, ...], ambient_rank: int) -> tuple[IntVector, ...]:
    return tuple(saturate(generators, ambient_rank))
