"""
Singularities of affine toric varieties.

toric_is_canonical classifies a cone as smooth, canonical, not canonical
or not Q-Gorenstein. Everything is computed in the lattice
span(cone) intersected with Z^N, so lower-dimensional cones are judged
in their own lattice.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Literal, Sequence

from pydantic import BaseModel, ConfigDict
from sympy import Matrix, Rational

from kugacert.cones import Cone
from kugacert.errors import InvalidInputError
from kugacert.linalg import IntVector, lattice_coordinates, render_rational

Verdict = Literal["smooth", "canonical", "not_canonical", "not_qgorenstein"]


class ToricVerdict(BaseModel):
    """Classification of a cone plus its certificate."""

    model_config = ConfigDict(frozen=True)

    verdict: Verdict
    gorenstein_functional: tuple[str, ...] | None = None
    witness: IntVector | None = None
    witness_value: str | None = None


def _ambient_functional(cone: Cone, m: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Extend a functional on the cone's lattice to Z^N by orthogonal projection."""
    b = Matrix([list(v) for v in cone.lattice_basis]).T
    m_col = Matrix([Rational(x.numerator, x.denominator) for x in m])
    ext = b * (b.T * b).inv() * m_col
    return tuple(Fraction(int(Rational(x).p), int(Rational(x).q)) for x in ext)


def _box(points: Sequence[Sequence[int]]) -> list[range]:
    dim = len(points[0])
    return [
        range(min(0, *(p[k] for p in points)), max(0, *(p[k] for p in points)) + 1)
        for k in range(dim)
    ]


def _contains_coords(cone: Cone, coords: dict[IntVector, tuple[int, ...]], p: Sequence[int]) -> bool:
    """Membership of a point given in lattice coordinates."""
    gens = [coords[g] for g in cone.generators]
    if cone.is_simplicial:
        t = lattice_coordinates(gens, p)
        return t is not None and all(x >= 0 for x in t)
    ambient = tuple(sum(c * v[k] for c, v in zip(p, cone.lattice_basis)) for k in range(cone.ambient_rank))
    return cone.contains(ambient)


def is_smooth(cone: Cone) -> bool:
    """Generators are part of a Z-basis of Z^N."""
    if not cone.is_simplicial:
        return False
    rows = Matrix([[int(c) for c in cone.coordinates(g)] for g in cone.generators])
    return abs(rows.det()) == 1


def toric_is_canonical(cone: Cone) -> ToricVerdict:
    """
    smooth: simplicial with unimodular generators.
    Otherwise solve m.v_i = 1 on every generator (no solution: not Q-Gorenstein).
    An integral m means Gorenstein, hence canonical. Otherwise every nonzero
    lattice point of conv(0, v_i) must have m-value >= 1.
    """
    basis = cone.lattice_basis
    coords = {g: tuple(int(c) for c in cone.coordinates(g)) for g in cone.generators}
    rows = Matrix([list(coords[g]) for g in cone.generators])

    try:
        solution, params = rows.gauss_jordan_solve(Matrix([1] * len(cone.generators)))
    except ValueError:
        return ToricVerdict(verdict="not_qgorenstein")
    if params.shape[0]:
        raise InvalidInputError("cone generators do not span the cone's lattice")
    m = [Fraction(int(Rational(x).p), int(Rational(x).q)) for x in solution]
    m_out = tuple(render_rational(x) for x in _ambient_functional(cone, m))

    if is_smooth(cone):
        return ToricVerdict(verdict="smooth", gorenstein_functional=m_out)
    if all(x.denominator == 1 for x in m):
        return ToricVerdict(verdict="canonical", gorenstein_functional=m_out)

    violations = []
    for p in itertools.product(*_box([coords[g] for g in cone.generators])):
        if not any(p):
            continue
        value = sum(mi * pi for mi, pi in zip(m, p))
        if value >= 1:
            continue
        if _contains_coords(cone, coords, p):
            ambient = tuple(sum(c * v[k] for c, v in zip(p, basis)) for k in range(cone.ambient_rank))
            violations.append((value, ambient))
    if violations:
        value, witness = min(violations)
        return ToricVerdict(
            verdict="not_canonical", gorenstein_functional=m_out,
            witness=witness, witness_value=render_rational(value),
        )
    return ToricVerdict(verdict="canonical", gorenstein_functional=m_out)


# ---------------------------------------------------------------------------
# Box points and two-dimensional resolution
# ---------------------------------------------------------------------------

def box_points(cone: Cone) -> list[tuple[IntVector, tuple[Fraction, ...]]]:
    """
    Nonzero lattice points sum t_i v_i with 0 <= t_i < 1 of a simplicial
    cone, with their coefficient vectors, sorted by (sum t, point).
    """
    if not cone.is_simplicial:
        raise InvalidInputError("box points need a simplicial cone")
    basis = cone.lattice_basis
    coords = {g: tuple(int(c) for c in cone.coordinates(g)) for g in cone.generators}
    gens = [coords[g] for g in cone.generators]
    ranges = [
        range(min(0, *(sum(v[k] for v in subset) for subset in _subsets(gens))),
              max(0, *(sum(v[k] for v in subset) for subset in _subsets(gens))) + 1)
        for k in range(len(basis))
    ]
    out = []
    for p in itertools.product(*ranges):
        if not any(p):
            continue
        t = lattice_coordinates(gens, p)
        if t is None or not all(0 <= x < 1 for x in t):
            continue
        fractions = tuple(Fraction(int(x.p), int(x.q)) for x in t)
        ambient = tuple(sum(c * v[k] for c, v in zip(p, basis)) for k in range(cone.ambient_rank))
        out.append((ambient, fractions))
    return sorted(out, key=lambda item: (sum(item[1]), item[0]))


def _subsets(vectors):
    for k in range(len(vectors) + 1):
        yield from itertools.combinations(vectors, k)


def hirzebruch_jung_rays(v1: Sequence[int], v2: Sequence[int]) -> list[IntVector]:
    """
    Interior rays of the minimal resolution of cone(v1, v2), ordered from
    v1 towards v2.

    Each step takes the lattice point (k a + b) / D of the current cone
    cone(a, b) with the least positive b-coefficient 1/D and least
    a-coefficient k/D; the multiplicity drops from D to k.
    """
    cone = Cone.of(v1, v2)
    if cone.dimension != 2:
        raise InvalidInputError("Hirzebruch-Jung resolution needs a two-dimensional cone")
    basis = cone.lattice_basis
    a = tuple(int(c) for c in cone.coordinates(v1))
    b = tuple(int(c) for c in cone.coordinates(v2))
    rays = []
    det = abs(a[0] * b[1] - a[1] * b[0])
    while det > 1:
        k = next(k for k in range(1, det) if all((k * x + y) % det == 0 for x, y in zip(a, b)))
        w = tuple((k * x + y) // det for x, y in zip(a, b))
        rays.append(tuple(sum(c * v[i] for c, v in zip(w, basis)) for i in range(cone.ambient_rank)))
        a = w
        det = abs(a[0] * b[1] - a[1] * b[0])
    return rays
