"""
Smooth refinement of fans with cones of dimension at most three.
"""

from __future__ import annotations

import logging
import math
from typing import Sequence

import numpy as np
from sympy import Matrix

from kugacert.cones import Cone, separating_functional
from kugacert.errors import InvalidInputError, UnsupportedDimensionError
from kugacert.fans import Fan
from kugacert.lifting import LiftedPoint, group_act
from kugacert.linalg import IntVector, primitive, rank_of
from kugacert.toric import box_points, hirzebruch_jung_rays, is_smooth

logger = logging.getLogger(__name__)

MAX_REFINE_DIMENSION = 3
MAX_REFINE_STEPS = 10_000

Generators = tuple[IntVector, ...]


def _subdivide_cone(cone: Cone, p: IntVector) -> list[Generators]:
    """The cones of the stellar subdivision of one cone containing p."""
    if p in cone.generators:
        return [cone.generators]
    if cone.is_simplicial:
        t = cone.barycentric(p)
        out = []
        for i, ti in enumerate(t):
            if ti > 0:
                gens = list(cone.generators)
                gens[i] = p
                out.append(tuple(sorted(gens)))
        return out
    out = []
    for facet in cone.facets():
        if facet and Cone(ambient_rank=cone.ambient_rank, generators=facet).contains(p):
            continue
        out.append(tuple(sorted(set(facet) | {p})))
    return out


def _stellar(cones: list[Generators], ambient_rank: int, p: IntVector) -> list[Generators]:
    out: list[Generators] = []
    for gens in cones:
        cone = Cone(ambient_rank=ambient_rank, generators=gens)
        out.extend(_subdivide_cone(cone, p) if cone.contains(p) else [gens])
    return sorted(set(out))


def stellar_subdivide(fan: Fan, point: Sequence[int]) -> Fan:
    """Star-subdivide every cone of the fan containing `point`."""
    if len(point) != fan.ambient_rank:
        raise InvalidInputError(f"point must have {fan.ambient_rank} coordinates")
    p = primitive(point)
    cones = _stellar([c.generators for c in fan.cones], fan.ambient_rank, p)
    return fan.model_copy(
        update={"cones": tuple(Cone(ambient_rank=fan.ambient_rank, generators=g) for g in cones)}
    )


# ---------------------------------------------------------------------------
# Translations of lifted fans
# ---------------------------------------------------------------------------

def _translate(v: IntVector, x: Sequence[Sequence[int]], layout: tuple[int, int]) -> IntVector:
    g_dd, n = layout
    identity = [[int(i == j) for j in range(g_dd)] for i in range(g_dd)]
    return group_act(identity, x, LiftedPoint.from_vector(v, g_dd, n)).to_vector()


def _by_form(gens: Generators, s: int) -> dict[IntVector, list[IntVector]]:
    out: dict[IntVector, list[IntVector]] = {}
    for gen in gens:
        out.setdefault(gen[:s], []).append(gen[s:])
    return {b: sorted(ells) for b, ells in out.items()}


def _translation_between(src: Generators, dst: Generators, layout: tuple[int, int]) -> list[list[int]] | None:
    """The translation x with x . src = dst, or None if the cones are not translates."""
    g_dd, n = layout
    s = g_dd * (g_dd + 1) // 2
    a, b = _by_form(src, s), _by_form(dst, s)
    if {k: len(v) for k, v in a.items()} != {k: len(v) for k, v in b.items()}:
        return None
    x = []
    for j in range(n):
        rows, rhs = [], []
        for form, ells in a.items():
            matrix = LiftedPoint.from_vector(form + (0,) * (n * g_dd), g_dd, n).b.matrix
            rows.extend(matrix.tolist())
            lo, hi = j * g_dd, (j + 1) * g_dd
            rhs.extend(e - d for e, d in zip(b[form][0][lo:hi], ells[0][lo:hi]))
        try:
            solution, params = Matrix(rows).gauss_jordan_solve(Matrix(rhs))
        except ValueError:
            return None
        solution = solution.subs({p: 0 for p in params})
        if any(not t.is_integer for t in solution):
            return None
        x.append([int(t) for t in solution])
    if sorted(_translate(gen, x, layout) for gen in src) != sorted(dst):
        return None
    return x


def _translates(cones: list[Generators], source: Generators, layout: tuple[int, int] | None):
    """(cone, x) for every current cone that is a translate x . source, source included."""
    if layout is None:
        return [(source, None)]
    out = []
    for gens in cones:
        x = _translation_between(source, gens, layout)
        if x is not None:
            out.append((gens, x))
    return out


def _orbit(cones: list[Generators], rank: int, p: IntVector, layout: tuple[int, int] | None) -> list[IntVector]:
    """p and its translates lying in a translate of a cone through p."""
    if layout is None:
        return [p]
    points = {p}
    for gens in cones:
        if not Cone(ambient_rank=rank, generators=gens).contains(p):
            continue
        for _, x in _translates(cones, gens, layout):
            points.add(_translate(p, x, layout))
    return sorted(points)


def _stellar_orbit(cones: list[Generators], rank: int, p: IntVector, layout) -> list[Generators]:
    for q in _orbit(cones, rank, p, layout):
        cones = _stellar(cones, rank, q)
    return cones


def _cyclic_order(cone: Cone) -> list[IntVector]:
    """Extreme rays of a three-dimensional cone in cyclic order around its centre."""
    rays = list(cone.extreme_rays())
    coords = [[int(c) for c in cone.coordinates(r)] for r in rays]
    w = np.array([float(x) for x in separating_functional(coords)])
    # central projection onto the slice w.x = 1
    points = np.array([np.array(c, dtype=float) / float(w @ np.array(c, dtype=float)) for c in coords])
    centred = points - points.mean(axis=0)
    _, _, vt = np.linalg.svd(w.reshape(1, -1))
    e1, e2 = vt[1], vt[2]
    angles = [math.atan2(float(p @ e2), float(p @ e1)) for p in centred]
    ordered = [r for _, r in sorted(zip(angles, rays))]
    start = ordered.index(min(ordered))
    return ordered[start:] + ordered[:start]


def _triangulate(cone: Cone) -> list[Generators]:
    ordered = _cyclic_order(cone)
    apex = ordered[0]
    out = []
    for a, b in zip(ordered[1:], ordered[2:]):
        if rank_of([apex, a, b]) == 3:
            out.append(tuple(sorted((apex, a, b))))
    return out


def _non_smooth_face(cone: Cone) -> tuple[IntVector, IntVector] | None:
    faces = [cone.generators] if cone.dimension == 2 else cone.faces(2)
    for face in faces:
        if not is_smooth(Cone(ambient_rank=cone.ambient_rank, generators=face)):
            return face
    return None


def refine_to_smooth(fan: Fan) -> Fan:
    """
    A smooth refinement of a fan whose non-smooth cones have dimension <= 3.

    Two-dimensional cones and faces are resolved along their
    Hirzebruch-Jung rays; non-simplicial three-dimensional cones are
    triangulated from their smallest ray; simplicial ones are star
    subdivided at their minimal box point until smooth.

    On a lifted fan (one with a layout) every step is repeated on each
    translate of the chosen cone or point present in the fan, so cones
    related by a translation x receive subdivisions related by x.
    """
    bad = [c for c in fan.cones if not is_smooth(c)]
    if not bad:
        return fan
    too_big = [c for c in bad if c.dimension > MAX_REFINE_DIMENSION]
    if too_big:
        raise UnsupportedDimensionError(
            f"cannot refine non-smooth cones of dimension {too_big[0].dimension} (limit {MAX_REFINE_DIMENSION})"
        )

    rank = fan.ambient_rank
    layout = fan.layout
    cones = sorted(c.generators for c in fan.cones)
    for step in range(MAX_REFINE_STEPS):
        current = [Cone(ambient_rank=rank, generators=g) for g in cones]
        target = next((c for c in current if not is_smooth(c)), None)
        if target is None:
            break
        face = _non_smooth_face(target) if target.dimension >= 2 else None
        if face is not None:
            for ray in hirzebruch_jung_rays(*face):
                cones = _stellar_orbit(cones, rank, ray, layout)
        elif not target.is_simplicial:
            triangles = _triangulate(target)
            replaced = set(cones)
            for gens, x in _translates(cones, target.generators, layout):
                replaced.discard(gens)
                for triangle in triangles:
                    image = triangle if x is None else (_translate(v, x, layout) for v in triangle)
                    replaced.add(tuple(sorted(image)))
            cones = sorted(replaced)
        else:
            point, _ = box_points(target)[0]
            cones = _stellar_orbit(cones, rank, primitive(point), layout)
    else:
        raise UnsupportedDimensionError("refinement did not terminate")
    logger.debug("refined %d cones into %d smooth cones in %d steps", len(fan.cones), len(cones), step)
    return fan.model_copy(update={"cones": tuple(Cone(ambient_rank=rank, generators=g) for g in cones)})
