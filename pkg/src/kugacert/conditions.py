"""
Fan-level conditions for a compactification of the fibre power.

Each checker returns a CheckResult whose `offending` list names the rays
or cones that break the condition, sorted so reports are stable.
"""

from __future__ import annotations

import logging

from kugacert.errors import InvalidInputError
from kugacert.fans import CheckResult, Fan
from kugacert.lifting import LiftedPoint, in_cone_C_tilde
from kugacert.linalg import primitive, rank_and_radical
from kugacert.toric import toric_is_canonical

logger = logging.getLogger(__name__)


def _layout(fan: Fan, g_dd: int | None = None, n: int | None = None) -> tuple[int, int]:
    if g_dd is not None and n is not None:
        return g_dd, n
    if fan.layout is None:
        raise InvalidInputError("fan has no (g'', n) layout; pass it explicitly")
    return fan.layout


def is_equidim_codim1(tilde: Fan, base: Fan) -> CheckResult:
    """Every ray of the lifted fan projects onto a ray of the base fan."""
    if tilde.projection is None:
        raise InvalidInputError("lifted fan carries no base projection")
    if tilde.base_rank != base.ambient_rank:
        raise InvalidInputError("projection does not land in the base lattice")
    base_rays = set(base.rays())
    offending = []
    for ray in tilde.rays():
        image = tilde.project(ray)
        if not any(image) or primitive(image) not in base_rays:
            offending.append(list(ray))
    return CheckResult(name="equidim_codim1", passed=not offending, offending=offending)


def no_interior_rays(tilde: Fan, g_dd: int | None = None, n: int | None = None) -> CheckResult:
    """Every ray has a rank-one quadratic part."""
    g_dd, n = _layout(tilde, g_dd, n)
    offending = []
    ranks = {}
    for ray in tilde.rays():
        rank, _ = rank_and_radical(LiftedPoint.from_vector(ray, g_dd, n).b)
        if rank != 1:
            offending.append(list(ray))
            ranks[str(list(ray))] = rank
    return CheckResult(name="no_interior_rays", passed=not offending, offending=offending, details={"ranks": ranks})


def rays_in_support(tilde: Fan, g_dd: int | None = None, n: int | None = None) -> CheckResult:
    """Rays lying outside the lifted cone."""
    g_dd, n = _layout(tilde, g_dd, n)
    offending = [
        list(ray) for ray in tilde.rays()
        if not in_cone_C_tilde(LiftedPoint.from_vector(ray, g_dd, n))
    ]
    return CheckResult(name="rays_in_support", passed=not offending, offending=offending)


def has_base_cones(tilde: Fan, base: Fan) -> CheckResult:
    """sigma x {0} is a cone of the lifted fan for every base cone sigma."""
    pad = (0,) * (tilde.ambient_rank - base.ambient_rank)
    offending = []
    for sigma in base.cones:
        if not tilde.contains_cone([g + pad for g in sigma.generators]):
            offending.append([list(g) for g in sigma.generators])
    return CheckResult(name="base_cones", passed=not offending, offending=offending)


def toric_canonical(fan: Fan) -> CheckResult:
    """toric_is_canonical on every cone; smooth and canonical both pass."""
    verdicts: dict[str, int] = {}
    offending = []
    for cone in fan.cones:
        verdict = toric_is_canonical(cone)
        verdicts[verdict.verdict] = verdicts.get(verdict.verdict, 0) + 1
        if verdict.verdict not in ("smooth", "canonical"):
            offending.append({"cone": [list(g) for g in cone.generators], **verdict.model_dump(exclude_none=True)})
    logger.debug("toric verdicts: %s", verdicts)
    return CheckResult(name="toric_canonical", passed=not offending, offending=offending, details={"verdicts": verdicts})


def check_conditions(tilde: Fan, base: Fan) -> list[CheckResult]:
    """The fan conditions run by `fan check` and `certify`, in report order."""
    return [
        is_equidim_codim1(tilde, base),
        no_interior_rays(tilde),
        rays_in_support(tilde),
        has_base_cones(tilde, base),
        toric_canonical(tilde),
    ]
