"""
End-to-end canonical-singularity certificate for the compactified
n-fold fibre power over A_g.
"""

from __future__ import annotations

import logging
from typing import Sequence

from pydantic import BaseModel, ConfigDict

from kugacert.conditions import check_conditions
from kugacert.errors import InvalidInputError, UnsupportedRankError
from kugacert.fans import CheckResult
from kugacert.lifting import DEFAULT_FAN_WINDOW, MAX_GDD, base_fan, lifted_fan
from kugacert.scan import DEFAULT_D_MAX, InteriorVerdict, ScanReport, interior_singularity_table, rt_scan

logger = logging.getLogger(__name__)

# largest n used for the g'' = 2 fan slice
FAN_SLICE_MAX_N = 2


class FanSlice(BaseModel):
    model_config = ConfigDict(frozen=True)

    g_dd: int
    n: int
    window: int
    cones: int
    checks: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


class Certificate(BaseModel):
    model_config = ConfigDict(frozen=True)

    g: int
    n: int
    passed: bool
    interior: InteriorVerdict
    scan: ScanReport
    fan_checks: list[FanSlice]


def fan_slice(g_dd: int, n: int, window: int = DEFAULT_FAN_WINDOW) -> FanSlice:
    """Build the lifted fan for one g'' and run every fan condition on it."""
    slice_n = n if g_dd == 1 else min(n, FAN_SLICE_MAX_N)
    tilde = lifted_fan(g_dd, slice_n, window)
    checks = check_conditions(tilde, base_fan(g_dd, window))
    return FanSlice(g_dd=g_dd, n=slice_n, window=window, cones=len(tilde.cones), checks=checks)


def certify(
    g: int,
    n: int,
    fan_window: int = DEFAULT_FAN_WINDOW,
    gdd_slices: Sequence[int] | None = None,
    d_max: int = DEFAULT_D_MAX,
) -> Certificate:
    """
    Interior table, boundary age scan and fan conditions for every
    requested g'' slice (default: all g'' <= 2 that fit in g).
    """
    if g < 2 or n < 1:
        raise InvalidInputError("certify needs g >= 2 and n >= 1")
    if gdd_slices is None:
        gdd_slices = [g_dd for g_dd in range(1, MAX_GDD + 1) if g_dd <= g]
    for g_dd in gdd_slices:
        if g_dd > MAX_GDD:
            raise UnsupportedRankError(f"fan slices exist only for g'' <= {MAX_GDD}, got {g_dd}")
        if g_dd < 1 or g_dd > g:
            raise InvalidInputError(f"g'' must lie in 1..{g}, got {g_dd}")

    interior = interior_singularity_table(g, n)
    scan = rt_scan(g, n, d_max)
    slices = [fan_slice(g_dd, n, fan_window) for g_dd in sorted(set(gdd_slices))]
    passed = interior.verdict == "canonical" and scan.passed and all(s.passed for s in slices)
    logger.debug("certify g=%d n=%d: %s", g, n, "pass" if passed else "fail")
    return Certificate(g=g, n=n, passed=passed, interior=interior, scan=scan, fan_checks=slices)
