"""
Kodaira dimension of the n-fold fibre power over A_g.

The verdict is a short rule chain over the minimal-slope table; every
comparison it makes is written into the justification with exact values.
"""

from __future__ import annotations

import logging
from typing import Literal

from pydantic import BaseModel, ConfigDict

from kugacert.errors import InvalidInputError, OutOfRangeError, UndecidableError
from kugacert.linalg import render_rational
from kugacert.slopes import MAX_SLOPE_GENUS, s_min_record

logger = logging.getLogger(__name__)

# a canonical compactification exists from here on
CANONICAL_GN = 6
TABLE_MAX_G = 9
TABLE_MAX_N = 20


class KodairaVerdict(BaseModel):
    model_config = ConfigDict(frozen=True)

    g: int
    n: int
    kind: Literal["GeneralType", "Zero", "MinusInfinity"]
    dimension: int | None = None
    justification: list[str]
    informational: bool = False

    def render(self) -> str:
        if self.kind == "GeneralType":
            return f"kappa = {self.dimension} (general type)"
        if self.kind == "Zero":
            return "kappa = 0"
        if self.g == 1:
            return "kappa = -infinity (fibres rational)"
        return "kappa = -infinity"

    @property
    def short(self) -> str:
        return {"GeneralType": str(self.dimension), "Zero": "0", "MinusInfinity": "-inf"}[self.kind]


def kodaira_dimension(g: int, n: int) -> KodairaVerdict:
    """
    g = 1 has rational fibres and g >= 7 is of general type. Otherwise
    compare s_min(g) with g + n + 1 (for g = 6 the N0' slope
    is used as an upper bound). n = 0 answers describe A_g itself and are
    flagged informational.
    """
    if g < 1 or n < 0:
        raise InvalidInputError("need g >= 1 and n >= 0")
    informational = n == 0

    def verdict(kind, reasons, dimension=None):
        return KodairaVerdict(
            g=g, n=n, kind=kind, dimension=dimension, justification=reasons, informational=informational,
        )

    if g == 1:
        return verdict("MinusInfinity", ["g = 1: the fibre powers of the universal elliptic curve are rational"])

    if g > MAX_SLOPE_GENUS:
        # Iitaka: base of general type, fibres abelian
        reasons = [f"g = {g} >= 7: A_g is of general type", f"Iitaka: kappa = dim A_g = {g * (g + 1) // 2}"]
        return verdict("GeneralType", reasons, g * (g + 1) // 2)

    record = s_min_record(g)
    bound = g + n + 1
    if record.is_upper_bound_only:
        value = record.secondary_bound
        if value < bound and g + n >= CANONICAL_GN:
            reasons = [
                f"s_min({g}) <= {render_rational(value)} < {bound} = g + n + 1",
                f"g + n = {g + n} >= {CANONICAL_GN}: canonical compactification exists",
            ]
            return verdict("GeneralType", reasons, g * (g + 1) // 2)
        raise UndecidableError(
            f"s_min({g}) is only bounded above by {render_rational(value)}, which does not decide g + n + 1 = {bound}"
        )

    value = record.value
    text = render_rational(value)
    if value < bound:
        if g + n < CANONICAL_GN:
            raise UndecidableError(f"s_min({g}) = {text} < {bound} but g + n = {g + n} < {CANONICAL_GN}")
        reasons = [
            f"s_min({g}) = {text} < {bound} = g + n + 1",
            f"g + n = {g + n} >= {CANONICAL_GN}: canonical compactification exists",
        ]
        return verdict("GeneralType", reasons, g * (g + 1) // 2)
    if value == bound:
        if not record.minimizer_rigid:
            raise UndecidableError(f"s_min({g}) = {bound} with a non-rigid minimiser")
        return verdict("Zero", [f"s_min({g}) = {text} = {bound} = g + n + 1, minimiser rigid"])
    logger.debug("kodaira g=%d n=%d: slope %s above %d", g, n, text, bound)
    return verdict("MinusInfinity", [f"s_min({g}) = {text} > {bound} = g + n + 1"])


class KodairaTable(BaseModel):
    model_config = ConfigDict(frozen=True)

    g_max: int
    n_max: int
    rows: list[list[KodairaVerdict]]

    def render(self) -> str:
        width = 6
        lines = ["g\\n".ljust(width) + "".join(str(n).rjust(width) for n in range(1, self.n_max + 1))]
        for g, row in enumerate(self.rows, start=1):
            lines.append(str(g).ljust(width) + "".join(v.short.rjust(width) for v in row))
        return "\n".join(lines)


def kdim_table(g_max: int, n_max: int) -> KodairaTable:
    """Verdicts for 1 <= g <= g_max and 1 <= n <= n_max."""
    if g_max < 1 or n_max < 1:
        raise InvalidInputError("g_max and n_max must be positive")
    if g_max > TABLE_MAX_G or n_max > TABLE_MAX_N:
        raise OutOfRangeError(f"tables are limited to g <= {TABLE_MAX_G} and n <= {TABLE_MAX_N}")
    rows = [[kodaira_dimension(g, n) for n in range(1, n_max + 1)] for g in range(1, g_max + 1)]
    return KodairaTable(g_max=g_max, n_max=n_max, rows=rows)
