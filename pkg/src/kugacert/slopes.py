"""
Divisor classes a*lambda - b*delta on the partial compactification of A_g,
their slopes, the table of minimal slopes, and slopes of cusp forms read
off their Fourier support.
"""

from __future__ import annotations

import logging
from math import factorial
from typing import Literal

from pydantic import BaseModel, ConfigDict, field_validator
from sympy import Rational

from kugacert.errors import InvalidInputError, NotACuspFormError, NotEffectiveError, OutOfRangeError
from kugacert.linalg import QuadForm, render_rational
from kugacert.quadmin import quad_min

logger = logging.getLogger(__name__)

MAX_SLOPE_GENUS = 6


class DivisorClass(BaseModel):
    """a*lambda - b*delta, stored as (a, b)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    lambda_coeff: Rational
    delta_coeff: Rational

    @field_validator("lambda_coeff", "delta_coeff", mode="before")
    @classmethod
    def to_rational(cls, v) -> Rational:
        return Rational(v)

    def render(self) -> str:
        return f"{render_rational(self.lambda_coeff)}*lambda - {render_rational(self.delta_coeff)}*delta"


def theta_null_class(g: int) -> DivisorClass:
    """The theta-null divisor: 2^(g-2) (2^g + 1) lambda - 2^(2g-5) delta."""
    if g < 1:
        raise InvalidInputError("g must be positive")
    return DivisorClass(
        lambda_coeff=Rational(2) ** (g - 2) * (2**g + 1),
        delta_coeff=Rational(2) ** (2 * g - 5),
    )


def n0_prime_class(g: int) -> DivisorClass:
    """The Andreotti-Mayer divisor N0' (g >= 4)."""
    if g < 4:
        raise OutOfRangeError(f"the N0' class is only available for g >= 4, got {g}")
    a = Rational(factorial(g + 1), 4) + Rational(factorial(g), 2) - Rational(2) ** (g - 3) * (2**g + 1)
    b = Rational(factorial(g + 1), 24) - Rational(2) ** (2 * g - 6)
    return DivisorClass(lambda_coeff=a, delta_coeff=b)


def slope(d: DivisorClass) -> Rational:
    if d.lambda_coeff <= 0 or d.delta_coeff <= 0:
        raise NotEffectiveError(f"slope needs positive coefficients, got {d.render()}")
    return d.lambda_coeff / d.delta_coeff


# ---------------------------------------------------------------------------
# Minimal slopes
# ---------------------------------------------------------------------------

class SlopeRecord(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    g: int
    value: Rational
    is_upper_bound_only: bool
    achieved_by: Literal["ThetaNull", "N0Prime", "External"]
    minimizer_rigid: bool
    secondary_bound: Rational | None = None

    def render(self) -> str:
        relation = "<=" if self.is_upper_bound_only else "="
        text = f"s_min({self.g}) {relation} {render_rational(self.value)} [{self.achieved_by}"
        text += ", rigid]" if self.minimizer_rigid else "]"
        if self.secondary_bound is not None:
            text += f" (N0' gives {render_rational(self.secondary_bound)})"
        return text


def s_min_record(g: int) -> SlopeRecord:
    """Known minimal slopes for 1 <= g <= 6; g = 6 is an upper bound only."""
    if g < 1:
        raise InvalidInputError("g must be positive")
    if g > MAX_SLOPE_GENUS:
        raise OutOfRangeError(f"s_min is only tabulated for g <= {MAX_SLOPE_GENUS}, got {g}")
    if g <= 3:
        return SlopeRecord(
            g=g, value=slope(theta_null_class(g)), is_upper_bound_only=False,
            achieved_by="ThetaNull", minimizer_rigid=True,
        )
    if g <= 5:
        return SlopeRecord(
            g=g, value=slope(n0_prime_class(g)), is_upper_bound_only=False,
            achieved_by="N0Prime", minimizer_rigid=True,
        )
    return SlopeRecord(
        g=g, value=Rational(7), is_upper_bound_only=True, achieved_by="External",
        minimizer_rigid=False, secondary_bound=slope(n0_prime_class(g)),
    )


# ---------------------------------------------------------------------------
# Cusp forms
# ---------------------------------------------------------------------------

class FourierSupport(BaseModel):
    """Indices T with nonzero Fourier coefficient: even integral symmetric matrices."""

    model_config = ConfigDict(frozen=True)

    g: int
    matrices: tuple[QuadForm, ...]

    @field_validator("matrices", mode="before")
    @classmethod
    def coerce_matrices(cls, v):
        out = tuple(m if isinstance(m, QuadForm) else QuadForm(matrix=m) for m in v)
        if not out:
            raise ValueError("Fourier support must not be empty")
        for q in out:
            if not q.is_integral():
                raise ValueError("Fourier indices must be integral")
            if any(q.matrix[i, i] % 2 for i in range(q.dim)):
                raise ValueError("Fourier indices must have even diagonal")
        return out

    @field_validator("matrices")
    @classmethod
    def check_size(cls, v, info):
        g = info.data.get("g")
        if g is not None and any(q.dim != g for q in v):
            raise ValueError(f"Fourier indices must be {g}x{g}")
        return v


def vanishing_order(s: FourierSupport) -> Rational:
    """Half the least value of x^t T x over nonzero x and T in the support."""
    minima = [quad_min(q)[0] for q in s.matrices]
    order = min(minima) / 2
    logger.debug("vanishing order %s from minima %s", order, minima)
    return order


def cusp_form_slope(weight: int, s: FourierSupport) -> Rational:
    """weight / vanishing order."""
    if weight < 1:
        raise InvalidInputError("weight must be positive")
    b = vanishing_order(s)
    if b == 0:
        raise NotACuspFormError("vanishing order is 0: the support contains a degenerate index")
    return Rational(weight) / b
