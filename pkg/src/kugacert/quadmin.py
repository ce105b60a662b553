"""
Minimum of a positive semi-definite quadratic form on nonzero lattice vectors.

Positive definite forms are handled by Fincke-Pohst enumeration over the
exact LDL^t decomposition, starting from the smallest diagonal entry as
radius. Forms with a radical have minimum 0, witnessed by a radical vector.
"""

from __future__ import annotations

import logging
import math
from fractions import Fraction

from sympy import Rational

from kugacert.errors import InvalidInputError
from kugacert.linalg import IntVector, QuadForm, is_psd, ldl, rank_and_radical, sign_normalize, to_fraction

logger = logging.getLogger(__name__)


def _isqrt_floor(t: Fraction) -> int:
    """floor(sqrt(t)) for a non-negative fraction."""
    return math.isqrt(t.numerator * t.denominator) // t.denominator


def _enumerate(d: list[Fraction], mu: list[list[Fraction]], radius: Fraction):
    """Yield (value, x) for every nonzero x with q(x) <= radius, shrinking radius as it goes."""
    n = len(d)
    x = [0] * n
    best = [radius]

    def search(i: int, partial: Fraction):
        if i < 0:
            if any(x):
                if partial < best[0]:
                    best[0] = partial
                yield partial, tuple(x)
            return
        centre = -sum((mu[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        slack = best[0] - partial
        if slack < 0:
            return
        reach = _isqrt_floor(slack / d[i]) + 1
        lo = math.floor(centre) - reach
        hi = math.ceil(centre) + reach
        for xi in range(lo, hi + 1):
            term = d[i] * (xi - centre) ** 2
            if partial + term > best[0]:
                continue
            x[i] = xi
            yield from search(i - 1, partial + term)
        x[i] = 0

    yield from search(n - 1, Fraction(0))


def quad_min(q: QuadForm) -> tuple[Rational, IntVector]:
    """
    (min x^t q x over nonzero integer x, a minimising vector).

    Among several minimisers the witness is the lexicographically greatest
    one with positive leading entry.
    """
    if not is_psd(q):
        raise InvalidInputError("quad_min requires a positive semi-definite form")
    _, radical = rank_and_radical(q)
    if radical:
        return Rational(0), radical[0]

    decomposition = ldl(q)
    if decomposition is None:
        # positive definite forms always admit an unpivoted LDL^t
        raise InvalidInputError("form is not positive definite")
    d, mu = decomposition
    radius = min(to_fraction(q.matrix[i, i]) for i in range(q.dim))

    best_value: Fraction | None = None
    witnesses: set[IntVector] = set()
    for value, x in _enumerate(d, mu, radius):
        if best_value is None or value < best_value:
            best_value, witnesses = value, {sign_normalize(x)}
        elif value == best_value:
            witnesses.add(sign_normalize(x))
    logger.debug("quad_min: %d minimal vectors at value %s", len(witnesses), best_value)
    if best_value is None:
        raise InvalidInputError("no lattice vector found inside the search radius")
    return Rational(best_value.numerator, best_value.denominator), max(witnesses)
