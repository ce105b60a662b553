"""
Roots of unity, cyclotomic factorisation and eigenvalue profiles.

An EigenProfile is a sorted multiset of rotation numbers a/k (0 <= a < k,
gcd(a, k) = 1) standing for e^{2 pi i a/k}. Profiles of integer matrices
are read off the cyclotomic factorisation of the characteristic
polynomial.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from fractions import Fraction
from typing import Iterable, Sequence

from pydantic import BaseModel, ConfigDict, field_validator
from sympy import ImmutableMatrix, Poly, Rational, Symbol, cyclotomic_poly, eye, totient

from kugacert.errors import InvalidInputError, NotTorsionError

logger = logging.getLogger(__name__)

X = Symbol("x")

# Torsion elements of GL(m, Z) for m <= 12 have order at most 60.
TORSION_ORDER_BOUND = 60

Entry = tuple[int, int]


# ---------------------------------------------------------------------------
# Rotation numbers
# ---------------------------------------------------------------------------

def normalize_entry(a: int, k: int) -> Entry:
    """Reduce a/k modulo 1 to lowest terms (0 becomes 0/1)."""
    if k <= 0:
        raise InvalidInputError(f"order must be positive, got {k}")
    a %= k
    g = math.gcd(a, k)
    return (a // g, k // g) if a else (0, 1)


def primitive_roots(d: int) -> list[Entry]:
    """The primitive d-th roots of unity as rotation numbers."""
    if d == 1:
        return [(0, 1)]
    return [(a, d) for a in range(1, d) if math.gcd(a, d) == 1]


class EigenProfile(BaseModel):
    """Multiset of roots of unity, kept sorted for equality and hashing."""

    model_config = ConfigDict(frozen=True)

    entries: tuple[Entry, ...] = ()

    @field_validator("entries", mode="before")
    @classmethod
    def validate_entries(cls, v: Iterable[Sequence[int]]) -> tuple[Entry, ...]:
        out = []
        for item in v:
            a, k = item
            out.append(normalize_entry(int(a), int(k)))
        return tuple(sorted(out, key=lambda e: Fraction(e[0], e[1])))

    @classmethod
    def of(cls, *entries: Entry) -> "EigenProfile":
        return cls(entries=entries)

    @classmethod
    def from_cyclotomic(cls, factors: Iterable[tuple[int, int]]) -> "EigenProfile":
        """Profile with every primitive d-th root, `mult` times, for each (d, mult)."""
        entries = []
        for d, mult in factors:
            entries.extend(primitive_roots(d) * mult)
        return cls(entries=entries)

    def __len__(self) -> int:
        return len(self.entries)

    def conjugate(self) -> "EigenProfile":
        return EigenProfile(entries=[(-a, k) for a, k in self.entries])

    def is_conjugation_closed(self) -> bool:
        return Counter(self.entries) == Counter(self.conjugate().entries)

    def order(self) -> int:
        """Least common multiple of the entry orders."""
        return math.lcm(*(k for _, k in self.entries)) if self.entries else 1

    def nontrivial(self) -> tuple[Entry, ...]:
        return tuple(e for e in self.entries if e != (0, 1))

    def is_all(self, entry: Entry) -> bool:
        return bool(self.entries) and all(e == entry for e in self.entries)

    def age(self) -> Rational:
        return sum((Rational(a, k) for a, k in self.entries), Rational(0))

    def render(self) -> list[str]:
        return [f"{a}/{k}" for a, k in self.entries]


# ---------------------------------------------------------------------------
# Cyclotomic factorisation
# ---------------------------------------------------------------------------

def cyclotomic_factor(p) -> tuple[list[tuple[int, int]], Poly]:
    """
    Split p into cyclotomic factors.

    Returns (factors, remainder) with factors a list of (d, multiplicity)
    sorted by d. The remainder is the monic cofactor left after dividing
    out every Phi_d; it is 1 exactly when p is a product of cyclotomics.
    """
    poly = Poly(p, X)
    if poly.LC() != 1 or not all(c.is_Integer for c in poly.all_coeffs()):
        raise InvalidInputError("cyclotomic_factor expects a monic integer polynomial")
    degree = poly.degree()
    factors: list[tuple[int, int]] = []
    d = 1
    # phi(d) >= sqrt(d / 2) bounds the search
    while poly.degree() > 0 and d <= 2 * degree * degree + 2:
        if totient(d) <= poly.degree():
            phi = Poly(cyclotomic_poly(d, X), X)
            mult = 0
            while poly.degree() >= phi.degree():
                quotient, remainder = poly.div(phi)
                if not remainder.is_zero:
                    break
                poly = quotient
                mult += 1
            if mult:
                factors.append((d, mult))
        d += 1
    return factors, poly


def charpoly(m: ImmutableMatrix) -> Poly:
    return Poly(m.charpoly(X).as_expr(), X)


def multiplicative_order(m, bound: int = TORSION_ORDER_BOUND) -> int:
    """
    Least k >= 1 with m^k = 1.

    The order divides the lcm of the cyclotomic indices of the
    characteristic polynomial; every divisor is checked by exact powering.
    """
    m = ImmutableMatrix(m)
    if m.rows != m.cols:
        raise InvalidInputError("multiplicative order needs a square matrix")
    factors, remainder = cyclotomic_factor(charpoly(m))
    if remainder.degree() > 0:
        raise NotTorsionError(f"characteristic polynomial has non-cyclotomic factor {remainder.as_expr()}")
    candidate = math.lcm(*(d for d, _ in factors)) if factors else 1
    if candidate > bound:
        raise NotTorsionError(f"candidate order {candidate} exceeds the torsion bound {bound}")
    identity = eye(m.rows)
    for k in sorted(k for k in range(1, candidate + 1) if candidate % k == 0):
        if m**k == identity:
            return k
    raise NotTorsionError("matrix is not diagonalisable over the cyclotomic field (infinite order)")


def eigen_profile(m) -> EigenProfile:
    """Exact eigenvalues of a finite-order integer matrix."""
    m = ImmutableMatrix(m)
    if m.rows != m.cols:
        raise InvalidInputError(f"eigen_profile needs a square matrix, got {m.rows}x{m.cols}")
    order = multiplicative_order(m)
    factors, _ = cyclotomic_factor(charpoly(m))
    profile = EigenProfile.from_cyclotomic(factors)
    logger.debug("order %d matrix has cyclotomic factors %s", order, factors)
    return profile


def conjugate_pairs(profile: EigenProfile) -> list[tuple[Entry, Entry]]:
    """
    Pair every eigenvalue with its complex conjugate.

    Eigenvalues 1 and -1 pair among themselves, so they must occur with
    even multiplicity. Each pair lists the smaller rotation number first.
    """
    remaining = Counter(profile.entries)
    pairs = []
    for entry in profile.entries:
        if remaining[entry] == 0:
            continue
        a, k = entry
        partner = normalize_entry(-a, k)
        remaining[entry] -= 1
        if remaining[partner] == 0:
            raise InvalidInputError(f"eigenvalue {a}/{k} has no conjugate partner in the profile")
        remaining[partner] -= 1
        pairs.append((entry, partner))
    return pairs
