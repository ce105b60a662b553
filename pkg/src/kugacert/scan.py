"""
Scans over eigenvalue profiles of boundary stabilizers.

Profiles are products of cyclotomic polynomials, i.e. the eigenvalue
multisets integer matrices can have. This over-approximates the
stabilizers that occur, so a clean scan is a valid certificate.
"""

from __future__ import annotations

import logging
from typing import Literal

from pydantic import BaseModel, ConfigDict
from sympy import Rational, totient

from kugacert.cyclotomic import EigenProfile
from kugacert.errors import InvalidInputError
from kugacert.linalg import render_rational
from kugacert.spectra import MINUS_ONE, ONE, GammaKind, StabilizerProfile, UKind, assemble_spectrum, min_age

logger = logging.getLogger(__name__)

DEFAULT_D_MAX = 12

# (g, n) where the interior of the fibre power is not known to be canonical
INTERIOR_EXCEPTIONS = frozenset({(2, 1), (2, 2), (3, 1)})


# ---------------------------------------------------------------------------
# Profile enumeration
# ---------------------------------------------------------------------------

def _factorisations(size: int, orders: list[int]) -> list[list[tuple[int, int]]]:
    """All (d, multiplicity) lists with sum of phi(d) * mult equal to size."""
    if size == 0:
        return [[]]
    if not orders:
        return []
    d, rest = orders[0], orders[1:]
    phi = int(totient(d))
    out = []
    for mult in range(size // phi + 1):
        for tail in _factorisations(size - mult * phi, rest):
            out.append(([(d, mult)] if mult else []) + tail)
    return out


def enumerate_cyclotomic_profiles(size: int, d_max: int = DEFAULT_D_MAX, symplectic: bool = False) -> list[EigenProfile]:
    """
    Eigenvalue profiles of degree-`size` products of cyclotomic polynomials
    Phi_d with d <= d_max. With `symplectic`, the eigenvalues 1 and -1
    occur with even multiplicity.
    """
    if size < 0 or d_max < 1:
        raise InvalidInputError("size must be >= 0 and d_max >= 1")
    profiles = []
    for factors in _factorisations(size, list(range(1, d_max + 1))):
        mults = dict(factors)
        if symplectic and (mults.get(1, 0) % 2 or mults.get(2, 0) % 2):
            continue
        profiles.append(EigenProfile.from_cyclotomic(factors))
    return sorted(set(profiles), key=lambda p: p.entries)


def gamma_kinds(g_prime: int, d_max: int = DEFAULT_D_MAX) -> list[GammaKind]:
    if g_prime == 0:
        return [GammaKind(kind="Identity")]
    kinds = [GammaKind(kind="Identity"), GammaKind(kind="MinusIdentity")]
    for profile in enumerate_cyclotomic_profiles(2 * g_prime, d_max, symplectic=True):
        if profile.is_all(ONE) or profile.is_all(MINUS_ONE):
            continue
        kinds.append(GammaKind(kind="Elliptic", profile=profile))
    return kinds


def u_kinds(g_dd: int, d_max: int = DEFAULT_D_MAX) -> list[UKind]:
    kinds = [UKind(kind="Epsilon", epsilon=1), UKind(kind="Epsilon", epsilon=-1)]
    for profile in enumerate_cyclotomic_profiles(g_dd, d_max):
        if profile.is_all(ONE) or profile.is_all(MINUS_ONE):
            continue
        kinds.append(UKind(kind="General", profile=profile))
    return kinds


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

class ScanEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    profile: str
    g_prime: int
    g_dd: int
    min_age: str
    certified_age: str
    order: int
    quasireflection: bool
    violation: bool
    lambda_choice: list[int]
    z_sign: int


class ScanReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    g: int
    n: int
    d_max: int
    passed: bool
    profiles_scanned: int
    entries: list[ScanEntry]
    violations: list[ScanEntry]
    quasireflections: list[ScanEntry]
    witness: ScanEntry | None = None


def _entry(p: StabilizerProfile) -> ScanEntry:
    report = min_age(p)
    violation = bool(report.certified_age < 1) and not report.is_quasireflection
    return ScanEntry(
        profile=p.render(),
        g_prime=p.g_prime,
        g_dd=p.g_dd,
        min_age=render_rational(report.age),
        certified_age=render_rational(report.certified_age),
        order=report.order,
        quasireflection=report.is_quasireflection,
        violation=violation,
        lambda_choice=list(report.lambda_choice),
        z_sign=report.z_sign,
    )


def stabilizer_profiles(g: int, n: int, d_max: int = DEFAULT_D_MAX) -> list[StabilizerProfile]:
    """Every profile the scan visits, in canonical order."""
    out = []
    for g_dd in range(1, g + 1):
        g_prime = g - g_dd
        us = u_kinds(g_dd, d_max)
        for gamma in gamma_kinds(g_prime, d_max):
            for u in us:
                if gamma.kind == "Identity" and u.kind == "Epsilon" and u.epsilon == 1:
                    continue
                out.append(StabilizerProfile(g_prime=g_prime, g_dd=g_dd, n=n, gamma=gamma, u=u))
    return sorted(out, key=lambda p: p.key)


def rt_scan(g: int, n: int, d_max: int = DEFAULT_D_MAX) -> ScanReport:
    """
    Minimum ages of all boundary stabilizer profiles of the n-fold fibre
    power over a rank-g cusp; passes when no profile has certified age
    below 1 and none is a quasireflection.
    """
    if g < 2:
        raise InvalidInputError("rt_scan needs g >= 2")
    if n < 0:
        raise InvalidInputError("n must be non-negative")
    profiles = stabilizer_profiles(g, n, d_max)
    entries = [_entry(p) for p in profiles]
    violations = [e for e in entries if e.violation]
    quasireflections = [e for e in entries if e.quasireflection]
    logger.debug(
        "rt_scan g=%d n=%d d_max=%d: %d profiles, %d violations, %d quasireflections",
        g, n, d_max, len(entries), len(violations), len(quasireflections),
    )
    return ScanReport(
        g=g,
        n=n,
        d_max=d_max,
        passed=not violations and not quasireflections,
        profiles_scanned=len(entries),
        entries=entries,
        violations=violations,
        quasireflections=quasireflections,
        witness=violations[0] if violations else None,
    )


# ---------------------------------------------------------------------------
# Nontrivial u and the interior
# ---------------------------------------------------------------------------

class UCheckEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    profile: list[str]
    age: str
    passed: bool


class UCheckReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    g_dd: int
    n: int
    d_max: int
    entries: list[UCheckEntry]
    minus_identity: UCheckEntry
    exception: bool
    passed: bool


def _toric_age(u: UKind, g_dd: int, n: int) -> tuple[list[str], Rational]:
    p = StabilizerProfile(g_prime=0, g_dd=g_dd, n=n, gamma=GammaKind(kind="Identity"), u=u)
    spectrum = assemble_spectrum(p, ())
    return u.eigenvalues(g_dd).render(), spectrum.toric_factor.age()


def u_nontrivial_bound_check(g_dd: int, n: int, d_max: int = DEFAULT_D_MAX) -> UCheckReport:
    """
    The age of the toric factor alone for every u other than +1 and -1,
    plus the u = -1 branch, which fails exactly at (g'', n) = (1, 1).
    """
    if g_dd < 1:
        raise InvalidInputError("g'' must be positive")
    if n < 0:
        raise InvalidInputError("n must be non-negative")
    entries = []
    for u in u_kinds(g_dd, d_max):
        if u.kind != "General":
            continue
        rendered, value = _toric_age(u, g_dd, n)
        entries.append(UCheckEntry(profile=rendered, age=render_rational(value), passed=bool(value >= 1)))
    rendered, value = _toric_age(UKind(kind="Epsilon", epsilon=-1), g_dd, n)
    minus = UCheckEntry(profile=rendered, age=render_rational(value), passed=bool(value >= 1))
    return UCheckReport(
        g_dd=g_dd,
        n=n,
        d_max=d_max,
        entries=entries,
        minus_identity=minus,
        exception=(g_dd, n) == (1, 1),
        passed=all(e.passed for e in entries) and minus.passed,
    )


class InteriorVerdict(BaseModel):
    model_config = ConfigDict(frozen=True)

    g: int
    n: int
    verdict: Literal["canonical", "exception"]


def interior_singularity_table(g: int, n: int) -> InteriorVerdict:
    """Canonical, without quasireflections, away from (2,1), (2,2) and (3,1)."""
    if g < 2 or n < 0:
        raise InvalidInputError("need g >= 2 and n >= 0")
    verdict = "exception" if (g, n) in INTERIOR_EXCEPTIONS else "canonical"
    return InteriorVerdict(g=g, n=n, verdict=verdict)
