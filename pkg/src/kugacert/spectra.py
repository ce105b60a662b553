"""
Tangent spectra of boundary stabilizers and their Reid-Tai ages.

A stabilizer is described by eigenvalue data only: the action gamma' on
the rank-g' part, the action u on the rank-g'' lattice and the size n of
the fibre power. assemble_spectrum splits the tangent action into four
factors; min_age minimises the age over the choice of one eigenvalue per
conjugate pair and over the sign of the exponent on the fibre factor.

Inner loops work with integer rotation numbers over a common modulus and
only build EigenProfile objects for the minimising choice.
"""

from __future__ import annotations

import itertools
import logging
import math
from typing import Literal

from pydantic import BaseModel, ConfigDict, model_validator
from sympy import Rational

from kugacert.cyclotomic import EigenProfile, conjugate_pairs
from kugacert.errors import InvalidInputError

logger = logging.getLogger(__name__)

# g' from which the age on the Siegel factor is bounded below by 1
SIEGEL_AGE_BOUND_GENUS = 5

ONE = (0, 1)
MINUS_ONE = (1, 2)


def age(profile: EigenProfile) -> Rational:
    """Sum of the rotation numbers a/k; identity entries contribute 0."""
    return profile.age()


# ---------------------------------------------------------------------------
# Profiles
# ---------------------------------------------------------------------------

class GammaKind(BaseModel):
    """The action gamma' on the cusp: plus or minus the identity, or elliptic."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["Identity", "MinusIdentity", "Elliptic"]
    profile: EigenProfile | None = None

    @model_validator(mode="after")
    def check_profile(self) -> "GammaKind":
        if self.kind == "Elliptic":
            if self.profile is None:
                raise ValueError("an elliptic gamma' needs an eigenvalue profile")
            if not self.profile.is_conjugation_closed():
                raise ValueError("gamma' profile must be closed under conjugation")
            if self.profile.is_all(ONE) or self.profile.is_all(MINUS_ONE):
                raise ValueError("use Identity / MinusIdentity for scalar gamma'")
        elif self.profile is not None:
            raise ValueError(f"{self.kind} takes no profile")
        return self

    def eigenvalues(self, g_prime: int) -> EigenProfile:
        if self.kind == "Identity":
            return EigenProfile(entries=[ONE] * (2 * g_prime))
        if self.kind == "MinusIdentity":
            return EigenProfile(entries=[MINUS_ONE] * (2 * g_prime))
        return self.profile

    def render(self) -> str:
        if self.kind == "Elliptic":
            return "Elliptic(" + ",".join(self.profile.render()) + ")"
        return self.kind


class UKind(BaseModel):
    """The action u on the rank-g'' lattice: a scalar epsilon or a general profile."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["Epsilon", "General"]
    epsilon: Literal[1, -1] | None = None
    profile: EigenProfile | None = None

    @model_validator(mode="after")
    def check_fields(self) -> "UKind":
        if self.kind == "Epsilon":
            if self.epsilon is None or self.profile is not None:
                raise ValueError("Epsilon needs epsilon = +1 or -1 and no profile")
        else:
            if self.profile is None or self.epsilon is not None:
                raise ValueError("General needs a profile and no epsilon")
            if not self.profile.is_conjugation_closed():
                raise ValueError("u profile must be closed under conjugation")
            if self.profile.is_all(ONE) or self.profile.is_all(MINUS_ONE):
                raise ValueError("use Epsilon for scalar u")
        return self

    def eigenvalues(self, g_dd: int) -> EigenProfile:
        if self.kind == "Epsilon":
            return EigenProfile(entries=[ONE if self.epsilon == 1 else MINUS_ONE] * g_dd)
        return self.profile

    def render(self) -> str:
        if self.kind == "Epsilon":
            return f"Epsilon({self.epsilon:+d})"
        return "General(" + ",".join(self.profile.render()) + ")"


class StabilizerProfile(BaseModel):
    model_config = ConfigDict(frozen=True)

    g_prime: int
    g_dd: int
    n: int
    gamma: GammaKind
    u: UKind

    @model_validator(mode="after")
    def check_sizes(self) -> "StabilizerProfile":
        if self.g_prime < 0 or self.g_dd < 1 or self.n < 0:
            raise ValueError("need g' >= 0, g'' >= 1 and n >= 0")
        if self.gamma.kind == "Elliptic" and len(self.gamma.profile) != 2 * self.g_prime:
            raise ValueError(f"gamma' profile must have {2 * self.g_prime} entries")
        if self.gamma.kind == "MinusIdentity" and self.g_prime == 0:
            raise ValueError("MinusIdentity needs g' >= 1")
        if self.u.kind == "General" and len(self.u.profile) != self.g_dd:
            raise ValueError(f"u profile must have {self.g_dd} entries")
        return self

    @property
    def key(self) -> tuple:
        """Canonical sort key for scan reports."""
        kinds = ("Identity", "MinusIdentity", "Elliptic")
        gamma_entries = self.gamma.profile.entries if self.gamma.profile else ()
        u_entries = self.u.profile.entries if self.u.profile else ()
        return (
            self.g_prime, self.g_dd, kinds.index(self.gamma.kind), gamma_entries,
            self.u.kind, -(self.u.epsilon or 0), u_entries,
        )

    def render(self) -> str:
        return f"g'={self.g_prime} g''={self.g_dd} n={self.n} gamma'={self.gamma.render()} u={self.u.render()}"


# ---------------------------------------------------------------------------
# Spectra
# ---------------------------------------------------------------------------

class TangentSpectrum(BaseModel):
    model_config = ConfigDict(frozen=True)

    h_factor: EigenProfile
    omega_factor: EigenProfile
    z_factor: EigenProfile
    toric_factor: EigenProfile

    def factors(self) -> tuple[EigenProfile, ...]:
        return (self.h_factor, self.omega_factor, self.z_factor, self.toric_factor)

    def age(self) -> Rational:
        return sum((f.age() for f in self.factors()), Rational(0))

    def order(self) -> int:
        return math.lcm(*(f.order() for f in self.factors()))


def is_quasireflection(spectrum: TangentSpectrum) -> bool:
    """Exactly one eigenvalue differs from 1."""
    return sum(len(f.nontrivial()) for f in spectrum.factors()) == 1


class _Rotations:
    """Rotation numbers of a profile over a common modulus."""

    def __init__(self, p: StabilizerProfile):
        self.p = p
        gamma = p.gamma.eigenvalues(p.g_prime)
        mu = p.u.eigenvalues(p.g_dd)
        self.modulus = math.lcm(2, gamma.order(), mu.order())
        m = self.modulus
        self.pairs = [
            (a * m // k, b * m // l) for (a, k), (b, l) in conjugate_pairs(gamma)
        ] if gamma.entries else []
        self.mu = [a * m // k for a, k in mu.entries]
        self.half = m // 2
        self.trivial_choice = p.gamma.kind != "Elliptic"

    def choices(self) -> list[tuple[int, ...]]:
        if self.trivial_choice:
            return [(0,) * len(self.pairs)]
        return list(itertools.product((0, 1), repeat=len(self.pairs)))

    def assemble(self, choice: tuple[int, ...], z_sign: int) -> tuple[list[int], ...]:
        m = self.modulus
        p = self.p
        if len(choice) != len(self.pairs):
            raise InvalidInputError(f"lambda_choice needs {len(self.pairs)} bits, got {len(choice)}")
        lam = [pair[bit] for pair, bit in zip(self.pairs, choice)]
        h = [(-x - y) % m for i, x in enumerate(lam) for y in lam[i:]]
        if p.u.kind == "Epsilon":
            shift = 0 if p.u.epsilon == 1 else self.half
            omega = [(x + shift) % m for x in lam for _ in range(p.g_dd)]
        else:
            omega = [(x + y) % m for x in lam for y in self.mu]
        # the fibre factor sees gamma' only, never u
        z = [(z_sign * x) % m for x in lam for _ in range(p.n)]
        toric = [(x + y) % m for i, x in enumerate(self.mu) for y in self.mu[i:]]
        toric += [x for x in self.mu for _ in range(p.n)]
        toric = [x for x in toric if x]
        return h, omega, z, toric

    def spectrum(self, factors: tuple[list[int], ...]) -> TangentSpectrum:
        h, omega, z, toric = (EigenProfile(entries=[(x, self.modulus) for x in f]) for f in factors)
        return TangentSpectrum(h_factor=h, omega_factor=omega, z_factor=z, toric_factor=toric)


def assemble_spectrum(p: StabilizerProfile, lambda_choice, z_sign: int = 1) -> TangentSpectrum:
    """
    Tangent eigenvalues of a stabilizer, split into four factors.

    h: conj(lambda_i) conj(lambda_j), i <= j. omega: eps lambda_i, g'' times each
    (lambda_i mu_j for general u). z: lambda_i^z_sign, n times each, so
    gamma' = -1 puts n copies of -1 on the fibre factor whatever eps is.
    toric: mu_i mu_j (i <= j) and n copies of every mu_i, eigenvalue 1 dropped.
    """
    if z_sign not in (1, -1):
        raise InvalidInputError("z_sign must be +1 or -1")
    rotations = _Rotations(p)
    return rotations.spectrum(rotations.assemble(tuple(int(b) for b in lambda_choice), z_sign))


# ---------------------------------------------------------------------------
# Ages
# ---------------------------------------------------------------------------

class AgeReport(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    age: Rational
    certified_age: Rational
    is_quasireflection: bool
    per_factor_ages: tuple[Rational, Rational, Rational, Rational]
    lambda_choice: tuple[int, ...]
    z_sign: int
    order: int


def _certified_h(h_sum: int, modulus: int, g_prime: int, order: int) -> Rational:
    exact = Rational(h_sum, modulus)
    if g_prime >= SIEGEL_AGE_BOUND_GENUS:
        return min(exact, Rational(1))
    return min(exact, Rational(g_prime, order))


def min_age(p: StabilizerProfile) -> AgeReport:
    """
    Minimum age over lambda choices and z signs.

    certified_age replaces the age on the Siegel factor of an elliptic
    gamma' by its lower bound (1 for g' >= 5, g'/d otherwise, d the order
    of the tangent action) and is minimised independently.
    """
    rotations = _Rotations(p)
    m = rotations.modulus
    best = None
    best_certified = None
    for choice in rotations.choices():
        for z_sign in (1, -1):
            factors = rotations.assemble(choice, z_sign)
            sums = [sum(f) for f in factors]
            total = sum(sums)
            if best is None or (total, choice, -z_sign) < best[0]:
                best = ((total, choice, -z_sign), factors, choice, z_sign)
            if p.gamma.kind == "Elliptic":
                order = math.lcm(*(m // math.gcd(x, m) for f in factors for x in f))
                certified = total - sums[0] + _certified_h(sums[0], m, p.g_prime, order) * m
            else:
                certified = Rational(total)
            if best_certified is None or certified < best_certified:
                best_certified = certified
    _, factors, choice, z_sign = best
    spectrum = rotations.spectrum(factors)
    return AgeReport(
        age=Rational(best[0][0], m),
        certified_age=Rational(best_certified) / m,
        is_quasireflection=is_quasireflection(spectrum),
        per_factor_ages=tuple(f.age() for f in spectrum.factors()),
        lambda_choice=choice,
        z_sign=z_sign,
        order=spectrum.order(),
    )
