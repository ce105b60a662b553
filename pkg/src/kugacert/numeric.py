"""
Double-precision verifiers for the automorphy factor J(beta, tau) = C tau + D.

These are sanity checks next to the exact pipeline: the cocycle identity
on random symplectic pairs and the eigenvalues of J(gamma, tau) at fixed
points of finite-order elements. Nothing here feeds a certificate.
"""

from __future__ import annotations

import itertools
import logging

import numpy as np
from pydantic import BaseModel, ConfigDict

from kugacert.cyclotomic import EigenProfile, conjugate_pairs, eigen_profile
from kugacert.errors import DegenerateInputError, InvalidInputError
from kugacert.linalg import as_int_matrix, is_symplectic

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-9
CONDITION_LIMIT = 1e12
DEFAULT_WORD_LENGTH = 4


# ---------------------------------------------------------------------------
# Symplectic action
# ---------------------------------------------------------------------------

def _blocks(beta: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    g = beta.shape[0] // 2
    return beta[:g, :g], beta[:g, g:], beta[g:, :g], beta[g:, g:]


def automorphy_factor(beta: np.ndarray, tau: np.ndarray) -> np.ndarray:
    """J(beta, tau) = C tau + D."""
    _, _, c, d = _blocks(np.asarray(beta, dtype=float))
    factor = c @ tau + d
    if np.linalg.cond(factor) > CONDITION_LIMIT:
        raise DegenerateInputError("C tau + D is numerically singular")
    return factor


def act(beta: np.ndarray, tau: np.ndarray) -> np.ndarray:
    """beta . tau = (A tau + B)(C tau + D)^{-1}."""
    a, b, _, _ = _blocks(np.asarray(beta, dtype=float))
    return (a @ tau + b) @ np.linalg.inv(automorphy_factor(beta, tau))


def cocycle_residual(b1: np.ndarray, b2: np.ndarray, tau: np.ndarray) -> float:
    lhs = automorphy_factor(b1 @ b2, tau)
    rhs = automorphy_factor(b1, act(b2, tau)) @ automorphy_factor(b2, tau)
    return float(np.max(np.abs(lhs - rhs)))


def cocycle_check(b1, b2, tau, tol: float = DEFAULT_TOL) -> bool:
    """True iff J(b1 b2, tau) = J(b1, b2 tau) J(b2, tau) to tolerance."""
    return cocycle_residual(np.asarray(b1, dtype=float), np.asarray(b2, dtype=float), np.asarray(tau)) <= tol


# ---------------------------------------------------------------------------
# Random data
# ---------------------------------------------------------------------------

def _elementary_generators(g: int) -> list[np.ndarray]:
    """Unipotent upper/lower blocks for elementary symmetric S, GL_g embeddings, and J."""
    eye = np.eye(g)
    zero = np.zeros((g, g))
    gens = []
    for i, j in itertools.combinations_with_replacement(range(g), 2):
        s = np.zeros((g, g))
        s[i, j] = s[j, i] = 1
        gens.append(np.block([[eye, s], [zero, eye]]))
        gens.append(np.block([[eye, zero], [s, eye]]))
    for i, j in itertools.permutations(range(g), 2):
        a = eye.copy()
        a[i, j] = 1
        gens.append(np.block([[a, zero], [zero, np.linalg.inv(a).T]]))
    gens.append(np.block([[zero, -eye], [eye, zero]]))
    return gens


def random_symplectic(g: int, rng: np.random.Generator, word_length: int = DEFAULT_WORD_LENGTH) -> np.ndarray:
    """A random word in the elementary symplectic generators and their inverses."""
    gens = _elementary_generators(g)
    gens += [np.linalg.inv(m) for m in gens]
    word = np.eye(2 * g)
    for index in rng.integers(0, len(gens), size=word_length):
        word = word @ gens[index]
    return np.rint(word)


def random_siegel_point(g: int, rng: np.random.Generator) -> np.ndarray:
    """X + iY with X symmetric and Y positive definite."""
    x = rng.uniform(-0.5, 0.5, size=(g, g))
    p = rng.uniform(-0.5, 0.5, size=(g, g))
    return (x + x.T) / 2 + 1j * (p @ p.T + np.eye(g))


class CocycleReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    g: int
    trials: int
    seed: int
    tol: float
    max_residual: float
    passed: bool


def verify_cocycle(g: int, trials: int, seed: int, tol: float = DEFAULT_TOL) -> CocycleReport:
    """Run the cocycle identity on `trials` seeded random pairs."""
    if g < 1:
        raise InvalidInputError("g must be positive")
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        b1 = random_symplectic(g, rng)
        b2 = random_symplectic(g, rng)
        tau = random_siegel_point(g, rng)
        worst = max(worst, cocycle_residual(b1, b2, tau))
    logger.debug("cocycle: %d trials, max residual %.3e", trials, worst)
    return CocycleReport(g=g, trials=trials, seed=seed, tol=tol, max_residual=worst, passed=worst <= tol)


# ---------------------------------------------------------------------------
# Fixed points of finite-order elements
# ---------------------------------------------------------------------------

# Finite-order elements of SL(2, Z) with a fixed point in the upper half plane.
_RHO = np.exp(1j * np.pi / 3)
SL2_CATALOG: dict[str, tuple[tuple[tuple[int, int], tuple[int, int]], complex]] = {
    "identity": (((1, 0), (0, 1)), 1j),
    "order2": (((-1, 0), (0, -1)), 1j),
    "order3": (((0, -1), (1, -1)), complex(_RHO)),
    "order4": (((0, -1), (1, 0)), 1j),
    "order6": (((1, -1), (1, 0)), complex(_RHO)),
}


def embed_diagonal(elements: list[tuple[tuple[tuple[int, int], tuple[int, int]], complex]]):
    """Block-diagonal embedding of SL(2, Z) elements into Sp(2g, Z) with the product fixed point."""
    g = len(elements)
    gamma = np.zeros((2 * g, 2 * g), dtype=int)
    tau = np.zeros((g, g), dtype=complex)
    for i, (((a, b), (c, d)), point) in enumerate(elements):
        gamma[i, i], gamma[i, g + i] = a, b
        gamma[g + i, i], gamma[g + i, g + i] = c, d
        tau[i, i] = point
    return gamma, tau


def fixed_point_catalog(g: int) -> list[tuple[str, np.ndarray, np.ndarray]]:
    """Every diagonal embedding of catalog elements into Sp(2g, Z)."""
    names = sorted(SL2_CATALOG)
    out = []
    for combo in itertools.combinations_with_replacement(names, g):
        gamma, tau = embed_diagonal([SL2_CATALOG[name] for name in combo])
        out.append(("+".join(combo), gamma, tau))
    return out


class FixedPointReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    profile: list[str]
    eigenvalues: list[list[float]]
    lambda_splitting: list[str] | None
    matched: bool
    nontrivial: bool
    has_non_one: bool
    max_error: float | None


def _splittings(profile: EigenProfile) -> list[list[tuple[int, int]]]:
    """All ways of picking one eigenvalue from each conjugate pair."""
    pairs = conjugate_pairs(profile)
    options = []
    for bits in itertools.product((0, 1), repeat=len(pairs)):
        options.append(sorted(pair[bit] for pair, bit in zip(pairs, bits)))
    return options


def _match(values: np.ndarray, targets: list[complex], tol: float) -> float | None:
    """Greedy multiset match; returns the worst distance, or None."""
    pool = list(targets)
    worst = 0.0
    for v in values:
        distances = [abs(v - t) for t in pool]
        best = int(np.argmin(distances))
        if distances[best] > tol:
            return None
        worst = max(worst, distances[best])
        pool.pop(best)
    return worst


def fixed_point_eigen_check(gamma, tau, tol: float = DEFAULT_TOL) -> FixedPointReport:
    """
    Compare the eigenvalues of C tau + D at a fixed point with the
    conjugates of each splitting Lambda of the eigenvalues of gamma.
    """
    gamma_exact = as_int_matrix(np.asarray(gamma).tolist())
    g = gamma_exact.rows // 2
    if not is_symplectic(gamma_exact, g):
        raise InvalidInputError("gamma is not symplectic")
    beta = np.asarray(gamma, dtype=float)
    tau = np.asarray(tau, dtype=complex)
    if np.max(np.abs(act(beta, tau) - tau)) > tol:
        raise InvalidInputError("tau is not fixed by gamma")
    profile = eigen_profile(gamma_exact)
    values = np.linalg.eigvals(automorphy_factor(beta, tau))

    matched_split = None
    error = float("inf")
    for split in _splittings(profile):
        conjugates = [np.exp(-2j * np.pi * a / k) for a, k in split]
        worst = _match(values, conjugates, tol)
        if worst is not None:
            matched_split, error = split, worst
            break
    nontrivial = not np.array_equal(np.asarray(gamma), np.eye(2 * g, dtype=int))
    return FixedPointReport(
        profile=profile.render(),
        eigenvalues=[[float(v.real), float(v.imag)] for v in values],
        lambda_splitting=[f"{a}/{k}" for a, k in matched_split] if matched_split is not None else None,
        matched=matched_split is not None,
        nontrivial=nontrivial,
        has_non_one=bool(np.any(np.abs(values - 1) > tol)),
        max_error=error if matched_split is not None else None,
    )
