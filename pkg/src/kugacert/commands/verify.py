"""
`kugacert verify` command group: floating-point checks of the automorphy
cocycle and of the tangent eigenvalues at fixed points.

Both are deterministic given --seed. A failed check exits 1.
"""

from __future__ import annotations

import json
import sys

import click

from kugacert import numeric
from kugacert.errors import EXIT_FAIL, EXIT_OK, InvalidInputError, OutOfRangeError
from kugacert.output import emit, options, reporting

# randomized cocycle trials are supported up to this genus
MAX_COCYCLE_GENUS = 3


@click.group("verify")
def verify() -> None:
    """Numerical verifiers for the automorphy factor."""


@verify.command("cocycle")
@click.option("--g", "g", type=int, default=2, show_default=True, help="Genus (at most 3).")
@click.option("--trials", type=int, default=1000, show_default=True, help="Number of random pairs.")
@click.option("--seed", type=int, default=None, help="Overrides the global --seed.")
@click.option("--tol", type=float, default=None, help="Overrides the global --tol.")
@click.pass_context
def cocycle(ctx: click.Context, g: int, trials: int, seed: int | None, tol: float | None) -> None:
    """j(b1 b2, tau) = j(b1, b2 tau) j(b2, tau) on seeded random pairs."""
    opts = options(ctx)
    seed = opts["seed"] if seed is None else seed
    tol = opts["tol"] if tol is None else tol
    params = {"g": g, "trials": trials, "seed": seed, "tol": tol}
    with reporting():
        if g > MAX_COCYCLE_GENUS:
            raise OutOfRangeError(f"randomized cocycle trials need g <= {MAX_COCYCLE_GENUS}, got {g}")
        if trials < 1:
            raise InvalidInputError("--trials must be positive")
        report = numeric.verify_cocycle(g, trials, seed, tol)
    lines = [
        f"{report.trials} trials, max residual {report.max_residual:.3e} (tol {report.tol:g})",
        "PASS" if report.passed else "FAIL",
    ]
    emit(ctx, "verify cocycle", params, report, lines)
    sys.exit(EXIT_OK if report.passed else EXIT_FAIL)


def _parse_tau(text: str) -> list[list[complex]]:
    try:
        rows = json.loads(text)
        return [[complex(str(x).replace(" ", "")) for x in row] for row in rows]
    except (ValueError, TypeError) as exc:
        raise InvalidInputError(f"--tau must be a JSON matrix of complex literals such as \"1j\": {exc}") from exc


def _parse_gamma(text: str) -> list[list[int]]:
    try:
        return [[int(x) for x in row] for row in json.loads(text)]
    except (ValueError, TypeError) as exc:
        raise InvalidInputError(f"--gamma must be a JSON integer matrix: {exc}") from exc


@verify.command("fixed-point")
@click.option("--g", "g", type=int, default=1, show_default=True, help="Genus of the diagonal catalog.")
@click.option("--gamma", type=str, default=None, help="Explicit symplectic matrix as JSON.")
@click.option("--tau", type=str, default=None, help="Fixed point as a JSON matrix of complex literals.")
@click.option("--tol", type=float, default=None, help="Overrides the global --tol.")
@click.pass_context
def fixed_point(ctx: click.Context, g: int, gamma: str | None, tau: str | None, tol: float | None) -> None:
    """Match the eigenvalues of C tau + D against the conjugated eigenvalues of gamma."""
    tol = options(ctx)["tol"] if tol is None else tol
    if (gamma is None) != (tau is None):
        raise click.UsageError("--gamma and --tau go together")
    params = {"g": g, "gamma": gamma, "tau": tau, "tol": tol}
    with reporting():
        if gamma is not None:
            cases = [("given", _parse_gamma(gamma), _parse_tau(tau))]
        else:
            if g < 1:
                raise InvalidInputError("--g must be positive")
            cases = numeric.fixed_point_catalog(g)
        reports = [(name, numeric.fixed_point_eigen_check(m, t, tol)) for name, m, t in cases]

    lines = []
    passed = True
    for name, report in reports:
        ok = report.matched and (report.has_non_one or not report.nontrivial)
        passed = passed and ok
        splitting = ",".join(report.lambda_splitting or []) or "-"
        lines.append(f"{name}: eigenvalues {','.join(report.profile) or '-'} lambda {splitting} {'ok' if ok else 'FAIL'}")
    lines.append("PASS" if passed else "FAIL")
    result = {"passed": passed, "cases": [{"name": name, **report.model_dump()} for name, report in reports]}
    emit(ctx, "verify fixed-point", params, result, lines)
    sys.exit(EXIT_OK if passed else EXIT_FAIL)
