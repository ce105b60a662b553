"""
`kugacert scan` command.

Minimum Reid-Tai ages over every boundary stabilizer profile of a rank-g
cusp of X_g^n, or with --u-check the toric-factor bound for nontrivial u.
Exits 1 when a violation is found.
"""

from __future__ import annotations

import sys

import click

from kugacert import scan as engine
from kugacert.errors import EXIT_FAIL, EXIT_OK
from kugacert.output import emit, reporting


def _scan_lines(report: engine.ScanReport, show_all: bool) -> list[str]:
    lines = [
        f"{report.profiles_scanned} profiles, {len(report.violations)} violations, "
        f"{len(report.quasireflections)} quasireflections"
    ]
    shown = report.entries if show_all else report.violations + report.quasireflections
    for e in shown:
        flag = " VIOLATION" if e.violation else (" QUASIREFLECTION" if e.quasireflection else "")
        lines.append(f"  {e.profile}: age {e.min_age}, certified {e.certified_age}, order {e.order}{flag}")
    if report.witness is not None:
        lines.append(f"witness: {report.witness.profile} order {report.witness.order}")
    lines.append("PASS" if report.passed else "FAIL")
    return lines


def _ucheck_lines(report: engine.UCheckReport) -> list[str]:
    lines = [f"{len(report.entries)} nontrivial u profiles"]
    for e in report.entries:
        lines.append(f"  u = {','.join(e.profile)}: toric age {e.age}{'' if e.passed else ' FAIL'}")
    m = report.minus_identity
    lines.append(f"u = -1: toric age {m.age}{'' if m.passed else ' FAIL'}")
    if report.exception:
        lines.append("(g'', n) = (1, 1) is the known exception")
    lines.append("PASS" if report.passed else "FAIL")
    return lines


@click.command("scan")
@click.option("--g", "g", type=int, default=None, help="Genus g >= 2 (full scan).")
@click.option("--n", "n", type=int, required=True, help="Fibre power n >= 0.")
@click.option("--d-max", type=int, default=engine.DEFAULT_D_MAX, show_default=True, help="Largest cyclotomic order.")
@click.option("--u-check", "u_check", type=int, default=None, metavar="GDD", help="Only the nontrivial-u bound for this g''.")
@click.option("--all", "show_all", is_flag=True, default=False, help="List every profile, not only the failures.")
@click.pass_context
def scan(ctx: click.Context, g: int | None, n: int, d_max: int, u_check: int | None, show_all: bool) -> None:
    """Reid-Tai age scan over boundary stabilizer profiles."""
    if u_check is not None:
        params = {"u_check": u_check, "n": n, "d_max": d_max}
        with reporting():
            report = engine.u_nontrivial_bound_check(u_check, n, d_max)
        emit(ctx, "scan", params, report, _ucheck_lines(report))
        sys.exit(EXIT_OK if report.passed else EXIT_FAIL)

    if g is None:
        raise click.UsageError("--g is required unless --u-check is given")
    params = {"g": g, "n": n, "d_max": d_max}
    with reporting():
        report = engine.rt_scan(g, n, d_max)
    emit(ctx, "scan", params, report, _scan_lines(report, show_all))
    sys.exit(EXIT_OK if report.passed else EXIT_FAIL)
