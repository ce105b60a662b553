"""
`kugacert fan` command group: build, check and refine lifted fans.

Fans are read from and written to .json / .yaml / .yml documents. A
malformed document exits 2; a failed condition exits 1.
"""

from __future__ import annotations

import sys

import click

from kugacert import serialise
from kugacert.conditions import check_conditions, is_equidim_codim1, toric_canonical
from kugacert.errors import EXIT_FAIL, EXIT_OK, InvalidInputError
from kugacert.fans import CheckResult, Fan, check_fan_structure
from kugacert.lifting import DEFAULT_FAN_WINDOW, base_fan, base_projection, lifted_fan, lifted_rank
from kugacert.output import emit, options, reporting
from kugacert.refine import refine_to_smooth


def _check_lines(checks: list[CheckResult]) -> list[str]:
    lines = []
    for check in checks:
        if check.passed:
            lines.append(f"{check.name}: ok")
            continue
        lines.append(f"{check.name}: FAIL")
        lines += [f"  - {item}" for item in check.offending]
    return lines


def _load_or_build(path: str | None, g_dd: int | None, n: int | None, window: int) -> Fan:
    """Read --in, filling a missing layout or projection from --gdd/--n, or build the lifted fan."""
    if path is None:
        if g_dd is None or n is None:
            raise click.UsageError("give --in FILE or both --gdd and --n")
        return lifted_fan(g_dd, n, window)
    fan = serialise.read_fan(path)
    if fan.layout is None and g_dd is not None and n is not None:
        if lifted_rank(g_dd, n) != fan.ambient_rank:
            raise InvalidInputError(f"--gdd {g_dd} --n {n} does not match ambient_rank {fan.ambient_rank}")
        fan = fan.model_copy(update={"layout": (g_dd, n)})
    if fan.projection is None and fan.layout is not None:
        fan = fan.model_copy(update={"projection": base_projection(*fan.layout)})
    return fan


def _base_for(fan: Fan, window: int) -> Fan:
    if fan.layout is None:
        raise InvalidInputError("fan has no [g'', n] layout; pass --gdd and --n")
    return base_fan(fan.layout[0], fan.window if fan.window is not None else window)


def _fan_params(path, g_dd, n, window) -> dict:
    return {"in": path, "gdd": g_dd, "n": n, "window": window}


@click.group("fan")
def fan() -> None:
    """Build, check and refine lifted perfect-cone fans."""


# ---------------------------------------------------------------------------
# fan build
# ---------------------------------------------------------------------------

@fan.command("build")
@click.option("--gdd", "g_dd", type=int, required=True, help="Rank g'' of the base (1 or 2).")
@click.option("--n", "n", type=int, required=True, help="Fibre power n >= 1.")
@click.option("--window", type=int, default=DEFAULT_FAN_WINDOW, show_default=True, help="Coefficient window.")
@click.option("--out", "out", type=click.Path(dir_okay=False), default=None, help="Write the fan document here.")
@click.pass_context
def build(ctx: click.Context, g_dd: int, n: int, window: int, out: str | None) -> None:
    """Emit the lifted fan for (g'', n) inside the window."""
    params = {"gdd": g_dd, "n": n, "window": window}
    with reporting():
        tilde = lifted_fan(g_dd, n, window)
    document = serialise.fan_to_document(tilde)
    if out is None and not options(ctx)["json"]:
        # stdout holds the fan document alone
        click.echo(serialise.header("fan build", params), err=True)
        click.echo(serialise.dumps(document))
        return
    if out is not None:
        serialise.write_document(out, document)
    lines = [f"{len(tilde.cones)} cones, {len(tilde.rays())} rays written to '{out}'"]
    emit(ctx, "fan build", params, document, lines)


# ---------------------------------------------------------------------------
# fan check
# ---------------------------------------------------------------------------

@fan.command("check")
@click.option("--in", "path", type=str, default=None, help="Fan document (.json, .yaml, .yml).")
@click.option("--gdd", "g_dd", type=int, default=None, help="Rank g'' (builds the fan without --in).")
@click.option("--n", "n", type=int, default=None, help="Fibre power n.")
@click.option("--window", type=int, default=DEFAULT_FAN_WINDOW, show_default=True, help="Coefficient window.")
@click.option("--structure", is_flag=True, default=False, help="Also check the pairwise fan axiom.")
@click.pass_context
def check(ctx: click.Context, path: str | None, g_dd: int | None, n: int | None, window: int, structure: bool) -> None:
    """Run the fan conditions on a lifted fan."""
    params = {**_fan_params(path, g_dd, n, window), "structure": structure}
    with reporting():
        tilde = _load_or_build(path, g_dd, n, window)
        checks = check_conditions(tilde, _base_for(tilde, window))
        if structure:
            checks.append(check_fan_structure(tilde))
    passed = all(c.passed for c in checks)
    lines = [f"{len(tilde.cones)} cones in rank {tilde.ambient_rank}"] + _check_lines(checks)
    lines.append("PASS" if passed else "FAIL")
    emit(ctx, "fan check", params, {"passed": passed, "checks": checks}, lines)
    sys.exit(EXIT_OK if passed else EXIT_FAIL)


# ---------------------------------------------------------------------------
# fan refine
# ---------------------------------------------------------------------------

@fan.command("refine")
@click.option("--in", "path", type=str, default=None, help="Fan document (.json, .yaml, .yml).")
@click.option("--gdd", "g_dd", type=int, default=None, help="Rank g'' (builds the fan without --in).")
@click.option("--n", "n", type=int, default=None, help="Fibre power n.")
@click.option("--window", type=int, default=DEFAULT_FAN_WINDOW, show_default=True, help="Coefficient window.")
@click.option("--out", "out", type=click.Path(dir_okay=False), default=None, help="Write the refined fan here.")
@click.pass_context
def refine(ctx: click.Context, path: str | None, g_dd: int | None, n: int | None, window: int, out: str | None) -> None:
    """
    Refine to a smooth fan, then re-run the codimension-one check.

    The refined fan may legitimately fail that check: new rays can project
    into the interior of base cones.
    """
    params = {**_fan_params(path, g_dd, n, window), "out": out}
    with reporting():
        tilde = _load_or_build(path, g_dd, n, window)
        smooth = refine_to_smooth(tilde)
        checks = [toric_canonical(smooth)]
        if smooth.projection is not None and smooth.layout is not None:
            checks.insert(0, is_equidim_codim1(smooth, _base_for(smooth, window)))
    added = sorted(set(smooth.rays()) - set(tilde.rays()))
    document = serialise.fan_to_document(smooth)
    if out is not None:
        serialise.write_document(out, document)
    lines = [
        f"{len(tilde.cones)} cones -> {len(smooth.cones)} smooth cones, {len(added)} new rays",
        *[f"  + {list(r)}" for r in added],
        *_check_lines(checks),
    ]
    if out is not None:
        lines.append(f"refined fan written to '{out}'")
    result = {"added_rays": added, "checks": checks, "fan": document}
    emit(ctx, "fan refine", params, result, lines)
