"""
`kugacert slope` command group: divisor classes, cusp-form slopes and the
table of minimal slopes. Values are exact rationals rendered "p/q".
"""

from __future__ import annotations

import click

from kugacert import serialise, slopes
from kugacert.linalg import render_rational
from kugacert.output import emit, reporting

CLASS_BUILDERS = {
    "ThetaNull": slopes.theta_null_class,
    "N0prime": slopes.n0_prime_class,
}


@click.group("slope")
def slope() -> None:
    """Slopes of effective divisors on the compactified A_g."""


@slope.command("class")
@click.option("--which", type=click.Choice(sorted(CLASS_BUILDERS)), required=True, help="Divisor family.")
@click.option("--g", "g", type=int, required=True, help="Genus.")
@click.pass_context
def class_cmd(ctx: click.Context, which: str, g: int) -> None:
    """Class a*lambda - b*delta of a divisor family and its slope a/b."""
    with reporting():
        divisor = CLASS_BUILDERS[which](g)
        value = slopes.slope(divisor)
    result = {"class": divisor.render(), "lambda": divisor.lambda_coeff, "delta": divisor.delta_coeff, "slope": value}
    emit(ctx, "slope class", {"which": which, "g": g}, result, [f"{divisor.render()}, slope {render_rational(value)}"])


@slope.command("form")
@click.option("--weight", type=int, required=True, help="Weight of the cusp form.")
@click.option("--support", "support_path", type=str, required=True, help="Fourier support document.")
@click.pass_context
def form(ctx: click.Context, weight: int, support_path: str) -> None:
    """Slope weight / vanishing order of a cusp form given by its Fourier support."""
    with reporting():
        support = serialise.read_support(support_path)
        order = slopes.vanishing_order(support)
        value = slopes.cusp_form_slope(weight, support)
    params = {"weight": weight, "support": support_path}
    result = {"g": support.g, "vanishing_order": order, "slope": value}
    lines = [f"vanishing order {render_rational(order)}", render_rational(value)]
    emit(ctx, "slope form", params, result, lines)


@slope.command("table")
@click.pass_context
def table(ctx: click.Context) -> None:
    """Known minimal slopes s_min(g) for 1 <= g <= 6."""
    with reporting():
        records = [slopes.s_min_record(g) for g in range(1, slopes.MAX_SLOPE_GENUS + 1)]
    emit(ctx, "slope table", {}, records, [r.render() for r in records])
