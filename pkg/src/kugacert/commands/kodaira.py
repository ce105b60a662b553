"""
`kugacert kodaira` command.

Prints the Kodaira dimension of the n-fold fibre power over A_g with its
justification chain, or the verdict table for g <= G and 1 <= n <= N.
"""

from __future__ import annotations

import click

from kugacert import kodaira as engine
from kugacert.output import emit, reporting


def _verdict_lines(verdict: engine.KodairaVerdict) -> list[str]:
    lines = [verdict.render()]
    lines += [f"  - {reason}" for reason in verdict.justification]
    if verdict.informational:
        lines.append("  (n = 0: informational, describes A_g itself)")
    return lines


@click.command("kodaira")
@click.option("--g", "g", type=int, default=None, help="Genus g >= 1.")
@click.option("--n", "n", type=int, default=None, help="Fibre power n >= 0.")
@click.option(
    "--table", "table", type=int, nargs=2, default=None, metavar="G_MAX N_MAX",
    help="Print the verdict table for 1 <= g <= G_MAX and 1 <= n <= N_MAX.",
)
@click.pass_context
def kodaira(ctx: click.Context, g: int | None, n: int | None, table: tuple[int, int] | None) -> None:
    """Kodaira dimension of the fibre power X_g^n."""
    if table is not None:
        if g is not None or n is not None:
            raise click.UsageError("use either --g/--n or --table, not both")
        g_max, n_max = table
        with reporting():
            result = engine.kdim_table(g_max, n_max)
        emit(ctx, "kodaira", {"table": [g_max, n_max]}, result, result.render().splitlines())
        return

    if g is None or n is None:
        raise click.UsageError("--g and --n are both required unless --table is given")
    with reporting():
        verdict = engine.kodaira_dimension(g, n)
    emit(ctx, "kodaira", {"g": g, "n": n}, verdict, _verdict_lines(verdict))
