"""
kugacert CLI - root Click group.

Entry point: kugacert.cli:cli (registered in pyproject.toml).
"""

from __future__ import annotations

import logging

import click

from kugacert import __version__
from kugacert.commands.certify import certify_cmd
from kugacert.commands.fan import fan
from kugacert.commands.kodaira import kodaira
from kugacert.commands.scan import scan
from kugacert.commands.slope import slope
from kugacert.commands.verify import verify
from kugacert.numeric import DEFAULT_TOL


@click.group(invoke_without_command=True)
@click.version_option(version=__version__, prog_name="kugacert")
@click.option("--json", "as_json", is_flag=True, default=False, help="Emit a JSON envelope instead of text.")
@click.option("--seed", type=int, default=0, show_default=True, help="Seed for randomized verifiers.")
@click.option("--tol", type=float, default=DEFAULT_TOL, show_default=True, help="Tolerance for floating verifiers.")
@click.option("-v", "--verbose", is_flag=True, default=False, help="Log debug output to stderr.")
@click.pass_context
def cli(ctx: click.Context, as_json: bool, seed: int, tol: float, verbose: bool) -> None:
    """kugacert - canonical-singularity certificates and Kodaira dimensions of Kuga varieties."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    ctx.ensure_object(dict)
    ctx.obj["json"] = as_json
    ctx.obj["seed"] = seed
    ctx.obj["tol"] = tol
    if ctx.invoked_subcommand is None:
        click.echo(f"kugacert v{__version__}\n")
        click.echo(ctx.get_help())


cli.add_command(kodaira)
cli.add_command(certify_cmd, name="certify")
cli.add_command(fan)
cli.add_command(verify)
cli.add_command(slope)
cli.add_command(scan)
