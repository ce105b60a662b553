"""
`kugacert certify` command.

Runs the interior table, the boundary age scan and the fan conditions for
the requested g'' slices. Exits 0 on pass and 1 on fail, naming the first
violation. With --out the certificate is validated against the bundled
schema before it is written.
"""

from __future__ import annotations

import sys

import click

from kugacert import certify as engine
from kugacert import schema, serialise
from kugacert.errors import EXIT_FAIL, EXIT_OK
from kugacert.lifting import DEFAULT_FAN_WINDOW
from kugacert.output import emit, reporting
from kugacert.scan import DEFAULT_D_MAX


def _lines(cert: engine.Certificate) -> list[str]:
    scan = cert.scan
    lines = [f"interior: {cert.interior.verdict}"]
    lines.append(
        f"scan: {scan.profiles_scanned} profiles (d <= {scan.d_max}), "
        f"{len(scan.violations)} violations, {len(scan.quasireflections)} quasireflections"
    )
    if scan.witness is not None:
        w = scan.witness
        lines.append(
            f"  witness: {w.profile} order {w.order} "
            f"certified age {w.certified_age} (exact {w.min_age})"
        )
    for s in cert.fan_checks:
        lines.append(f"fan g''={s.g_dd} n={s.n} window={s.window}: {s.cones} cones")
        for check in s.checks:
            status = "ok" if check.passed else f"FAIL ({len(check.offending)} offending)"
            lines.append(f"  {check.name}: {status}")
    lines.append("PASS" if cert.passed else "FAIL")
    return lines


@click.command("certify")
@click.option("--g", "g", type=int, required=True, help="Genus g >= 2.")
@click.option("--n", "n", type=int, required=True, help="Fibre power n >= 1.")
@click.option(
    "--fan-window", type=int, default=DEFAULT_FAN_WINDOW, show_default=True,
    help="Coefficient window for the lifted fan slices.",
)
@click.option("--gdd", "gdd", type=int, multiple=True, help="Fan slice g'' (repeatable; default all g'' <= 2).")
@click.option("--d-max", type=int, default=DEFAULT_D_MAX, show_default=True, help="Largest cyclotomic order scanned.")
@click.option("--out", "out", type=click.Path(dir_okay=False), default=None, help="Write the certificate JSON here.")
@click.pass_context
def certify_cmd(
    ctx: click.Context,
    g: int,
    n: int,
    fan_window: int,
    gdd: tuple[int, ...],
    d_max: int,
    out: str | None,
) -> None:
    """Certify canonical singularities of the compactified X_g^n."""
    params = {"g": g, "n": n, "fan_window": fan_window, "gdd": list(gdd), "d_max": d_max}
    with reporting():
        cert = engine.certify(g, n, fan_window=fan_window, gdd_slices=list(gdd) or None, d_max=d_max)
    document = serialise.certificate_document(cert, params)

    if out is not None:
        # -- Schema validation (safety net) --
        errors = schema.validate_document(document, "certificate")
        if errors:
            click.echo("Internal error: certificate failed schema validation.", err=True)
            for e in errors:
                click.echo(f"  - {e}", err=True)
            sys.exit(EXIT_FAIL)
        serialise.write_document(out, document)

    lines = _lines(cert)
    if out is not None:
        lines.append(f"certificate written to '{out}'")
    emit(ctx, "certify", params, document, lines)
    sys.exit(EXIT_OK if cert.passed else EXIT_FAIL)
