"""
Shared plumbing for the command modules: global options from the click
context, the output header / envelope, and error-to-exit-code mapping.
"""

from __future__ import annotations

import sys
from contextlib import contextmanager
from typing import Any, Iterable, Iterator

import click
from pydantic import ValidationError

from kugacert.errors import EXIT_USAGE, KugaError
from kugacert.numeric import DEFAULT_TOL
from kugacert.serialise import dumps, envelope, header


def options(ctx: click.Context) -> dict:
    """Global options stored by the root group (defaults when run standalone)."""
    obj = ctx.find_root().obj or {}
    return {
        "json": obj.get("json", False),
        "seed": obj.get("seed", 0),
        "tol": obj.get("tol", DEFAULT_TOL),
    }


def emit(ctx: click.Context, command: str, params: dict, result: Any, lines: Iterable[str]) -> None:
    """Print the JSON envelope with --json, otherwise the header and text lines."""
    if options(ctx)["json"]:
        click.echo(dumps(envelope(command, params, result)))
        return
    click.echo(header(command, params))
    for line in lines:
        click.echo(line)


@contextmanager
def reporting() -> Iterator[None]:
    """Turn library errors into `Error: ...` on stderr and the matching exit code."""
    try:
        yield
    except KugaError as exc:
        click.echo(f"Error: {exc}", err=True)
        sys.exit(exc.exit_code)
    except ValidationError as exc:
        for err in exc.errors():
            click.echo(f"Error: {err['msg']}", err=True)
        sys.exit(EXIT_USAGE)
