"""
Schema validation module for kugacert.

Loads the bundled fan, support and certificate schemas from
kugacert/schemas/ using importlib.resources and exposes
validate_document().

The $id URLs in the schemas are metadata only; Draft202012Validator does
not fetch them.
"""

from __future__ import annotations

import importlib.resources
import json
from functools import lru_cache
from typing import Literal

from jsonschema import Draft202012Validator

SchemaName = Literal["fan", "support", "certificate"]

SCHEMA_PACKAGE = "kugacert"
SCHEMA_DIRECTORY = "schemas"


def _load_schema(name: SchemaName) -> dict:
    """Load one bundled schema by short name."""
    resource = importlib.resources.files(SCHEMA_PACKAGE).joinpath(SCHEMA_DIRECTORY, f"{name}.schema.json")
    with resource.open("r", encoding="utf-8") as f:
        return json.load(f)


@lru_cache(maxsize=None)
def _validator(name: SchemaName) -> Draft202012Validator:
    return Draft202012Validator(_load_schema(name))


def validate_document(doc: dict, name: SchemaName) -> list[str]:
    """
    Validate a parsed document against the named schema.
    Returns a list of error messages, prefixed with the failing path.
    Empty list means valid.
    """
    errors = sorted(_validator(name).iter_errors(doc), key=lambda e: list(map(str, e.path)))
    messages = []
    for e in errors:
        where = "/".join(str(p) for p in e.path)
        messages.append(f"{where}: {e.message}" if where else e.message)
    return messages
