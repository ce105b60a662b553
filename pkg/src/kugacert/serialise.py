"""
Serialisation / deserialisation logic for kugacert.

Converts between Fan / FourierSupport objects and their JSON or YAML
documents, and renders results into the JSON output envelope.
Rationals always render as "p/q" and integer matrices as arrays of
decimal strings; readers accept either ints or decimal strings.
"""

from __future__ import annotations

import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Any

import numpy as np
import yaml
from pydantic import BaseModel, ValidationError
from sympy import Rational

from kugacert import __version__
from kugacert.errors import InvalidInputError
from kugacert.fans import Fan
from kugacert.linalg import render_rational
from kugacert.models import FanDocument, SupportDocument
from kugacert.schema import validate_document
from kugacert.slopes import FourierSupport

logger = logging.getLogger(__name__)

YAML_SUFFIXES = frozenset({".yaml", ".yml"})
JSON_SUFFIXES = frozenset({".json"})


# ---------------------------------------------------------------------------
# Generic rendering
# ---------------------------------------------------------------------------

def jsonable(obj: Any) -> Any:
    """Recursively convert results into plain JSON values."""
    if isinstance(obj, BaseModel):
        return jsonable(obj.model_dump())
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, (Fraction, Rational)):
        return render_rational(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (set, frozenset)):
        return sorted(jsonable(v) for v in obj)
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def envelope(command: str, params: dict, result: Any) -> dict:
    """The top-level JSON document every command emits with --json."""
    return {
        "version": __version__,
        "command": command,
        "params": jsonable(params),
        "result": jsonable(result),
    }


def dumps(doc: dict) -> str:
    """Byte-stable JSON: sorted keys, two-space indent."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False)


def header(command: str, params: dict) -> str:
    """Text-mode header line with the full parameter echo."""
    echo = " ".join(f"{k}={jsonable(v)}" for k, v in sorted(params.items()))
    return f"# kugacert {__version__} {command} {echo}".rstrip()


# ---------------------------------------------------------------------------
# Reading documents
# ---------------------------------------------------------------------------

def load_document(path: str | Path) -> dict:
    """
    Parse a .json, .yaml or .yml file into a dict.

    YAML is always read with yaml.safe_load.
    """
    in_path = Path(path)
    if not in_path.is_file():
        raise InvalidInputError(f"no such file: '{in_path}'")
    suffix = in_path.suffix.lower()
    text = in_path.read_text(encoding="utf-8")
    if suffix in YAML_SUFFIXES:
        try:
            doc = yaml.safe_load(text)
        except yaml.YAMLError as exc:
            raise InvalidInputError(f"cannot parse YAML in '{in_path}': {exc}") from exc
    elif suffix in JSON_SUFFIXES:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"cannot parse JSON in '{in_path}': {exc}") from exc
    else:
        raise InvalidInputError(
            f"unrecognised file extension '{suffix}'. Supported formats: .json, .yaml, .yml"
        )
    if not isinstance(doc, dict):
        raise InvalidInputError(f"'{in_path}' does not contain a JSON object")
    return doc


def _check_schema(doc: dict, name: str, source: str) -> None:
    errors = validate_document(doc, name)
    if errors:
        raise InvalidInputError(f"{source} failed {name} schema validation: " + "; ".join(errors))


def _validation_message(exc: ValidationError) -> str:
    return "; ".join(err["msg"] for err in exc.errors())


def document_to_fan(doc: dict, source: str = "fan document") -> Fan:
    """Validate a fan document and build the Fan it describes."""
    _check_schema(doc, "fan", source)
    try:
        parsed = FanDocument.model_validate(doc)
        return Fan.from_generators(
            parsed.ambient_rank,
            parsed.cones,
            projection=parsed.projection,
            layout=tuple(parsed.layout) if parsed.layout is not None else None,
            window=parsed.window,
        )
    except ValidationError as exc:
        raise InvalidInputError(f"{source}: {_validation_message(exc)}") from exc


def read_fan(path: str | Path) -> Fan:
    fan = document_to_fan(load_document(path), source=f"'{path}'")
    logger.debug("read fan from %s: %d cones in rank %d", path, len(fan.cones), fan.ambient_rank)
    return fan


def read_support(path: str | Path) -> FourierSupport:
    """Read a Fourier support file into a validated FourierSupport."""
    doc = load_document(path)
    _check_schema(doc, "support", f"'{path}'")
    try:
        parsed = SupportDocument.model_validate(doc)
        return FourierSupport(g=parsed.g, matrices=parsed.matrices)
    except ValidationError as exc:
        raise InvalidInputError(f"'{path}': {_validation_message(exc)}") from exc


# ---------------------------------------------------------------------------
# Writing documents
# ---------------------------------------------------------------------------

def _decimal_rows(rows) -> list[list[str]]:
    return [[str(int(x)) for x in row] for row in rows]


def fan_to_document(fan: Fan) -> dict:
    """Fan document with cones in canonical order."""
    doc: dict = {
        "ambient_rank": fan.ambient_rank,
        "cones": [_decimal_rows(cone.generators) for cone in fan.canonical().cones],
    }
    if fan.projection is not None:
        doc["projection"] = _decimal_rows(fan.projection)
    if fan.layout is not None:
        doc["layout"] = list(fan.layout)
    if fan.window is not None:
        doc["window"] = fan.window
    return doc


def certificate_document(certificate, params: dict) -> dict:
    """The certificate file: the Certificate fields plus version and params."""
    data = jsonable(certificate)
    data["pass"] = data.pop("passed")
    for fan_slice, model in zip(data["fan_checks"], certificate.fan_checks):
        fan_slice["passed"] = model.passed
    data["version"] = __version__
    data["params"] = jsonable(params)
    return data


def write_document(path: str | Path, doc: dict) -> Path:
    """Write a document as JSON, or YAML for .yaml / .yml paths."""
    out_path = Path(path)
    if out_path.suffix.lower() in YAML_SUFFIXES:
        content = yaml.safe_dump(doc, default_flow_style=False, sort_keys=True, allow_unicode=True)
    else:
        content = dumps(doc) + "\n"
    out_path.write_text(content, encoding="utf-8")
    return out_path
