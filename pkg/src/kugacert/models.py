"""
Pydantic models for kugacert input documents.

These models are the second validation layer for files read by the CLI:
JSON Schema checks the shape first, then a document model coerces the
entries (ints or decimal strings) and checks the cross-field rules the
schema cannot express.
"""

from __future__ import annotations

import re
from typing import Optional

from pydantic import BaseModel, field_validator, model_validator

# ---------------------------------------------------------------------------
# Constants
# ---------------------------------------------------------------------------

INTEGER_PATTERN = re.compile(r"^-?[0-9]+$")


def to_int(value) -> int:
    """Accept an int or a decimal string; reject bools, floats and anything else."""
    if isinstance(value, bool):
        raise ValueError("booleans are not integers")
    if isinstance(value, int):
        return value
    if isinstance(value, str) and INTEGER_PATTERN.match(value.strip()):
        return int(value.strip())
    raise ValueError(f"expected an integer or a decimal string, got {value!r}")


def _int_rows(rows) -> list[list[int]]:
    return [[to_int(x) for x in row] for row in rows]


# ---------------------------------------------------------------------------
# FanDocument
# ---------------------------------------------------------------------------

class FanDocument(BaseModel):
    """A fan file: maximal cones as lists of generators."""

    ambient_rank: int
    cones: list[list[list[int]]]
    projection: Optional[list[list[int]]] = None
    layout: Optional[list[int]] = None
    window: Optional[int] = None

    @field_validator("ambient_rank", "window", mode="before")
    @classmethod
    def coerce_scalar(cls, v):
        return None if v is None else to_int(v)

    @field_validator("cones", mode="before")
    @classmethod
    def coerce_cones(cls, v):
        return [_int_rows(cone) for cone in v]

    @field_validator("projection", mode="before")
    @classmethod
    def coerce_projection(cls, v):
        return None if v is None else _int_rows(v)

    @field_validator("layout", mode="before")
    @classmethod
    def coerce_layout(cls, v):
        if v is None:
            return None
        layout = [to_int(x) for x in v]
        if len(layout) != 2 or layout[0] < 1 or layout[1] < 0:
            raise ValueError("layout must be [g'', n] with g'' >= 1 and n >= 0")
        return layout

    @field_validator("ambient_rank")
    @classmethod
    def validate_rank(cls, v: int) -> int:
        if v < 1:
            raise ValueError("ambient_rank must be positive")
        return v

    @model_validator(mode="after")
    def check_lengths(self) -> "FanDocument":
        for cone in self.cones:
            if not cone:
                raise ValueError("every cone needs at least one generator")
            for gen in cone:
                if len(gen) != self.ambient_rank:
                    raise ValueError(f"generator {gen} does not have length {self.ambient_rank}")
        if self.layout is not None:
            g_dd, n = self.layout
            if g_dd * (g_dd + 1) // 2 + n * g_dd != self.ambient_rank:
                raise ValueError(f"layout {self.layout} does not match ambient_rank {self.ambient_rank}")
        return self


# ---------------------------------------------------------------------------
# SupportDocument
# ---------------------------------------------------------------------------

class SupportDocument(BaseModel):
    """Fourier support of a cusp form: g x g integer matrices."""

    g: int
    matrices: list[list[list[int]]]

    @field_validator("g", mode="before")
    @classmethod
    def coerce_g(cls, v):
        return to_int(v)

    @field_validator("matrices", mode="before")
    @classmethod
    def coerce_matrices(cls, v):
        return [_int_rows(m) for m in v]

    @model_validator(mode="after")
    def check_shapes(self) -> "SupportDocument":
        if self.g < 1:
            raise ValueError("g must be positive")
        for m in self.matrices:
            if len(m) != self.g or any(len(row) != self.g for row in m):
                raise ValueError(f"support matrices must be {self.g}x{self.g}")
        return self
