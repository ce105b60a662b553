"""
Fans of rational polyhedral cones.

Only maximal cones are stored; faces are produced on demand by the Cone
methods. A lifted fan may carry the linear projection onto its base
lattice and the (g'', n) layout of its ambient coordinates.
"""

from __future__ import annotations

import itertools
import logging
from typing import Any, Sequence

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from kugacert.cones import Cone
from kugacert.errors import InvalidInputError
from kugacert.linalg import IntVector, dot

logger = logging.getLogger(__name__)


class CheckResult(BaseModel):
    """Outcome of one fan-level condition, with offending items listed."""

    model_config = ConfigDict(frozen=True)

    name: str
    passed: bool
    offending: list[Any] = Field(default_factory=list)
    details: dict[str, Any] = Field(default_factory=dict)


class Fan(BaseModel):
    model_config = ConfigDict(frozen=True)

    ambient_rank: int
    cones: tuple[Cone, ...]
    projection: tuple[IntVector, ...] | None = None
    layout: tuple[int, int] | None = None
    window: int | None = None

    @field_validator("projection", mode="before")
    @classmethod
    def validate_projection(cls, v):
        if v is None:
            return None
        rows = tuple(tuple(int(x) for x in row) for row in v)
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("projection rows must be non-empty and of equal length")
        return rows

    @model_validator(mode="after")
    def check_ranks(self) -> "Fan":
        for cone in self.cones:
            if cone.ambient_rank != self.ambient_rank:
                raise ValueError(
                    f"cone of ambient rank {cone.ambient_rank} in a fan of rank {self.ambient_rank}"
                )
        if self.projection is not None and len(self.projection[0]) != self.ambient_rank:
            raise ValueError("projection columns must match the ambient rank")
        return self

    @classmethod
    def from_generators(
        cls,
        ambient_rank: int,
        cones: Sequence[Sequence[Sequence[int]]],
        **kwargs,
    ) -> "Fan":
        return cls(
            ambient_rank=ambient_rank,
            cones=tuple(Cone(ambient_rank=ambient_rank, generators=gens) for gens in cones),
            **kwargs,
        )

    @property
    def base_rank(self) -> int | None:
        return len(self.projection) if self.projection is not None else None

    def rays(self) -> list[IntVector]:
        """Primitive generators of the one-dimensional cones."""
        found: set[IntVector] = set()
        for cone in self.cones:
            found.update(cone.extreme_rays())
        return sorted(found)

    def project(self, v: Sequence[int]) -> IntVector:
        if self.projection is None:
            raise InvalidInputError("fan carries no base projection")
        return tuple(dot(row, v) for row in self.projection)

    def contains_cone(self, generators: Sequence[Sequence[int]]) -> bool:
        """True iff cone(generators) is a face of some stored cone."""
        gens = {tuple(int(x) for x in v) for v in generators}
        return any(gens <= set(c.generators) and c.is_face(gens) for c in self.cones)

    def max_dimension(self) -> int:
        return max((c.dimension for c in self.cones), default=0)

    def canonical(self) -> "Fan":
        """Same fan with cones in canonical order."""
        return self.model_copy(update={"cones": tuple(sorted(self.cones, key=lambda c: c.generators))})


def check_fan_structure(fan: Fan) -> CheckResult:
    """
    Pairwise test of the fan axiom: shared generators span a face of both
    cones and the interior point of one cone never lies in another.
    """
    offending = []
    for a, b in itertools.combinations(fan.cones, 2):
        shared = set(a.generators) & set(b.generators)
        if not (a.is_face(shared) and b.is_face(shared)):
            offending.append([list(a.generators), list(b.generators)])
            continue
        if set(a.generators) <= set(b.generators) or set(b.generators) <= set(a.generators):
            continue
        if b.contains(a.interior_point()) or a.contains(b.interior_point()):
            offending.append([list(a.generators), list(b.generators)])
    logger.debug("fan structure: %d cones, %d bad pairs", len(fan.cones), len(offending))
    return CheckResult(
        name="fan_structure",
        passed=not offending,
        offending=[[[list(v) for v in gens] for gens in pair] for pair in offending],
        details={"cones": len(fan.cones)},
    )
