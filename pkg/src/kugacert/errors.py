"""
Exception hierarchy for kugacert.

Every library failure is a KugaError. Commands catch it, print
``Error: <message>`` on stderr and exit with ``exit_code``.
"""

from __future__ import annotations


# ---------------------------------------------------------------------------
# Exit codes
# ---------------------------------------------------------------------------

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_UNSUPPORTED = 3


class KugaError(ValueError):
    """Base class for all kugacert errors."""

    exit_code: int = EXIT_FAIL


class InvalidInputError(KugaError):
    """Malformed or out-of-contract input (wrong shape, not PSD, ...)."""

    exit_code = EXIT_USAGE


class NotTorsionError(KugaError):
    """A matrix expected to have finite order does not."""


class DegenerateInputError(KugaError):
    """A numerical computation hit a (near) singular matrix."""


class UnsupportedRankError(KugaError):
    """Perfect cone data requested for g'' outside {1, 2}."""

    exit_code = EXIT_UNSUPPORTED


class UnsupportedDimensionError(KugaError):
    """Smooth refinement requested for a non-smooth cone of dimension > 3."""

    exit_code = EXIT_UNSUPPORTED


class EmptyFanError(KugaError):
    """The window left no cone strictly inside it."""

    exit_code = EXIT_USAGE


class NotEffectiveError(KugaError):
    """A slope was requested for a class with a non-positive coefficient."""


class OutOfRangeError(KugaError):
    """A table or class formula was requested outside its range."""

    exit_code = EXIT_UNSUPPORTED


class NotACuspFormError(KugaError):
    """A Fourier support has vanishing order zero."""


class UndecidableError(KugaError):
    """The slope rule chain cannot decide the Kodaira dimension."""

    exit_code = EXIT_UNSUPPORTED
