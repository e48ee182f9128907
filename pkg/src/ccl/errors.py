"""Exception hierarchy shared by every module in the package.

All toolkit errors derive from :class:`CclError` so callers (CLI, HTTP
service) can catch one base class and map it to a diagnostic. Each class
carries an optional ``field`` attribute naming the offending input field,
used by the service to emit machine-readable error payloads.
"""

from __future__ import annotations


class CclError(Exception):
    """Base class for all toolkit errors."""

    def __init__(self, message: str, *, field: str | None = None):
        super().__init__(message)
        self.field = field


class InvalidConstellation(CclError):
    """A constellation violates a structural invariant (shape, priors, ...)."""


class DuplicatePoint(CclError):
    """Two constellation points coincide within the duplicate tolerance."""


class DimensionMismatch(CclError, ValueError):
    """A vector's dimension disagrees with the constellation or model."""


class IndexOutOfRange(CclError, IndexError):
    """A symbol index is outside [0, M)."""


class NotEnoughPoints(CclError):
    """The operation needs at least two constellation points."""


class NonpositiveInput(CclError, ValueError):
    """A strictly positive scalar argument was zero or negative."""


class NotUnitVector(CclError, ValueError):
    """A direction argument is not normalized to unit length."""


class InvalidSampleCount(CclError, ValueError):
    """A Monte Carlo sample count is below the operation's minimum."""


class EmptyGrid(CclError, ValueError):
    """A gamma grid is empty or contains nonpositive values."""


class NonpositivePower(CclError, ValueError):
    """A power budget must be strictly positive."""


class LambdaOutOfRange(CclError, ValueError):
    """The trade-off weight must lie in [0, 1]."""


class EmptyCandidateList(CclError, ValueError):
    """The design screen needs at least one candidate."""


class UnknownName(CclError, KeyError):
    """A catalog lookup used a name that is not registered."""


class ParseError(CclError, ValueError):
    """A constellation file or payload could not be parsed.

    ``field`` names the bad field when known; ``line``/``column`` locate
    syntax errors in text input.
    """

    def __init__(
        self,
        message: str,
        *,
        field: str | None = None,
        line: int | None = None,
        column: int | None = None,
    ):
        super().__init__(message, field=field)
        self.line = line
        self.column = column
