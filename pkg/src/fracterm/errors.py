"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: parse errors -> 2, safety errors -> 3,
everything else derived from :class:`DomainError` -> 4.
"""

from __future__ import annotations


class FractermError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(FractermError):
    """Malformed source text or tree encoding."""

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at column {position})"
        super().__init__(message)
        self.position = position


class DomainError(FractermError):
    """An argument is outside an operation's domain."""


class PositionError(DomainError):
    """A path does not address a subterm of the given term."""


class EvalError(DomainError):
    """Evaluation failed: unbound variable or open term."""


class MatchError(DomainError):
    """A rewrite rule instance does not match at the given position."""


class SafetyError(FractermError):
    """A term contains a fraction whose denominator denotes zero.

    Carries the offending subterm and its position so callers can report
    exactly which fraction blocks division-safe calculation.
    """

    def __init__(self, message: str, term=None, position=None):
        super().__init__(message)
        self.term = term
        self.position = position
