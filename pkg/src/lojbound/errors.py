"""Exception types shared across the package."""


class LojboundError(Exception):
    """Base class for all package errors."""


class ParseError(LojboundError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.message = message
        self.position = position


class ZeroFunctionError(LojboundError, ValueError):
    """An operation received (or parsing produced) the identically-zero function."""


class BoundaryDimensionError(LojboundError):
    """The Newton boundary has dimension below n-1."""


class NonIsolatedSingularityError(LojboundError):
    """Evidence that the origin is not an isolated critical point."""


class SizeCapError(LojboundError):
    """A Minkowski sum or cone enumeration outgrew its configured cap."""


class DegenerateError(LojboundError):
    """A non-degeneracy check produced a witness; carries the Verdict."""

    def __init__(self, message: str, verdict=None):
        super().__init__(message)
        self.verdict = verdict


class InconclusiveError(LojboundError):
    """A non-degeneracy check ran out of budget without a verdict."""

    def __init__(self, message: str, verdict=None):
        super().__init__(message)
        self.verdict = verdict


class IterationBoundError(LojboundError):
    """The modified-gradient-pair correction did not terminate within its bound."""
