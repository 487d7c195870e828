"""Shared exception types."""


class DomainError(ValueError):
    """Evaluation was requested outside a function's domain of definition."""


class InvariantViolation(RuntimeError):
    """An internal consistency guarantee failed, e.g. a cone oracle that does
    not bracket its own critical exponent."""


class ExtrapolationError(RuntimeError):
    """A numerical limit did not converge.  Carries the tail of the sequence
    so the caller can inspect what went wrong."""

    def __init__(self, message: str, tail=None):
        super().__init__(message)
        self.tail = [] if tail is None else [float(t) for t in tail]


class TheoremViolation(RuntimeError):
    """Input data failed a check that exact constructed solutions satisfy.
    Signals corrupted or inconsistent input rather than a numerical issue."""
