"""Exception types shared across the toolkit.

Domain errors mean the caller asked for something outside an operation's
contract (a bad index, a rational input pushed past its resolution).
Verification errors mean an internal machine check failed: a certified
identity did not hold, which should never happen and always indicates a bug
or a false premise worth investigating.
"""

from __future__ import annotations


class DomainError(ValueError):
    """Input outside the documented domain of an operation."""


class CoincidentPointsError(DomainError):
    """A rational angle was pushed far enough that multiples collide.

    For a rational p/q the fractional parts of n*(p/q) repeat once n
    reaches q, so gap structure is only defined for n < q.
    """


class SequenceLengthError(DomainError):
    """A sequence was too short for the requested scan."""

    def __init__(self, required: int, available: int):
        self.required = required
        self.available = available
        super().__init__(
            f"sequence too short: need at least {required} bits, have {available}"
        )


class VerificationError(RuntimeError):
    """An internal certified check failed."""
