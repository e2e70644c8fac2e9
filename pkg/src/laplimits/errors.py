"""
Exception hierarchy for laplimits.

Invalid input raises ``ValueError`` subclasses, numeric hazards raise ``ArithmeticError``
subclasses; the command-line runner maps each family to a stable exit code.
"""

from typing import Any, Optional, Sequence


class LaplimitsError(Exception):
    """Base class for every error raised by laplimits."""


class TreeSyntaxError(LaplimitsError, ValueError):
    """A tree or sequence literal does not match the literal grammar."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class DomainError(LaplimitsError, ValueError):
    """An argument lies outside the domain where the requested quantity is defined."""


class GuardTripped(LaplimitsError, ArithmeticError):
    """A diagonalization value fell inside the numeric zero guard."""

    def __init__(self, index: int, value: Any):
        super().__init__(f"|S_{index}| is below the numeric guard")
        self.index = index  # 1-based position along the main path
        self.value = value


class NotShearerSequence(DomainError):
    """Spectral radii along a sequence specification failed to increase."""

    def __init__(self, index: int, previous: Any, current: Any):
        super().__init__(
            f"radius of G_{index} does not exceed the radius of G_{index - 1}; "
            "the specification is not a generalized Shearer sequence"
        )
        self.index = index
        self.previous = previous
        self.current = current


class NotDominated(DomainError):
    """A sequence specification is not dominated by the target at the requested horizon."""

    def __init__(self, index: int, reason: str):
        super().__init__(f"domination fails at j={index}: {reason}")
        self.index = index
        self.reason = reason


class OracleSizeExceeded(DomainError):
    """The exact characteristic-polynomial oracle was asked for a tree that is too large."""


class LimitInconsistency(LaplimitsError):
    """No exact root agrees with the numeric limit estimate."""

    def __init__(self, message: str, estimate: Any, candidates: Optional[Sequence[Any]] = None):
        super().__init__(message)
        self.estimate = estimate
        self.candidates = list(candidates or [])


class PrecisionExhausted(LaplimitsError, ArithmeticError):
    """Precision escalation reached its cap; ``partial`` holds the last computed result."""

    def __init__(self, message: str, partial: Any = None):
        super().__init__(message)
        self.partial = partial
