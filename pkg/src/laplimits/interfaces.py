"""
Protocols for laplimits.

The command-line runner talks to its printer, result cache and progress indicator through these
contracts, so tests can swap in mocks. Numeric code is written against ``NumericBackend`` so the
same recurrence runs on binary floats, big floats or exact rationals.
"""

from typing import Any, Optional, Protocol

from .models import CachedResult, Real


class PrinterInterface(Protocol):
    """Sink for messages filtered by verbosity (0 results, 1 summaries, 2 diagnostics)."""

    verbosity: int

    def print(self, message: str, verbosity: int = 1) -> None:
        """
        Write message when the printer's verbosity is at least ``verbosity``.

        Args:
            message: Text including its trailing newline
            verbosity: Lowest printer verbosity that shows the message
        """
        ...

    def set_verbosity(self, verbosity: int) -> None:
        ...


class CacheInterface(Protocol):
    """Store of command result documents."""

    def set(self, key: str, value: CachedResult) -> None:
        """
        Store a result document.

        Args:
            key: md5 hex digest of the run configuration
            value: The document with its timestamp
        """
        ...

    def get(self, key: str) -> Optional[CachedResult]:
        """
        Look up a result document.

        Args:
            key: md5 hex digest of the run configuration

        Returns:
            The stored document, or None on a miss
        """
        ...


class ProgressIndicatorInterface(Protocol):
    """Shown while a long command (limit, certify, sample-f1, nasty-interval) computes."""

    def start(self) -> None:
        ...

    def stop(self) -> None:
        ...


class TimerInterface(Protocol):
    def elapsed(self) -> float:
        """Seconds measured so far."""
        ...


class NumericBackend(Protocol):
    """
    Interface for the arithmetic that diagonalization values are computed in.
    """

    name: str
    precision: int  # mantissa bits; 0 for exact arithmetic

    def num(self, value: Any) -> Real:
        """
        Convert an int, float, Fraction, string or sympy number into a backend real.

        Args:
            value: The value to convert

        Returns:
            The backend representation of value
        """
        ...

    def sqrt(self, value: Real) -> Real:
        """
        Square root of a non-negative backend real.
        """
        ...

    def cbrt(self, value: Real) -> Real:
        """
        Real cube root, defined for negative arguments too.
        """
        ...

    def floor(self, value: Real) -> int:
        """
        Largest integer not above value.
        """
        ...

    def guard(self) -> Real:
        """
        Threshold below which a computed value is treated as numerically zero.

        Returns:
            The zero guard for this backend
        """
        ...

    def tolerance(self) -> Real:
        """
        Default bisection tolerance for this backend.
        """
        ...

    def epsilon(self) -> Real:
        """
        Unit roundoff.
        """
        ...

    def format(self, value: Real, digits: Optional[int] = None) -> str:
        """
        Decimal string carrying the backend's full precision unless digits is given.
        """
        ...

    def doubled(self) -> "NumericBackend":
        """
        A backend with twice the precision, used to settle ties at floors.
        """
        ...
