"""
Numeric backends for laplimits.

Every recurrence in the package is written once against ``NumericBackend``; the backend decides
whether it runs on binary floats, mpmath big floats or exact rationals.
"""

import math
import sys
from fractions import Fraction
from typing import Any, Optional

import mpmath
import sympy

from ..errors import DomainError
from ..interfaces import NumericBackend
from ..models import Real

# Backend settings
_KIND = "f64"
_PRECISION = 256  # mantissa bits of the big-float backend
_PRECISION_CAP = 8192
_FLOAT_GUARD = 2.0**-40
_FLOAT_TOLERANCE = 1e-12
_EXACT_TOLERANCE = Fraction(1, 10**12)
_KINDS = ("f64", "big", "exact")


def is_big(value: Any) -> bool:
    """True for mpmath (and sympy) binary floats."""
    return hasattr(value, "_mpf_")


class FloatBackend(NumericBackend):
    """IEEE double precision."""

    name = "f64"
    precision = 53

    def num(self, value: Any) -> float:
        if isinstance(value, sympy.Basic):
            return float(sympy.N(value, 20))
        return float(value)

    def sqrt(self, value: Real) -> float:
        if value < 0:
            raise DomainError(f"square root of negative value {value}")
        return math.sqrt(value)

    def cbrt(self, value: Real) -> float:
        return math.copysign(abs(value) ** (1.0 / 3.0), value)

    def floor(self, value: Real) -> int:
        return math.floor(value)

    def guard(self) -> float:
        return _FLOAT_GUARD

    def tolerance(self) -> float:
        return _FLOAT_TOLERANCE

    def epsilon(self) -> float:
        return sys.float_info.epsilon

    def format(self, value: Real, digits: Optional[int] = None) -> str:
        if digits is None:
            return repr(float(value))
        return f"{float(value):.{digits}g}"

    def doubled(self) -> NumericBackend:
        return BigFloatBackend(precision=2 * self.precision)


class BigFloatBackend(NumericBackend):
    """
    mpmath binary floats with a private context, so the precision of one backend never leaks
    into another.
    """

    name = "big"

    def __init__(self, precision: int = _PRECISION, cap: int = _PRECISION_CAP):
        if precision < 53:
            raise DomainError("big-float precision must be at least 53 bits")
        self.precision = min(precision, cap)
        self.cap = cap
        self.ctx = mpmath.MPContext()
        self.ctx.prec = self.precision

    def num(self, value: Any) -> Real:
        ctx = self.ctx
        if isinstance(value, Fraction):
            return ctx.mpf(value.numerator) / value.denominator
        if isinstance(value, sympy.Rational):
            return ctx.mpf(int(value.p)) / int(value.q)
        if isinstance(value, sympy.Basic):
            digits = int(self.precision * 0.30103) + 10
            return ctx.mpf(sympy.N(value, digits))
        return ctx.mpf(value)

    def sqrt(self, value: Real) -> Real:
        if value < 0:
            raise DomainError(f"square root of negative value {self.format(value, 12)}")
        return self.ctx.sqrt(value)

    def cbrt(self, value: Real) -> Real:
        # mpmath returns the principal complex root for negative arguments
        if value < 0:
            return -self.ctx.cbrt(-value)
        return self.ctx.cbrt(value)

    def floor(self, value: Real) -> int:
        return int(self.ctx.floor(value))

    def guard(self) -> Real:
        return self.ctx.ldexp(1, -(self.precision // 2))

    def tolerance(self) -> Real:
        return self.ctx.ldexp(1, -(self.precision - 16))

    def epsilon(self) -> Real:
        return self.ctx.eps

    def format(self, value: Real, digits: Optional[int] = None) -> str:
        return str(self.ctx.nstr(value, digits or self.ctx.dps))

    def doubled(self) -> NumericBackend:
        return BigFloatBackend(precision=min(2 * self.precision, self.cap), cap=self.cap)

    def __repr__(self) -> str:
        return f"BigFloatBackend(precision={self.precision})"


class ExactBackend(NumericBackend):
    """Rational arithmetic; only exact rational inputs are representable."""

    name = "exact"
    precision = 0

    def num(self, value: Any) -> Fraction:
        if isinstance(value, sympy.Basic):
            if not value.is_Rational:
                raise DomainError(f"{value} is not rational")
            return Fraction(int(value.p), int(value.q))
        if is_big(value):
            sign, mantissa, exponent, _ = value._mpf_
            if not mantissa and exponent:
                raise DomainError("infinite or undefined values are not rational")
            return (-1 if sign else 1) * Fraction(int(mantissa)) * Fraction(2) ** int(exponent)
        return Fraction(value)

    def sqrt(self, value: Real) -> Fraction:
        value = Fraction(value)
        if value < 0:
            raise DomainError(f"square root of negative value {value}")
        top, bottom = math.isqrt(value.numerator), math.isqrt(value.denominator)
        if top * top != value.numerator or bottom * bottom != value.denominator:
            raise DomainError(f"square root of {value} is irrational")
        return Fraction(top, bottom)

    def cbrt(self, value: Real) -> Fraction:
        value = Fraction(value)
        sign = -1 if value < 0 else 1
        top = round(abs(value.numerator) ** (1.0 / 3.0))
        bottom = round(value.denominator ** (1.0 / 3.0))
        root = Fraction(sign * top, bottom)
        if root**3 != value:
            raise DomainError(f"cube root of {value} is irrational")
        return root

    def floor(self, value: Real) -> int:
        return math.floor(value)

    def guard(self) -> Fraction:
        return Fraction(0)

    def tolerance(self) -> Fraction:
        return _EXACT_TOLERANCE

    def epsilon(self) -> Fraction:
        return Fraction(0)

    def format(self, value: Real, digits: Optional[int] = None) -> str:
        if digits is None:
            return str(value)
        return f"{float(value):.{digits}g}"

    def doubled(self) -> NumericBackend:
        return self


class BackendConfig:
    """Configuration for the numeric backend."""

    def __init__(self) -> None:
        self.kind: str = _KIND
        self.precision: int = _PRECISION  # big-float mantissa bits
        self.cap: int = _PRECISION_CAP  # escalation stops here

    def configure(
        self,
        kind: Optional[str] = None,
        precision: Optional[int] = None,
        cap: Optional[int] = None,
    ) -> None:
        """Configure the backend settings."""
        if kind is not None:
            if kind not in _KINDS:
                raise ValueError(f"unknown backend {kind!r}; expected one of {', '.join(_KINDS)}")
            self.kind = kind
        if precision is not None:
            self.precision = precision
        if cap is not None:
            self.cap = cap


def make_backend(config: Optional[BackendConfig] = None) -> NumericBackend:
    """
    Build the backend a configuration describes.

    Args:
        config: Backend settings; the f64 default when omitted

    Returns:
        A NumericBackend
    """
    config = config or BackendConfig()
    if config.kind == "big":
        return BigFloatBackend(precision=config.precision, cap=config.cap)
    if config.kind == "exact":
        return ExactBackend()
    return FloatBackend()


def big(precision: int = _PRECISION) -> BigFloatBackend:
    """Shorthand for a big-float backend."""
    return BigFloatBackend(precision=precision)
