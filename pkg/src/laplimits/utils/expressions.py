"""
Constant expressions for targets such as ``(5+sqrt(33))/2``.

Expressions are kept symbolic (sympy, rational literals) so they can be re-evaluated whenever a
backend gains precision.
"""

import re
from typing import Any, Optional

import sympy

from ..errors import DomainError, TreeSyntaxError
from ..interfaces import NumericBackend
from ..models import Real

_ALLOWED = re.compile(r"[0-9.\s+\-*/^()a-z]*")
_NAMES = re.compile(r"[a-z]+")
_FUNCTIONS = {
    "sqrt": sympy.sqrt,
    "cbrt": lambda value: sympy.real_root(value, 3),
}


def parse_expression(text: str) -> sympy.Expr:
    """
    Parse a real constant expression.

    Integers, decimals, ``+ - * / ^``, parentheses, ``sqrt`` and ``cbrt`` are accepted; decimals
    are read as exact rationals.

    Args:
        text: The expression text

    Returns:
        The sympy expression
    """
    cleaned = text.strip().lower()
    if not cleaned:
        raise TreeSyntaxError("empty expression", 0)
    match = _ALLOWED.fullmatch(cleaned)
    if match is None:
        bad = next(i for i, char in enumerate(cleaned) if not _ALLOWED.fullmatch(char))
        raise TreeSyntaxError(f"unexpected character {cleaned[bad]!r} in expression", bad)
    for name in _NAMES.finditer(cleaned):
        if name.group() not in _FUNCTIONS:
            raise TreeSyntaxError(f"unknown function {name.group()!r}", name.start())
    try:
        expr = sympy.sympify(cleaned.replace("^", "**"), locals=_FUNCTIONS, rational=True)
    except (sympy.SympifyError, SyntaxError, TypeError) as exc:
        raise TreeSyntaxError(f"malformed expression {text!r}", 0) from exc
    if not expr.is_number or expr.is_real is False:
        raise DomainError(f"{text!r} is not a real constant")
    return expr


def coerce_real(value: Any, backend: NumericBackend) -> Real:
    """
    Convert a number, expression string or sympy expression into a backend real.

    Args:
        value: Anything ``NumericBackend.num`` accepts, or expression text
        backend: Target backend

    Returns:
        The backend real
    """
    if isinstance(value, str):
        value = parse_expression(value)
    return backend.num(value)


def as_source(value: Any) -> Any:
    """Symbolic form of value when it is an expression string, otherwise value unchanged."""
    return parse_expression(value) if isinstance(value, str) else value


def describe(value: Any, digits: Optional[int] = None) -> str:
    """Short text for a target value as the user wrote it."""
    if isinstance(value, sympy.Basic):
        return str(value) if digits is None else str(sympy.N(value, digits))
    return str(value)
