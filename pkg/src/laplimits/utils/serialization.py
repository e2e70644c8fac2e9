"""
JSON and CSV output for laplimits.

Reals become decimal strings carrying their full binary precision, polynomials become lists of
exact integer strings (highest degree first) and rationals become ``"p/q"`` strings.
"""

import csv
import json
from enum import Enum
from fractions import Fraction
from typing import Any, Iterable, TextIO

import mpmath
import sympy
from pydantic import BaseModel

from ..models import LinearTree, SampleRecord, Starlike

_SCHEMA = "laplimits.{kind}/1"
_CSV_COLUMNS = ("seed", "spec", "radius", "gap")


def schema(kind: str) -> str:
    """Versioned schema name for a document kind."""
    return _SCHEMA.format(kind=kind)


def format_real(value: Any) -> str:
    """Decimal string for a float, Fraction or mpmath value."""
    if hasattr(value, "_mpf_"):
        bits = max(value._mpf_[3], 53)
        return str(mpmath.libmp.to_str(value._mpf_, mpmath.libmp.prec_to_dps(bits)))
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}" if value.denominator != 1 else str(value)
    return repr(value)


def polynomial_coefficients(poly: sympy.Poly) -> list:
    """Primitive integer coefficients, highest degree first."""
    _, integral = poly.clear_denoms()
    _, primitive = integral.primitive()
    return [str(int(c)) for c in primitive.all_coeffs()]


def to_jsonable(value: Any) -> Any:
    """
    Convert models and numbers into plain JSON values.

    Args:
        value: A pydantic model, number, polynomial or container of them

    Returns:
        A structure json.dump accepts
    """
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (Starlike, LinearTree)):
        return str(value)
    if isinstance(value, BaseModel):
        return {name: to_jsonable(getattr(value, name)) for name in type(value).model_fields}
    if isinstance(value, sympy.Poly):
        return polynomial_coefficients(value)
    if isinstance(value, sympy.Rational):
        return format_real(Fraction(int(value.p), int(value.q)))
    if isinstance(value, dict):
        return {str(key): to_jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(item) for item in value]
    return format_real(value)


def dump_json(document: Any, output: TextIO) -> None:
    """Write a document as indented JSON."""
    json.dump(to_jsonable(document), output, indent=2)
    output.write("\n")


def write_csv(records: Iterable[SampleRecord], output: TextIO) -> None:
    """Write sample records with the columns seed, spec, radius, gap."""
    writer = csv.writer(output, lineterminator="\n")
    writer.writerow(_CSV_COLUMNS)
    for record in records:
        gap = "" if record.gap is None else repr(record.gap)
        writer.writerow((record.seed, record.spec, repr(record.radius), gap))
