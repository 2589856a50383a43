"""Scalar handling for the two numeric modes.

Rational mode stores :class:`fractions.Fraction` values and compares exactly.
Float mode stores ``float`` and compares with an absolute tolerance.
"""

from __future__ import annotations

from decimal import Decimal
from fractions import Fraction
from numbers import Rational

RATIONAL = "rational"
FLOAT = "float"
MODES = (RATIONAL, FLOAT)

# normalization / nonnegativity / Moebius negativity
FLOAT_TOL = 1e-9
# conditioning denominators below this are treated as zero
COND_TOL = 1e-12


def check_mode(numeric: str) -> str:
    if numeric not in MODES:
        raise ValueError(f"numeric mode must be one of {MODES}, got {numeric!r}")
    return numeric


def parse_scalar(text: str) -> Fraction:
    """Exact value of a "p/q" or terminating decimal string."""
    if not isinstance(text, str):
        raise TypeError(f"expected a string, got {type(text).__name__}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational or decimal number: {text!r}") from exc


def to_scalar(value, numeric: str):
    """Coerce ``value`` into the scalar type of ``numeric``.

    Floats are refused in rational mode: the binary expansion of 0.1 is not
    1/10, and silently accepting it would defeat exact golden tests.
    """
    if numeric == RATIONAL:
        if isinstance(value, bool):
            raise TypeError("booleans are not masses")
        if isinstance(value, (Fraction, int)):
            return Fraction(value)
        if isinstance(value, Rational):
            return Fraction(value.numerator, value.denominator)
        if isinstance(value, Decimal):
            return Fraction(value)
        if isinstance(value, str):
            return parse_scalar(value)
        raise TypeError(f"cannot use {type(value).__name__} {value!r} in rational mode")
    if numeric == FLOAT:
        if isinstance(value, str):
            return float(parse_scalar(value))
        return float(value)
    raise ValueError(f"unknown numeric mode {numeric!r}")


def zero(numeric: str):
    return Fraction(0) if numeric == RATIONAL else 0.0


def one(numeric: str):
    return Fraction(1) if numeric == RATIONAL else 1.0


def is_close(a, b, numeric: str, tol: float = FLOAT_TOL) -> bool:
    if numeric == RATIONAL:
        return a == b
    return abs(a - b) <= tol


def is_negative(a, numeric: str, tol: float = FLOAT_TOL) -> bool:
    if numeric == RATIONAL:
        return a < 0
    return a < -tol


def geq(a, b, numeric: str, tol: float = FLOAT_TOL) -> bool:
    """``a >= b`` with float slack."""
    if numeric == RATIONAL:
        return a >= b
    return a >= b - tol


def format_scalar(value) -> str:
    if isinstance(value, Fraction):
        return str(value)
    return repr(float(value))
