"""Exact rational helpers and shared configuration.

Scalars are :class:`fractions.Fraction` throughout. The wire format is the
string ``"p/q"`` (integers are accepted on input); floats are rejected so that
strict inequalities never depend on rounding.
"""

import os
from fractions import Fraction
from numbers import Rational

__all__ = ["Fraction", "as_rational", "format_rational", "size_cap"]

DEFAULT_SIZE_CAP = 10**6


def as_rational(value):
    """Coerce ``value`` to a Fraction, refusing anything inexact."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or "." in text or "e" in text.lower():
            # "0.5" parses fine with Fraction but is not the wire format
            raise ValueError(f"rationals are written as 'p/q', got {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot use {type(value).__name__} {value!r} as an exact rational")


def format_rational(value):
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def size_cap(default=DEFAULT_SIZE_CAP):
    """Enumeration cap, overridable through ``FIBERORDER_SIZE_CAP``."""
    raw = os.environ.get("FIBERORDER_SIZE_CAP")
    if raw is None or raw == "":
        return default
    return int(raw)
