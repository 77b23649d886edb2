"""Rational literals for the JSON interchange format.

Coordinates travel as strings: ``"p"`` for integers, ``"p/q"`` otherwise.
Parsing is strict (no whitespace, no floats, no zero or negative
denominators); formatting always emits the canonical lowest-terms form.
"""

from __future__ import annotations

import re
from fractions import Fraction

_RATIONAL_RE = re.compile(r"^(-?\d+)(?:/([1-9]\d*))?$")


class RationalFormatError(ValueError):
    """A string is not a valid rational literal."""


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` (q > 0) into a Fraction."""
    if not isinstance(text, str):
        raise RationalFormatError(f"rational must be a string, got {type(text).__name__}")
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise RationalFormatError(f"not a rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    return Fraction(num, den)


def format_rational(value: Fraction | int) -> str:
    """Canonical string form: ``"p"`` for integers, else ``"p/q"`` with q > 0."""
    f = Fraction(value)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"
