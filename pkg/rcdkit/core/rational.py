"""Exact rational scalars.

Probabilities are ``fractions.Fraction`` values, always in lowest terms with a
positive denominator. Documents carry them as strings: ``"p/q"`` or a bare
integer in rational mode, and additionally plain decimals in float mode.
"""

import re
from fractions import Fraction
from typing import Union

from rcdkit.core.errors import MalformedDocument

Rat = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")
_DECIMAL_RE = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")


def parse_rat(text: Union[str, int], allow_decimal: bool = False) -> Fraction:
    """Parse a document scalar into an exact Fraction.

    Args:
        text: ``"p/q"``, an integer string, or an int
        allow_decimal: accept decimal notation (float-mode documents only)

    Raises:
        MalformedDocument: the text is not an accepted rational literal
    """
    if isinstance(text, bool):
        raise MalformedDocument(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise MalformedDocument(f"not a rational: {text!r}")

    literal = text.strip()
    if _RATIONAL_RE.match(literal):
        _, _, denominator = literal.partition("/")
        if denominator and int(denominator) == 0:
            raise MalformedDocument(f"zero denominator in {text!r}")
        return Fraction(literal)
    if allow_decimal and _DECIMAL_RE.match(literal):
        # Fraction parses decimal strings exactly, no binary rounding
        return Fraction(literal)
    if _DECIMAL_RE.match(literal):
        raise MalformedDocument(f"decimal {text!r} not accepted in rational mode; use p/q")
    raise MalformedDocument(f"not a rational: {text!r}")


def format_rat(value: Fraction) -> str:
    """Render a Fraction as ``"p/q"`` or a bare integer."""
    return str(Fraction(value))


def close(a: Fraction, b: Fraction, epsilon: Fraction = ZERO) -> bool:
    """Equality test; exact when epsilon is zero."""
    if epsilon == 0:
        return a == b
    return abs(a - b) <= epsilon
