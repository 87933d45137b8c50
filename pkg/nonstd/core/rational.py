"""
Exact rationals.

All standard quantities are ``fractions.Fraction``; this module only adds the
textual form used on the command line (``p/q``, never decimals).
"""

import math
import re
from fractions import Fraction
from typing import Union

from nonstd.errors import UsageError

Rat = Fraction
RatLike = Union[Fraction, int, str]

_RAT_RE = re.compile(r'^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$')
_DECIMAL_RE = re.compile(r'^\s*[+-]?(\d+\.\d*|\.\d+|\d+(\.\d*)?[eE][+-]?\d+)\s*$')


def parse_rat(text: str) -> Fraction:
    """
    Parse a rational literal of the form ``p`` or ``p/q``.

    Args:
        text (str): The literal

    Returns:
        Fraction: The exact value

    Raises:
        UsageError: On decimals, zero denominators or garbage
    """
    if _DECIMAL_RE.match(text):
        raise UsageError(f"decimal input '{text.strip()}' is not accepted; write it as p/q")
    match = _RAT_RE.match(text)
    if not match:
        raise UsageError(f"'{text}' is not a rational of the form p or p/q")
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise UsageError(f"'{text}' has a zero denominator")
    return Fraction(numerator, denominator)


def as_rat(value: RatLike) -> Fraction:
    """Coerce ints, Fractions and ``p/q`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise UsageError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rat(value)
    raise UsageError(f"cannot read {value!r} as an exact rational")


def format_rat(value: Fraction) -> str:
    """Render a rational as ``p`` or ``p/q``."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def ceil_rat(value: Fraction) -> int:
    return math.ceil(value)


def floor_rat(value: Fraction) -> int:
    return math.floor(value)
