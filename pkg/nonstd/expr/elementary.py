"""
Rigorous enclosures of the elementary functions.

Rational endpoints are rounded outward into mpmath's raw interval format and
evaluated with the outward-rounded interval kernels of ``mpmath.libmp``;
results are converted back to exact rationals. Transcendental constants never
exist as rationals, only as enclosures of the requested precision.
"""

import logging
import math
from fractions import Fraction
from typing import Callable, Dict, Optional, Tuple

from mpmath import libmp

from nonstd.core.rat_interval import RatInterval
from nonstd.errors import EnclosureUnbounded

logger = logging.getLogger(__name__)

# exp beyond this argument would produce rationals of millions of bits
EXP_ARGUMENT_LIMIT = Fraction(2 ** 16)

RawInterval = Tuple[tuple, tuple]


def _to_mpf(value: Fraction, prec: int, rounding) -> tuple:
    return libmp.from_rational(value.numerator, value.denominator, prec, rounding)


def _to_raw(interval: RatInterval, prec: int) -> RawInterval:
    return (
        _to_mpf(interval.lo, prec, libmp.round_floor),
        _to_mpf(interval.hi, prec, libmp.round_ceiling),
    )


def _to_fraction(value: tuple) -> Fraction:
    if value in (libmp.finf, libmp.fninf, libmp.fnan):
        raise EnclosureUnbounded("elementary function", "non-finite enclosure endpoint")
    numerator, denominator = libmp.to_rational(value)
    return Fraction(numerator, denominator)


def _from_raw(raw: RawInterval) -> RatInterval:
    return RatInterval(_to_fraction(raw[0]), _to_fraction(raw[1]))


def _exact_sqrt(value: Fraction) -> Optional[Fraction]:
    if value < 0:
        return None
    p, q = math.isqrt(value.numerator), math.isqrt(value.denominator)
    if p * p == value.numerator and q * q == value.denominator:
        return Fraction(p, q)
    return None


def _exact_value(name: str, value: Fraction) -> Optional[Fraction]:
    """Values of the elementary functions that are rational."""
    if value == 0 and name in ('sin', 'sqrt'):
        return Fraction(0)
    if value == 0 and name in ('cos', 'exp'):
        return Fraction(1)
    if value == 1 and name == 'ln':
        return Fraction(0)
    if name == 'sqrt':
        return _exact_sqrt(value)
    return None


_KERNELS: Dict[str, Callable[[RawInterval, int], RawInterval]] = {
    'sin': libmp.mpi_sin,
    'cos': libmp.mpi_cos,
    'exp': libmp.mpi_exp,
    'ln': libmp.mpi_log,
    'sqrt': libmp.mpi_sqrt,
}


def enclose(name: str, argument: RatInterval, prec: int) -> RatInterval:
    """
    Enclose name(argument) for an argument interval inside the function's domain.

    Args:
        name (str): One of sin, cos, exp, ln, sqrt
        argument (RatInterval): Argument enclosure (ln needs lo > 0, sqrt lo >= 0)
        prec (int): Working precision in bits

    Returns:
        RatInterval: Outward-rounded enclosure of the image

    Raises:
        EnclosureUnbounded: If exp would overflow the rational representation
    """
    if name == 'ln' and argument.lo <= 0:
        raise ValueError(f"ln needs a positive argument, got {argument}")
    if name == 'sqrt' and argument.lo < 0:
        raise ValueError(f"sqrt needs a non-negative argument, got {argument}")
    if name == 'exp' and argument.hi > EXP_ARGUMENT_LIMIT:
        raise EnclosureUnbounded(f"exp{argument}", "argument too large for an exact enclosure")
    if argument.is_point():
        exact = _exact_value(name, argument.lo)
        if exact is not None:
            return RatInterval.point(exact)
    if name == 'sqrt':
        low, high = _exact_sqrt(argument.lo), _exact_sqrt(argument.hi)
        if low is not None and high is not None:
            return RatInterval(low, high)
    result = _from_raw(_KERNELS[name](_to_raw(argument, prec), prec))
    if name in ('sin', 'cos'):
        clipped = result.intersect(RatInterval(-1, 1))
        result = clipped if clipped is not None else result
    if name in ('exp', 'sqrt') and result.lo < 0:
        result = RatInterval(Fraction(0), result.hi)
    return result
