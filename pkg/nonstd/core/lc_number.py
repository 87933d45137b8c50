"""
Truncated Levi-Civita numbers.

A value is a finite sum of ``c * eps^q`` terms with rational exponents and
coefficients, together with the order up to which the sum is trusted.
Multiplication and inversion track that order instead of pretending the
truncated series is exact.
"""

import logging
import math
import re
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union

from nonstd.core.rational import format_rat
from nonstd.errors import ExponentDenominatorTooLarge, UsageError, Unlimited, ZeroDivisionLC

logger = logging.getLogger(__name__)

Term = Tuple[Fraction, Fraction]
Scalar = Union[Fraction, int]


def default_trunc_order() -> Fraction:
    # imported here to keep nonstd.config free of a cycle through nonstd.core
    from nonstd.config import get_settings
    return get_settings().trunc_order


def _max_exponent_denominator() -> int:
    from nonstd.config import get_settings
    return get_settings().max_exponent_denominator


class Ordering(str, Enum):
    """Outcome of comparing two truncated values."""
    LT = "LT"
    EQ_WITHIN_TRUNC = "EQ_WITHIN_TRUNC"
    GT = "GT"


class Magnitude(str, Enum):
    """Non-standard size class of a value."""
    ZERO = "ZERO"
    INFINITESIMAL = "INFINITESIMAL"
    APPRECIABLE = "APPRECIABLE"
    LARGE = "LARGE"
    INDETERMINATE = "INDETERMINATE"


class LCNumber:
    """
    Immutable truncated Levi-Civita series.

    Attributes:
        terms (Tuple[Tuple[Fraction, Fraction], ...]): (exponent, coefficient) pairs,
            exponents strictly ascending, coefficients nonzero
        order (Fraction): Exponents above this value are unknown
    """
    __slots__ = ('terms', 'order')

    def __init__(self, terms: Union[Mapping[Scalar, Scalar], Iterable[Tuple[Scalar, Scalar]]] = (),
                 order: Optional[Scalar] = None):
        order = default_trunc_order() if order is None else Fraction(order)
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: Dict[Fraction, Fraction] = {}
        for exponent, coefficient in items:
            exponent = Fraction(exponent)
            acc[exponent] = acc.get(exponent, Fraction(0)) + Fraction(coefficient)
        bound = _max_exponent_denominator()
        kept = []
        for exponent in sorted(acc):
            coefficient = acc[exponent]
            if coefficient == 0 or exponent > order:
                continue
            if exponent.denominator > bound:
                raise ExponentDenominatorTooLarge(
                    f"exponent {format_rat(exponent)} has a denominator above {bound}"
                )
            kept.append((exponent, coefficient))
        object.__setattr__(self, 'terms', tuple(kept))
        object.__setattr__(self, 'order', order)

    def __setattr__(self, key, value):
        raise AttributeError("LCNumber is immutable")

    # Constructors

    @classmethod
    def constant(cls, value: Scalar, order: Optional[Scalar] = None) -> 'LCNumber':
        return cls({0: value}, order)

    @classmethod
    def monomial(cls, coefficient: Scalar, exponent: Scalar, order: Optional[Scalar] = None) -> 'LCNumber':
        return cls({exponent: coefficient}, order)

    @classmethod
    def zero(cls, order: Optional[Scalar] = None) -> 'LCNumber':
        return cls((), order)

    # Inspection

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def leading_exponent(self) -> Optional[Fraction]:
        return self.terms[0][0] if self.terms else None

    @property
    def leading_coefficient(self) -> Fraction:
        return self.terms[0][1] if self.terms else Fraction(0)

    def coefficient(self, exponent: Scalar) -> Fraction:
        exponent = Fraction(exponent)
        for e, c in self.terms:
            if e == exponent:
                return c
        return Fraction(0)

    def sign(self) -> int:
        if not self.terms:
            return 0
        return 1 if self.terms[0][1] > 0 else -1

    def _effective_lead(self) -> Fraction:
        # an empty series is only known to vanish below its order
        return self.terms[0][0] if self.terms else self.order

    # Python operators delegate to the module functions

    def _coerce(self, other) -> Optional['LCNumber']:
        if isinstance(other, LCNumber):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return LCNumber.constant(other, self.order)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is None else lc_add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is None else lc_sub(self, other)

    def __rsub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is None else lc_sub(other, self)

    def __mul__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is None else lc_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is None else lc_div(self, other)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is None else lc_div(other, self)

    def __neg__(self):
        return lc_neg(self)

    def __abs__(self):
        return lc_abs(self)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        return lc_pow(self, n)

    def __eq__(self, other):
        if not isinstance(other, LCNumber):
            return NotImplemented
        return self.terms == other.terms and self.order == other.order

    def __hash__(self):
        return hash((self.terms, self.order))

    def __repr__(self):
        return f"LCNumber({format_lc(self)!r})"

    def __str__(self):
        return format_lc(self)


def epsilon(order: Optional[Scalar] = None) -> LCNumber:
    """The canonical positive infinitesimal."""
    return LCNumber.monomial(1, 1, order)


# Field operations

def lc_add(x: LCNumber, y: LCNumber) -> LCNumber:
    """Coefficient-wise sum; the result is trusted up to the smaller order."""
    return LCNumber(x.terms + y.terms, min(x.order, y.order))


def lc_neg(x: LCNumber) -> LCNumber:
    return LCNumber(((e, -c) for e, c in x.terms), x.order)


def lc_sub(x: LCNumber, y: LCNumber) -> LCNumber:
    return lc_add(x, lc_neg(y))


def lc_mul(x: LCNumber, y: LCNumber) -> LCNumber:
    """
    Convolution of the term maps.

    The product is trusted up to min(tx + ly, ty + lx), where l is the
    leading exponent of the other factor.
    """
    order = min(x.order + y._effective_lead(), y.order + x._effective_lead())
    acc: Dict[Fraction, Fraction] = {}
    for ex, cx in x.terms:
        for ey, cy in y.terms:
            exponent = ex + ey
            if exponent > order:
                break
            acc[exponent] = acc.get(exponent, Fraction(0)) + cx * cy
    return LCNumber(acc, order)


def _scale(x: LCNumber, coefficient: Fraction, exponent: Fraction) -> LCNumber:
    """Exact multiplication by the monomial coefficient * eps^exponent."""
    return LCNumber(((e + exponent, c * coefficient) for e, c in x.terms), x.order + exponent)


def lc_inv(x: LCNumber) -> LCNumber:
    """
    Multiplicative inverse.

    Writes x = c * eps^l * (1 + u) with u infinitesimal and expands
    1 / (1 + u) as a geometric series up to the relative order of x.

    Raises:
        ZeroDivisionLC: If x has an empty term map
    """
    if not x.terms:
        raise ZeroDivisionLC(f"inverse of {format_lc(x)}")
    lead, c = x.terms[0]
    relative = x.order - lead
    u = LCNumber(((e - lead, cx / c) for e, cx in x.terms[1:]), relative)
    result = LCNumber.constant(1, relative)
    if u.terms:
        step = lc_neg(u)
        power = LCNumber.constant(1, relative)
        for _ in range(math.floor(relative / u.terms[0][0])):
            power = lc_mul(power, step)
            result = lc_add(result, power)
    return _scale(result, 1 / c, -lead)


def lc_div(x: LCNumber, y: LCNumber) -> LCNumber:
    return lc_mul(x, lc_inv(y))


def lc_pow(x: LCNumber, n: int) -> LCNumber:
    """Integer power by repeated squaring."""
    if n < 0:
        return lc_pow(lc_inv(x), -n)
    result = LCNumber.constant(1, x.order)
    base = x
    while n:
        if n & 1:
            result = lc_mul(result, base)
        n >>= 1
        if n:
            base = lc_mul(base, base)
    return result


def lc_abs(x: LCNumber) -> LCNumber:
    return lc_neg(x) if x.sign() < 0 else x


# Order and non-standard predicates

def lc_cmp(x: LCNumber, y: LCNumber) -> Ordering:
    """Decide x < y or x > y from the leading coefficient of y - x."""
    difference = lc_sub(y, x)
    if not difference.terms:
        return Ordering.EQ_WITHIN_TRUNC
    return Ordering.LT if difference.terms[0][1] > 0 else Ordering.GT


def is_infinitesimal(x: LCNumber) -> bool:
    return not x.terms or x.terms[0][0] > 0


def is_limited(x: LCNumber) -> bool:
    return not x.terms or x.terms[0][0] >= 0


def is_large(x: LCNumber) -> bool:
    return not is_limited(x)


def classify(x: LCNumber) -> Magnitude:
    """
    Size class of x.

    An empty series is ZERO only while its order is positive; otherwise the
    truncation has swallowed possibly appreciable terms and the class is
    INDETERMINATE.
    """
    if not x.terms:
        return Magnitude.ZERO if x.order > 0 else Magnitude.INDETERMINATE
    lead = x.terms[0][0]
    if lead > 0:
        return Magnitude.INFINITESIMAL
    if lead == 0:
        return Magnitude.APPRECIABLE
    return Magnitude.LARGE


def standard_part(x: LCNumber) -> Fraction:
    """
    The standard rational infinitely close to x.

    Raises:
        Unlimited: If x is large
    """
    if is_large(x):
        raise Unlimited(f"standard part of the large value {format_lc(x)}")
    return x.coefficient(0)


def i_close(x: LCNumber, y: LCNumber) -> bool:
    """x and y are infinitely close."""
    return is_infinitesimal(lc_sub(x, y))


# Text form

_EXPONENT = r'\^\s*(?:-?\d+|\(\s*-?\d+\s*(?:/\s*\d+)?\s*\))'
_TERM_RE = re.compile(
    r'\s*(?P<sign>[+-])?\s*(?:'
    r'(?P<big>O)\(\s*eps\s*(?P<oexp>' + _EXPONENT + r')?\s*\)'
    r'|(?P<num>\d+)(?:\s*/\s*(?P<den>\d+))?(?:\s*\*\s*(?P<ceps>eps)\s*(?P<cexp>' + _EXPONENT + r')?)?'
    r'|(?P<eps>eps)\s*(?P<exp>' + _EXPONENT + r')?'
    r')'
)


def _format_exponent(exponent: Fraction) -> str:
    if exponent == 1:
        return ""
    if exponent.denominator == 1:
        return f"^{exponent.numerator}"
    return f"^({exponent.numerator}/{exponent.denominator})"


def _parse_exponent(text: Optional[str]) -> Fraction:
    if not text:
        return Fraction(1)
    return Fraction(re.sub(r'[\s^()]', '', text))


def format_lc(x: LCNumber) -> str:
    """
    Render x as ``c*eps^q`` terms with ascending exponents.

    A trailing ``+ O(eps^q)`` records an order different from the default.
    """
    pieces = []
    for exponent, coefficient in x.terms:
        magnitude = abs(coefficient)
        if exponent == 0:
            body = format_rat(magnitude)
        elif magnitude == 1:
            body = f"eps{_format_exponent(exponent)}"
        else:
            body = f"{format_rat(magnitude)}*eps{_format_exponent(exponent)}"
        pieces.append(('-' if coefficient < 0 else '+', body))
    if not pieces:
        text = "0"
    else:
        sign, body = pieces[0]
        text = ('-' if sign == '-' else '') + body
        text += ''.join(f" {sign} {body}" for sign, body in pieces[1:])
    if x.order != default_trunc_order():
        exponent = x.order
        rendered = f"^{format_rat(exponent)}" if exponent.denominator == 1 else _format_exponent(exponent)
        text += f" + O(eps{rendered})"
    return text


def parse_lc(text: str) -> LCNumber:
    """
    Parse the form produced by format_lc.

    Raises:
        UsageError: On malformed input
    """
    source = text.rstrip()
    position = 0
    terms = []
    order = None
    first = True
    while position < len(source):
        match = _TERM_RE.match(source, position)
        if not match or match.end() == position:
            raise UsageError(f"cannot read a Levi-Civita term at offset {position} of '{text}'")
        sign = match.group('sign')
        if not first and sign is None:
            raise UsageError(f"expected '+' or '-' at offset {position} of '{text}'")
        negative = sign == '-'
        if match.group('big'):
            if negative or order is not None:
                raise UsageError(f"misplaced O(...) term in '{text}'")
            order = _parse_exponent(match.group('oexp')) if match.group('oexp') else Fraction(1)
        else:
            if order is not None:
                raise UsageError(f"O(...) must be the last term in '{text}'")
            if match.group('num') is not None:
                coefficient = Fraction(int(match.group('num')), int(match.group('den') or 1))
                exponent = _parse_exponent(match.group('cexp')) if match.group('ceps') else Fraction(0)
            else:
                coefficient = Fraction(1)
                exponent = _parse_exponent(match.group('exp'))
            terms.append((exponent, -coefficient if negative else coefficient))
        first = False
        position = match.end()
    if first:
        raise UsageError("empty Levi-Civita literal")
    return LCNumber(terms, order)
