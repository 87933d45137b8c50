"""
Closed intervals with exact rational endpoints.

The classical interval carrier: every operation returns an interval that
contains all pointwise results.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Tuple, Union

from nonstd.core.rational import format_rat

Number = Union[Fraction, int]


@dataclass(frozen=True)
class RatInterval:
    """
    Closed interval [lo, hi] of rationals.

    Attributes:
        lo (Fraction): Lower endpoint
        hi (Fraction): Upper endpoint
    """
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, 'lo', Fraction(self.lo))
        object.__setattr__(self, 'hi', Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, value: Number) -> 'RatInterval':
        return cls(Fraction(value), Fraction(value))

    @classmethod
    def hull_of(cls, values: Iterable[Number]) -> 'RatInterval':
        values = [Fraction(v) for v in values]
        return cls(min(values), max(values))

    @staticmethod
    def coerce(value: Union['RatInterval', Number]) -> 'RatInterval':
        if isinstance(value, RatInterval):
            return value
        return RatInterval.point(value)

    # Shape

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def radius(self) -> Fraction:
        return (self.hi - self.lo) / 2

    @property
    def magnitude(self) -> Fraction:
        """Largest absolute value in the interval."""
        return max(abs(self.lo), abs(self.hi))

    @property
    def mignitude(self) -> Fraction:
        """Smallest absolute value in the interval."""
        if self.contains_zero():
            return Fraction(0)
        return min(abs(self.lo), abs(self.hi))

    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, value: Union['RatInterval', Number]) -> bool:
        other = RatInterval.coerce(value)
        return self.lo <= other.lo and other.hi <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def hull(self, other: 'RatInterval') -> 'RatInterval':
        return RatInterval(min(self.lo, other.lo), max(self.hi, other.hi))

    def intersect(self, other: 'RatInterval') -> Optional['RatInterval']:
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo > hi:
            return None
        return RatInterval(lo, hi)

    def bisect(self) -> Tuple['RatInterval', 'RatInterval']:
        m = self.mid
        return RatInterval(self.lo, m), RatInterval(m, self.hi)

    # Arithmetic

    def __add__(self, other):
        other = RatInterval.coerce(other)
        return RatInterval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __sub__(self, other):
        other = RatInterval.coerce(other)
        return RatInterval(self.lo - other.hi, self.hi - other.lo)

    def __rsub__(self, other):
        return RatInterval.coerce(other) - self

    def __neg__(self):
        return RatInterval(-self.hi, -self.lo)

    def __mul__(self, other):
        other = RatInterval.coerce(other)
        products = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return RatInterval(min(products), max(products))

    __rmul__ = __mul__

    def reciprocal(self) -> 'RatInterval':
        if self.contains_zero():
            raise ZeroDivisionError(f"reciprocal of {self} which contains 0")
        return RatInterval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        return self * RatInterval.coerce(other).reciprocal()

    def __rtruediv__(self, other):
        return RatInterval.coerce(other) * self.reciprocal()

    def __abs__(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return RatInterval(Fraction(0), max(-self.lo, self.hi))

    def __pow__(self, n: int) -> 'RatInterval':
        """Tight integer power (even powers of a sign-changing interval start at 0)."""
        if not isinstance(n, int):
            return NotImplemented
        if n == 0:
            return RatInterval.point(1)
        if n < 0:
            return (self ** -n).reciprocal()
        if n % 2 == 1:
            return RatInterval(self.lo ** n, self.hi ** n)
        low, high = abs(self).lo, abs(self).hi
        return RatInterval(low ** n, high ** n)

    def __str__(self):
        return f"[{format_rat(self.lo)}, {format_rat(self.hi)}]"

    def as_pair(self) -> Tuple[str, str]:
        return format_rat(self.lo), format_rat(self.hi)
