"""
Intervals over the Levi-Civita field.

An LCInterval is a center plus a non-negative radius. It carries
bounded-indeterminate values such as sin of an unlimited argument (0 +/- 1).
"""

from dataclasses import dataclass
from typing import Optional

from nonstd.core.lc_number import (
    LCNumber,
    Magnitude,
    Ordering,
    classify,
    format_lc,
    is_infinitesimal,
    is_limited,
    lc_abs,
    lc_add,
    lc_cmp,
    lc_inv,
    lc_mul,
    lc_neg,
    lc_sub,
    standard_part,
)
from nonstd.core.rat_interval import RatInterval
from nonstd.core.verdict import Verdict
from nonstd.errors import DivisorStraddlesZero


@dataclass(frozen=True)
class LCInterval:
    """
    center +/- radius.

    Attributes:
        center (LCNumber): Midpoint
        radius (LCNumber): Non-negative half width
    """
    center: LCNumber
    radius: LCNumber

    def __post_init__(self):
        if self.radius.sign() < 0:
            raise ValueError(f"negative radius {format_lc(self.radius)}")

    @classmethod
    def exact(cls, center: LCNumber) -> 'LCInterval':
        return cls(center, LCNumber.zero(center.order))

    @classmethod
    def from_rat_interval(cls, interval: RatInterval, order=None) -> 'LCInterval':
        return cls(LCNumber.constant(interval.mid, order), LCNumber.constant(interval.radius, order))

    @property
    def is_exact(self) -> bool:
        return self.radius.is_zero

    def __add__(self, other):
        return interval_add(self, other)

    def __sub__(self, other):
        return interval_sub(self, other)

    def __mul__(self, other):
        return interval_mul(self, other)

    def __truediv__(self, other):
        return interval_div(self, other)

    def __neg__(self):
        return LCInterval(lc_neg(self.center), self.radius)

    def __abs__(self):
        return interval_abs(self)

    def __str__(self):
        if self.radius.is_zero:
            return format_lc(self.center)
        return f"({format_lc(self.center)}) +/- ({format_lc(self.radius)})"


def interval_add(a: LCInterval, b: LCInterval) -> LCInterval:
    return LCInterval(lc_add(a.center, b.center), lc_add(a.radius, b.radius))


def interval_sub(a: LCInterval, b: LCInterval) -> LCInterval:
    return LCInterval(lc_sub(a.center, b.center), lc_add(a.radius, b.radius))


def interval_mul(a: LCInterval, b: LCInterval) -> LCInterval:
    """(c1 +/- r1)(c2 +/- r2) lies in c1 c2 +/- (|c1| r2 + |c2| r1 + r1 r2)."""
    radius = lc_add(
        lc_add(lc_mul(lc_abs(a.center), b.radius), lc_mul(lc_abs(b.center), a.radius)),
        lc_mul(a.radius, b.radius),
    )
    return LCInterval(lc_mul(a.center, b.center), radius)


def interval_reciprocal(b: LCInterval) -> LCInterval:
    """
    1 / (c +/- r) lies in 1/c +/- r / (|c| (|c| - r)) when r < |c|.

    Raises:
        DivisorStraddlesZero: If the radius is not provably below |c|
    """
    magnitude = lc_abs(b.center)
    if b.center.is_zero or lc_cmp(b.radius, magnitude) is not Ordering.LT:
        raise DivisorStraddlesZero(f"divisor {b} cannot be separated from 0")
    center = lc_inv(b.center)
    if b.radius.is_zero:
        return LCInterval.exact(center)
    radius = lc_mul(b.radius, lc_inv(lc_mul(magnitude, lc_sub(magnitude, b.radius))))
    return LCInterval(center, radius)


def interval_div(a: LCInterval, b: LCInterval) -> LCInterval:
    return interval_mul(a, interval_reciprocal(b))


def interval_abs(a: LCInterval) -> LCInterval:
    return LCInterval(lc_abs(a.center), a.radius)


def lower_magnitude(a: LCInterval) -> LCNumber:
    """|center| - radius: a lower bound of |v| for v in a when it is positive."""
    return lc_sub(lc_abs(a.center), a.radius)


def is_provably_large(a: LCInterval) -> bool:
    """Every value in a is unlimited."""
    low = lower_magnitude(a)
    return low.sign() > 0 and classify(low) is Magnitude.LARGE


def is_limited_interval(a: LCInterval) -> bool:
    """The center is limited and the radius infinitesimal, both within truncation."""
    if classify(a.center) is Magnitude.INDETERMINATE or classify(a.radius) is Magnitude.INDETERMINATE:
        return False
    return is_limited(a.center) and is_infinitesimal(a.radius)


def standard_enclosure(a: LCInterval) -> Optional[RatInterval]:
    """Standard rationals bounding the standard parts of all values in a, if limited."""
    if not (is_limited(a.center) and is_limited(a.radius)):
        return None
    c, r = standard_part(a.center), standard_part(a.radius)
    return RatInterval(c - r, c + r)


def i_close_verdict(a: LCInterval, b: LCInterval) -> Verdict:
    """
    Three-valued lift of infinite closeness.

    PROVED when |ca - cb| + ra + rb is infinitesimal, REFUTED when
    |ca - cb| - ra - rb is positive and not infinitesimal.
    """
    distance = lc_abs(lc_sub(a.center, b.center))
    spread = lc_add(a.radius, b.radius)
    upper = lc_add(distance, spread)
    gap = lc_sub(distance, spread)
    upper_class = classify(upper)
    if upper_class in (Magnitude.ZERO, Magnitude.INFINITESIMAL):
        return Verdict.proved(note=f"difference bounded by {format_lc(upper)}")
    gap_class = classify(gap)
    if gap.sign() > 0 and gap_class in (Magnitude.APPRECIABLE, Magnitude.LARGE):
        return Verdict.refuted(
            witness={"left": str(a), "right": str(b), "gap": format_lc(gap)},
            note="values are a standard distance apart",
        )
    if upper_class is Magnitude.INDETERMINATE or gap_class is Magnitude.INDETERMINATE:
        return Verdict.undecided(note="truncation order exhausted")
    return Verdict.undecided(note=f"overlap of width {format_lc(spread)}")
