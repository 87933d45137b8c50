"""
Riemann sums and certified Darboux bounds.
"""

import csv
import logging
from fractions import Fraction
from typing import List, NamedTuple, Optional, TextIO, Tuple

from nonstd.core.rat_interval import RatInterval
from nonstd.core.rational import format_rat
from nonstd.expr.evaluate import eval_interval, eval_rat
from nonstd.expr.nodes import Expr
from nonstd.riemann.partition import Partition

logger = logging.getLogger(__name__)


class DarbouxBounds(NamedTuple):
    """
    Enclosures of the lower and upper Darboux sums; every tagged sum of the
    partition lies in [lower.lo, upper.hi].
    """
    lower: RatInterval
    upper: RatInterval
    cells: Tuple[Tuple[RatInterval, RatInterval], ...] = ()

    @property
    def gap(self) -> Fraction:
        return self.upper.hi - self.lower.lo

    @property
    def sandwich(self) -> RatInterval:
        return RatInterval(self.lower.lo, self.upper.hi)


def riemann_sum(f: Expr, P: Partition, prec: Optional[int] = None) -> RatInterval:
    """
    Right endpoint sum over i = 2..n of f(x_i) (x_i - x_(i-1)).

    Raises:
        DomainError: If f is undefined at a right endpoint
    """
    total = RatInterval.point(0)
    for left, right in zip(P.points, P.points[1:]):
        total = total + eval_rat(f, right, prec) * (right - left)
    return total


def darboux_bounds(f: Expr, P: Partition, prec: Optional[int] = None) -> DarbouxBounds:
    """
    Certified lower and upper sums from per-cell range enclosures.

    The lower sum lies between the sum of the range minima and the right
    endpoint sum; the upper sum between the right endpoint sum and the sum of
    the range maxima.

    Raises:
        DomainError: If f may be undefined anywhere on [a, b]
    """
    lows, highs = Fraction(0), Fraction(0)
    tagged = RatInterval.point(0)
    ranges: List[Tuple[RatInterval, RatInterval]] = []
    for cell in P.cells():
        values = eval_interval(f, cell, prec, strict=True)
        width = cell.width
        lows += values.lo * width
        highs += values.hi * width
        tagged = tagged + eval_rat(f, cell.hi, prec) * width
        ranges.append((cell, values))
    logger.debug(f"Darboux bounds of {f} on {len(ranges)} cells: gap {highs - lows}")
    return DarbouxBounds(RatInterval(lows, tagged.hi), RatInterval(tagged.lo, highs), tuple(ranges))


def cells_to_csv(bounds: DarbouxBounds, stream: TextIO) -> None:
    """Write ``cell,lo,hi`` rows with the cell as ``left..right``."""
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(["cell", "lo", "hi"])
    for cell, values in bounds.cells:
        writer.writerow([f"{format_rat(cell.lo)}..{format_rat(cell.hi)}", format_rat(values.lo), format_rat(values.hi)])
