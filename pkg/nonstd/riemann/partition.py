"""
Partitions of a closed interval.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from nonstd.core.rat_interval import RatInterval
from nonstd.core.rational import as_rat, parse_rat
from nonstd.errors import PartitionError


@dataclass(frozen=True)
class Partition:
    """
    Points a = x_1 < x_2 < ... < x_n = b.

    Attributes:
        points (Tuple[Fraction, ...]): Strictly increasing, at least two
    """
    points: Tuple[Fraction, ...]

    def __post_init__(self):
        points = tuple(as_rat(p) for p in self.points)
        object.__setattr__(self, 'points', points)
        if len(points) < 2:
            raise PartitionError("a partition needs at least two points")
        for left, right in zip(points, points[1:]):
            if right <= left:
                raise PartitionError(f"partition points must increase strictly ({left} then {right})")

    @classmethod
    def uniform(cls, a, b, n: int) -> 'Partition':
        a, b = as_rat(a), as_rat(b)
        if n < 1:
            raise PartitionError("a uniform partition needs at least one cell")
        if a >= b:
            raise PartitionError(f"empty interval [{a}, {b}]")
        width = (b - a) / n
        return cls(tuple(a + width * i for i in range(n)) + (b,))

    @property
    def a(self) -> Fraction:
        return self.points[0]

    @property
    def b(self) -> Fraction:
        return self.points[-1]

    @property
    def mesh(self) -> Fraction:
        """Largest cell width."""
        return max(right - left for left, right in zip(self.points, self.points[1:]))

    def cells(self) -> List[RatInterval]:
        return [RatInterval(left, right) for left, right in zip(self.points, self.points[1:])]

    def refine(self) -> 'Partition':
        """Halve every cell."""
        points = [self.points[0]]
        for left, right in zip(self.points, self.points[1:]):
            points.extend(((left + right) / 2, right))
        return Partition(tuple(points))

    def __len__(self):
        return len(self.points)


def parse_partition(text: str) -> Partition:
    """Comma separated rationals, e.g. ``0,1/2,1``."""
    try:
        return Partition(tuple(parse_rat(item) for item in text.split(',') if item.strip()))
    except ValueError as e:
        raise PartitionError(f"invalid partition {text!r}: {e}") from e
