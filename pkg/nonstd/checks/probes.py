"""
Probe offsets realising "every x infinitely close to a".
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, List, Optional, Sequence, Tuple

from nonstd.core.lc_number import LCNumber, epsilon, format_lc, is_infinitesimal, parse_lc
from nonstd.errors import UsageError

Pair = Tuple[LCNumber, LCNumber]


@dataclass(frozen=True)
class ProbeSet:
    """
    Nonzero infinitesimal offsets h; the checkers evaluate at a + h.

    Attributes:
        offsets (Tuple[LCNumber, ...]): Offsets of both signs and at least two orders
    """
    offsets: Tuple[LCNumber, ...]

    def __post_init__(self):
        offsets = tuple(self.offsets)
        object.__setattr__(self, 'offsets', offsets)
        if not offsets:
            raise ValueError("a probe set needs at least one offset")
        for h in offsets:
            if h.is_zero or not is_infinitesimal(h):
                raise ValueError(f"probe {format_lc(h)} is not a nonzero infinitesimal")
        if not any(h.sign() > 0 for h in offsets) or not any(h.sign() < 0 for h in offsets):
            raise ValueError("probes must include a positive and a negative offset")
        if len({h.leading_exponent for h in offsets}) < 2:
            raise ValueError("probes must include two different leading exponents")

    @classmethod
    def default(cls, order: Optional[Fraction] = None) -> 'ProbeSet':
        """{eps, -eps, 2 eps, eps^2, eps + eps^3}"""
        e = epsilon(order)
        return cls((e, -e, e * 2, e * e, e + e * e * e))

    @classmethod
    def parse(cls, text: str) -> 'ProbeSet':
        """Comma separated Levi-Civita literals, e.g. ``eps, -eps, eps^2``."""
        items = [item for item in text.split(',') if item.strip()]
        try:
            return cls(tuple(parse_lc(item.strip()) for item in items))
        except ValueError as e:
            raise UsageError(f"invalid probe set {text!r}: {e}") from e

    def pairs(self) -> List[Pair]:
        return list(combinations(self.offsets, 2))

    def __iter__(self):
        return iter(self.offsets)

    def __len__(self):
        return len(self.offsets)

    def __str__(self):
        return ", ".join(format_lc(h) for h in self.offsets)


def default_pairs(order: Optional[Fraction] = None) -> List[Pair]:
    """
    Anchored pairs (0, +/-eps) and pairs away from the point, including the
    infinitesimally short spans (eps, eps + eps^2).
    """
    e = epsilon(order)
    zero = LCNumber.zero(e.order)
    e2 = e * e
    return [(zero, e), (zero, -e), (e, e * 2), (-e, e), (e, e + e2), (-e, -e - e2)]


def validate_pairs(pairs: Iterable[Pair], anchored: bool = True) -> List[Pair]:
    """
    Check that each pair holds two distinct infinitesimals.

    Args:
        pairs (Iterable[Pair]): Offset pairs
        anchored (bool): Whether an offset may be 0 (the point itself)

    Raises:
        ValueError: On equal, appreciable or (when not anchored) zero offsets
    """
    checked = []
    for first, second in pairs:
        for h in (first, second):
            if not is_infinitesimal(h):
                raise ValueError(f"offset {format_lc(h)} is not infinitesimal")
            if h.is_zero and not anchored:
                raise ValueError("offsets must be nonzero")
        if first == second:
            raise ValueError(f"pair ({format_lc(first)}, {format_lc(second)}) has equal offsets")
        checked.append((first, second))
    if not checked:
        raise ValueError("at least one pair is required")
    return checked


def parse_pairs(text: str) -> List[Pair]:
    """Semicolon separated pairs ``h1, h2; h1, h2``."""
    pairs: List[Pair] = []
    for chunk in (c for c in text.split(';') if c.strip()):
        items: Sequence[str] = [item for item in chunk.split(',') if item.strip()]
        if len(items) != 2:
            raise UsageError(f"expected two offsets in {chunk.strip()!r}")
        pairs.append((parse_lc(items[0].strip()), parse_lc(items[1].strip())))
    try:
        return validate_pairs(pairs)
    except ValueError as e:
        raise UsageError(str(e)) from e
