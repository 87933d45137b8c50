"""
Sequences and exact partial sums.
"""

import csv
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, TextIO, Tuple

from nonstd.core.rat_interval import RatInterval
from nonstd.core.rational import as_rat, format_rat
from nonstd.errors import DomainError, NotRational
from nonstd.expr.evaluate import eval_rat
from nonstd.expr.nodes import Expr, is_rational_only
from nonstd.expr.rational import RationalFunction, to_rational_function

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SeqExpr:
    """
    a_n = ratio**n * term(n) for n >= offset + len(head); the first terms may
    be given explicitly in head.

    Attributes:
        term (Expr): Formula in the index (spelled ``x``)
        offset (int): First index n0
        ratio (Fraction): Geometric factor, exact
        head (Tuple[Fraction, ...]): Explicit values of a_n0, a_n0+1, ...
        closed_form (bool): term is the partial sum S_n itself, not a_n
    """
    term: Expr
    offset: int = 0
    ratio: Fraction = Fraction(1)
    head: Tuple[Fraction, ...] = ()
    closed_form: bool = False

    def __post_init__(self):
        object.__setattr__(self, 'ratio', as_rat(self.ratio))
        object.__setattr__(self, 'head', tuple(as_rat(v) for v in self.head))
        if self.offset < 0:
            raise ValueError("offset must be non-negative")
        if self.ratio == 0:
            raise ValueError("ratio must be nonzero")

    @property
    def formula_start(self) -> int:
        """First index computed by the formula."""
        return self.offset + len(self.head)

    @property
    def is_rational(self) -> bool:
        return is_rational_only(self.term)

    def rational_term(self) -> Optional[RationalFunction]:
        """The formula as P(n)/Q(n), if it lies in the rational fragment."""
        if not self.is_rational:
            return None
        try:
            return to_rational_function(self.term)
        except (NotRational, DomainError):
            return None

    def value_at(self, n: int, prec: Optional[int] = None) -> RatInterval:
        """The formula value at n: a_n, or S_n for a closed form."""
        if n < self.offset:
            raise ValueError(f"index {n} precedes the offset {self.offset}")
        i = n - self.offset
        if i < len(self.head):
            return RatInterval.point(self.head[i])
        value = eval_rat(self.term, n, prec)
        if self.ratio != 1:
            value = value * self.ratio ** n
        return value


@dataclass(frozen=True)
class SumTrace:
    """
    Partial sums S_n0 ... S_horizon.

    Attributes:
        horizon (int): Last index summed
        sums (Tuple[Tuple[int, RatInterval], ...]): (n, S_n enclosure)
        monotone (bool): Every term enclosure is non-negative
        bound_found (Optional[Fraction]): Upper bound of the sums when monotone
    """
    horizon: int
    sums: Tuple[Tuple[int, RatInterval], ...]
    monotone: bool
    bound_found: Optional[Fraction] = None

    def at(self, n: int) -> RatInterval:
        first = self.sums[0][0]
        return self.sums[n - first][1]

    @property
    def last(self) -> RatInterval:
        return self.sums[-1][1]


class PartialSums:
    """Incremental S_n with cached prefixes."""

    def __init__(self, s: SeqExpr, prec: Optional[int] = None):
        self.s = s
        self.prec = prec
        self._sums: List[RatInterval] = []
        self._terms: List[RatInterval] = []

    def _extend(self, n: int) -> None:
        while self.s.offset + len(self._sums) <= n:
            k = self.s.offset + len(self._sums)
            value = self.s.value_at(k, self.prec)
            if self.s.closed_form:
                term = value - self._sums[-1] if self._sums else value
                self._sums.append(value)
            else:
                term = value
                self._sums.append(self._sums[-1] + value if self._sums else value)
            self._terms.append(term)

    def sum(self, n: int) -> RatInterval:
        self._extend(n)
        return self._sums[n - self.s.offset]

    def term(self, n: int) -> RatInterval:
        self._extend(n)
        return self._terms[n - self.s.offset]

    def trace(self, n: int) -> SumTrace:
        self._extend(n)
        count = n - self.s.offset + 1
        sums = tuple((self.s.offset + i, self._sums[i]) for i in range(count))
        monotone = all(term.lo >= 0 for term in self._terms[:count])
        bound = max(total.hi for _, total in sums) if monotone else None
        return SumTrace(horizon=n, sums=sums, monotone=monotone, bound_found=bound)


def partial_sums(s: SeqExpr, N: int, prec: Optional[int] = None) -> SumTrace:
    """
    S_n for n = n0 .. N.

    Args:
        s (SeqExpr): The sequence
        N (int): Last index
        prec (Optional[int]): Bits for transcendental terms

    Returns:
        SumTrace: Exact sums for rational-only terms, enclosures otherwise

    Raises:
        DomainError: If the term is undefined at some index
    """
    if N < s.offset:
        raise ValueError(f"N={N} precedes the offset {s.offset}")
    trace = PartialSums(s, prec).trace(N)
    logger.debug(f"Summed {s.term} up to {N}: {trace.last}")
    return trace


def trace_to_csv(trace: SumTrace, stream: TextIO) -> None:
    """Write ``n,lo,hi`` rows."""
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(["n", "lo", "hi"])
    for n, total in trace.sums:
        writer.writerow([n, format_rat(total.lo), format_rat(total.hi)])


def parse_head(text: str) -> Tuple[Fraction, ...]:
    return tuple(as_rat(item.strip()) for item in text.split(',') if item.strip())
