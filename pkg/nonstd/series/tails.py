"""
Certified statements about the indices beyond an explicit horizon.

A rational function r(n) is enclosed for all real n >= N at once by writing
n = 1/u and enclosing r(1/u) over u in [0, 1/N]; the enclosure also covers
the limit n -> infinity.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional

from nonstd.core.rat_interval import RatInterval
from nonstd.core.rational import format_rat
from nonstd.errors import DomainError, ExprError
from nonstd.expr.rational import Poly, RationalFunction, range_enclosure
from nonstd.series.sequence import SeqExpr

logger = logging.getLogger(__name__)

CONVERGES = "converges"
DIVERGES = "diverges"


@dataclass(frozen=True)
class TailCertificate:
    """
    The argument used beyond index N.

    Attributes:
        method (str): ratio, power, majorant, growth, harmonic or closed-form
        index (int): N
        bound (Optional[Fraction]): Bound of sum_{n > N} |a_n| for convergence
        outcome (str): converges or diverges
    """
    method: str
    index: int
    bound: Optional[Fraction]
    outcome: str

    def to_dict(self) -> Dict[str, object]:
        data: Dict[str, object] = {"method": self.method, "index": self.index, "outcome": self.outcome}
        if self.bound is not None:
            data["bound"] = format_rat(self.bound)
        return data


def range_beyond(r: RationalFunction, N: int, depth: int = 8) -> Optional[RatInterval]:
    """Enclosure of r(n) for every real n >= N >= 1, or None."""
    if N < 1:
        raise ValueError("N must be at least 1")
    try:
        return range_enclosure(r.reciprocal(), RatInterval(Fraction(0), Fraction(1, N)), depth)
    except DomainError:
        return None


def decay_order(r: RationalFunction) -> int:
    """p with r(n) ~ c n**-p."""
    return r.denominator.degree - r.numerator.degree


def _scaled_at_infinity(r: RationalFunction, p: int) -> RationalFunction:
    """n**p r(n) written in u = 1/n."""
    at_infinity = r.reciprocal()
    return RationalFunction(at_infinity.numerator, at_infinity.denominator * Poly.x() ** p).cancel_powers()


def _formula(s: SeqExpr) -> Optional[RationalFunction]:
    return None if s.closed_form else s.rational_term()


def ratio_certificate(s: SeqExpr, N: int, first_term: RatInterval) -> Optional[TailCertificate]:
    """|a_(n+1) / a_n| <= q < 1 for n >= N bounds the tail by |a_(N+1)| / (1 - q)."""
    term = _formula(s)
    if term is None or N < max(s.formula_start, 1):
        return None
    if term.numerator.is_zero:
        return TailCertificate("ratio", N, Fraction(0), CONVERGES)
    try:
        quotient = term.shift(1) / term
    except DomainError:
        return None
    ratios = range_beyond(quotient, N)
    if ratios is None:
        return None
    q = abs(s.ratio) * ratios.magnitude
    if q >= 1:
        return None
    return TailCertificate("ratio", N, first_term.magnitude / (1 - q), CONVERGES)


def power_certificate(s: SeqExpr, N: int) -> Optional[TailCertificate]:
    """|a_n| <= C n**-p with p >= 2 bounds the tail by C / ((p - 1) N**(p - 1))."""
    term = _formula(s)
    if term is None or abs(s.ratio) != 1 or N < max(s.formula_start, 1) or term.numerator.is_zero:
        return None
    p = decay_order(term)
    if p < 2:
        return None
    constants = range_enclosure(_scaled_at_infinity(term, p), RatInterval(Fraction(0), Fraction(1, N)))
    if constants is None:
        return None
    C = constants.magnitude
    return TailCertificate("power", N, C / ((p - 1) * Fraction(N) ** (p - 1)), CONVERGES)


def majorant_certificate(s: SeqExpr, N: int, c: Fraction, rho: Fraction) -> Optional[TailCertificate]:
    """|a_n| <= c rho**n for n > N, checked as |ratio| <= rho and |term(n)| <= c."""
    term = _formula(s)
    if term is None or N < max(s.formula_start, 1) or not 0 < rho < 1 or abs(s.ratio) > rho:
        return None
    values = range_beyond(term, N)
    if values is None or values.magnitude > c:
        return None
    return TailCertificate("majorant", N, c * rho ** (N + 1) / (1 - rho), CONVERGES)


def growth_certificate(s: SeqExpr, N: int) -> Optional[TailCertificate]:
    """
    Divergence of a series of eventually positive terms: terms bounded away
    from 0, non-decreasing positive terms, or terms at least c/n.
    """
    term = _formula(s)
    if term is None or s.ratio < 1 or N < max(s.formula_start, 1) or term.numerator.is_zero:
        return None
    values = range_beyond(term, N)
    if values is not None and values.lo > 0:
        return TailCertificate("growth", N, None, DIVERGES)
    try:
        quotient = term.shift(1) / term
    except DomainError:
        return None
    ratios = range_beyond(quotient, N)
    if ratios is not None and values is not None and values.lo >= 0 and s.ratio * ratios.lo >= 1:
        if term(Fraction(N + 1)) > 0:
            return TailCertificate("growth", N, None, DIVERGES)
    if s.ratio == 1 and decay_order(term) == 1:
        constants = range_enclosure(_scaled_at_infinity(term, 1), RatInterval(Fraction(0), Fraction(1, N)))
        if constants is not None and constants.lo > 0:
            return TailCertificate("harmonic", N, None, DIVERGES)
    return None


def nonnegative_beyond(s: SeqExpr, N: int) -> bool:
    """Every term a_n with n >= N is certified non-negative."""
    term = _formula(s)
    if term is None or s.ratio < 0 or N < 1:
        return False
    values = range_beyond(term, N)
    return values is not None and values.lo >= 0


def closed_form_range(s: SeqExpr, N: int) -> Optional[RatInterval]:
    """Enclosure of S_n for every n >= N (and of its limit) for a rational closed form."""
    if not s.closed_form or s.ratio != 1 or N < max(s.formula_start, 1):
        return None
    formula = s.rational_term()
    return None if formula is None else range_beyond(formula, N)


def closed_form_increments_nonnegative(s: SeqExpr, N: int) -> bool:
    """S_(n+1) - S_n >= 0 for every n >= N."""
    formula = s.rational_term() if s.closed_form and s.ratio == 1 else None
    if formula is None or N < max(s.formula_start, 1):
        return False
    try:
        increments = range_beyond(formula.shift(1) - formula, N)
    except (DomainError, ExprError):
        return False
    return increments is not None and increments.lo >= 0


def best_convergence_certificate(s: SeqExpr, N: int, first_term: RatInterval,
                                 majorant: Optional[tuple] = None) -> Optional[TailCertificate]:
    """The tightest available convergence certificate at N."""
    candidates = [ratio_certificate(s, N, first_term), power_certificate(s, N)]
    if majorant is not None:
        candidates.append(majorant_certificate(s, N, *majorant))
    found = [c for c in candidates if c is not None]
    if not found:
        return None
    best = min(found, key=lambda c: c.bound)
    logger.debug(f"Tail beyond {N} bounded by {best.bound} ({best.method})")
    return best
