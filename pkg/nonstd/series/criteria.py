"""
Convergence and divergence verdicts for series.

Beyond the explicit horizon the verdicts rest on tail certificates; results
that only the horizon limits are UNDECIDED, never REFUTED.
"""

import logging
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from nonstd.checks.classical import as_schedule
from nonstd.core.lc_interval import LCInterval, i_close_verdict, is_limited_interval, is_provably_large
from nonstd.core.lc_number import LCNumber, epsilon, lc_inv, lc_sub, standard_part
from nonstd.core.rat_interval import RatInterval
from nonstd.core.rational import as_rat, format_rat
from nonstd.core.verdict import Status, Verdict
from nonstd.errors import ExprError, LCError, NotNonNegative
from nonstd.expr.lc_eval import eval_lc
from nonstd.expr.rational import Poly, RationalFunction
from nonstd.series.sequence import PartialSums, SeqExpr
from nonstd.series.tails import (
    CONVERGES,
    DIVERGES,
    TailCertificate,
    best_convergence_certificate,
    closed_form_increments_nonnegative,
    closed_form_range,
    decay_order,
    growth_certificate,
    nonnegative_beyond,
    range_beyond,
)

logger = logging.getLogger(__name__)

DEFAULT_BOUNDS = (Fraction(10), Fraction(100), Fraction(1000))
# Closed forms are certified symbolically, so M is not limited by the horizon
MAX_INDEX = 2 ** 64
# Width used when only an upper bound of the sum is needed
COARSE_TAIL = Fraction(1, 2 ** 10)


def _defaults(horizon: Optional[int], prec: Optional[int]) -> Tuple[int, int]:
    from nonstd.config import get_settings
    settings = get_settings()
    return (settings.horizon if horizon is None else horizon, settings.prec if prec is None else prec)


def _smallest(predicate: Callable[[int], bool], lo: int, hi: int) -> int:
    """Smallest n in (lo, hi] with predicate(n), given predicate(hi) and a monotone predicate."""
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if predicate(mid):
            hi = mid
        else:
            lo = mid
    return hi


class SeriesEngine:
    """
    Partial sums plus tail certificates of one series.

    Attributes:
        s (SeqExpr): The series
        horizon (int): Largest index summed explicitly
        sums (PartialSums): Cached partial sums
    """

    def __init__(self, s: SeqExpr, horizon: int, prec: int, majorant: Optional[Tuple[Fraction, Fraction]] = None):
        self.s = s
        self.horizon = horizon
        self.prec = prec
        self.majorant = majorant
        self.sums = PartialSums(s, prec)
        self.base = max(s.formula_start, 1)

    def candidates(self) -> List[int]:
        """Doubling indices from the first formula index up to the horizon."""
        found, N = [], self.base
        while N < self.horizon:
            found.append(N)
            N *= 2
        found.append(self.horizon)
        return found

    def tail(self, N: int) -> Optional[TailCertificate]:
        return best_convergence_certificate(self.s, N, self.sums.term(N + 1), self.majorant)

    def limit_enclosure(self, width: Fraction) -> Optional[Tuple[int, RatInterval, TailCertificate]]:
        """S_N and a certificate with tail bound at most width, or the best found."""
        best = None
        for N in self.candidates():
            certificate = self.tail(N)
            if certificate is None:
                continue
            best = (N, self.sums.sum(N), certificate)
            if certificate.bound <= width:
                break
        return best

    def sum_enclosure(self, width: Fraction, nonnegative: bool = False) -> Optional[Tuple[RatInterval, TailCertificate]]:
        found = self.limit_enclosure(width)
        if found is None:
            return None
        N, total, certificate = found
        low = total.lo if nonnegative else total.lo - certificate.bound
        return RatInterval(low, total.hi + certificate.bound), certificate

    def nonnegative(self) -> bool:
        """Every term certified >= 0 (the explicit ones and all beyond the first formula index)."""
        for n in range(self.s.offset, self.base + 1):
            if self.sums.term(n).lo < 0:
                return False
        if self.s.closed_form:
            return closed_form_increments_nonnegative(self.s, self.base)
        return nonnegative_beyond(self.s, self.base)


def _closed_form_difference(s: SeqExpr, L: Fraction) -> Optional[RationalFunction]:
    if s.ratio != 1:
        return None
    formula = s.rational_term()
    if formula is None:
        return None
    return formula - RationalFunction.polynomial(Poly.constant(L))


def _closed_form_index(difference: RationalFunction, eps: Fraction, base: int) -> Tuple[Optional[int], Optional[int]]:
    """(M, None) with |S_n - L| < eps for n > M, or (None, n) with a persistent violation from n on."""
    def passes(N: int) -> bool:
        values = range_beyond(difference, N)
        return values is not None and values.magnitude < eps

    N = base
    while N <= MAX_INDEX:
        if passes(N):
            first = N if N == base else _smallest(passes, N // 2, N)
            return first - 1, None
        values = range_beyond(difference, N)
        if values is not None and values.mignitude >= eps:
            return None, N
        N *= 2
    return None, None


def weierstrass_converges(s: SeqExpr, L, sched=None, horizon: Optional[int] = None, prec: Optional[int] = None,
                          majorant: Optional[Tuple[Fraction, Fraction]] = None) -> Verdict:
    """
    There is L such that for every eps some M has |S_n - L| < eps for all n > M.

    Args:
        s (SeqExpr): The series (or closed-form partial sums)
        L: The candidate limit
        sched: EpsSchedule or descending rationals
        horizon (Optional[int]): Largest index summed explicitly
        prec (Optional[int]): Bits for transcendental terms
        majorant (Optional[Tuple[Fraction, Fraction]]): (c, rho) with |a_n| <= c rho**n

    Returns:
        Verdict: PROVED with M for every eps, REFUTED with an index from
        which every partial sum stays eps away from L
    """
    L = as_rat(L)
    schedule = as_schedule(sched)
    horizon, prec = _defaults(horizon, prec)
    engine = SeriesEngine(s, horizon, prec, majorant)
    indices: Dict[str, int] = {}
    if s.closed_form:
        difference = _closed_form_difference(s, L)
        if difference is None:
            return Verdict.undecided(note="closed form outside the rational fragment")
        for eps in schedule:
            M, violation = _closed_form_index(difference, eps, engine.base)
            if violation is not None:
                return Verdict.refuted(witness={"n": violation, "eps": eps, "L": L},
                                       note=f"|S_n - L| >= {format_rat(eps)} for every n >= {violation}")
            if M is None:
                return Verdict.undecided(note=f"no M found for eps={format_rat(eps)}")
            indices[format_rat(eps)] = M
        return _proved_indices(s, L, indices)
    for eps in schedule:
        verdict = _term_series_index(engine, L, eps)
        if isinstance(verdict, Verdict):
            return verdict
        indices[format_rat(eps)] = verdict
    return _proved_indices(s, L, indices)


def _proved_indices(s: SeqExpr, L: Fraction, indices: Dict[str, int]) -> Verdict:
    logger.info(f"weierstrass_converges({s.term}, L={L}): PROVED")
    return Verdict.proved(value=L, enclosure=RatInterval.point(L), certificate={"M": indices},
                          note="M found for every eps")


def _term_series_index(engine: SeriesEngine, L: Fraction, eps: Fraction):
    """M for one eps, or a verdict that ends the search."""
    def deviation(N: int) -> Optional[Tuple[RatInterval, Fraction]]:
        certificate = engine.tail(N)
        if certificate is None:
            return None
        return engine.sums.sum(N) - L, certificate.bound

    def passes(N: int) -> bool:
        found = deviation(N)
        return found is not None and found[0].magnitude + found[1] < eps

    previous = engine.base - 1
    for N in engine.candidates():
        found = deviation(N)
        if found is None:
            previous = N
            continue
        offset, bound = found
        if offset.magnitude + bound < eps:
            return _smallest(passes, previous, N) if previous >= engine.base else N
        # every S_n with n > N lies in S_N +/- bound
        if (offset + RatInterval(-bound, bound)).mignitude >= eps:
            return Verdict.refuted(
                witness={"n": N + 1, "eps": eps, "L": L, "S_N": engine.sums.sum(N), "tail": bound},
                note=f"every S_n with n > {N} stays {format_rat(eps)} away from L",
            )
        previous = N
    return Verdict.undecided(note=f"no certified M up to the horizon {engine.horizon} for eps={format_rat(eps)}")


def _require_nonnegative(engine: SeriesEngine) -> None:
    for n in range(engine.s.offset, engine.base + 1):
        if engine.sums.term(n).hi < 0:
            raise NotNonNegative(f"term {n} is negative", index=n)
    if not engine.nonnegative():
        raise NotNonNegative(f"cannot certify that the terms beyond {engine.base} are non-negative")


def nonneg_bounded_verdict(s: SeqExpr, horizon: Optional[int] = None, prec: Optional[int] = None,
                           majorant: Optional[Tuple[Fraction, Fraction]] = None) -> Verdict:
    """
    A series of non-negative terms converges iff its partial sums are bounded.

    Returns:
        Verdict: PROVED with note ``converges`` and an enclosure of the sum, or
        PROVED with note ``diverges``; UNDECIDED when neither is certified

    Raises:
        NotNonNegative: If the terms cannot be certified non-negative
    """
    horizon, prec = _defaults(horizon, prec)
    engine = SeriesEngine(s, horizon, prec, majorant)
    _require_nonnegative(engine)
    width = Fraction(1, 2 ** prec)
    if s.closed_form:
        formula = s.rational_term()
        if formula is not None and s.ratio == 1 and decay_order(formula) < 0:
            return Verdict.proved(note=DIVERGES, certificate=TailCertificate("growth", engine.base, None, DIVERGES))
        N = engine.base
        while N <= MAX_INDEX:
            values = closed_form_range(s, N)
            if values is None:
                break
            if values.width <= width or N >= MAX_INDEX // 2:
                enclosure = RatInterval(max(values.lo, engine.sums.sum(engine.base).lo), values.hi)
                return Verdict.proved(note=CONVERGES, enclosure=enclosure,
                                      certificate=TailCertificate("closed-form", N, values.width, CONVERGES))
            N *= 2
        return Verdict.undecided(note="closed form could not be bounded")
    for N in (engine.base, engine.horizon):
        growth = growth_certificate(s, N)
        if growth is not None:
            logger.info(f"nonneg_bounded_verdict({s.term}): diverges ({growth.method})")
            return Verdict.proved(note=DIVERGES, certificate=growth)
    found = engine.sum_enclosure(width, nonnegative=True)
    if found is None:
        return Verdict.undecided(note=f"no tail certificate up to the horizon {horizon}")
    enclosure, certificate = found
    logger.info(f"nonneg_bounded_verdict({s.term}): converges to {enclosure}")
    return Verdict.proved(note=CONVERGES, enclosure=enclosure, certificate=certificate)


def _upper_bound(engine: SeriesEngine) -> Optional[Fraction]:
    """sup S_n for non-negative terms, if certified."""
    if not engine.nonnegative():
        return None
    if engine.s.closed_form:
        values = closed_form_range(engine.s, engine.base)
        if values is None:
            return None
        return max([values.hi] + [engine.sums.sum(n).hi for n in range(engine.s.offset, engine.base + 1)])
    found = engine.sum_enclosure(COARSE_TAIL, nonnegative=True)
    return None if found is None else found[0].hi


def _stays_above(engine: SeriesEngine, m: int) -> bool:
    """Every S_n with n > m is at least S_m."""
    s = engine.s
    start = max(m + 1, engine.base)
    for n in range(m + 1, start):
        if engine.sums.term(n).lo < 0:
            return False
    if s.closed_form:
        return closed_form_increments_nonnegative(s, start)
    return nonnegative_beyond(s, start)


def diverges_to_infinity(s: SeqExpr, B_sched: Optional[Sequence] = None, horizon: Optional[int] = None,
                         prec: Optional[int] = None) -> Verdict:
    """
    For every B some M has S_n > B for all n > M.

    Returns:
        Verdict: PROVED with the least such M for every B, REFUTED when the
        sums are certified to stay at most B
    """
    bounds = [as_rat(b) for b in (DEFAULT_BOUNDS if B_sched is None else B_sched)]
    if any(later <= earlier for earlier, later in zip(bounds, bounds[1:])):
        raise ValueError("bounds must be strictly ascending")
    horizon, prec = _defaults(horizon, prec)
    engine = SeriesEngine(s, horizon, prec)
    supremum = _upper_bound(engine)
    indices: Dict[str, int] = {}
    for B in bounds:
        if supremum is not None and supremum <= B:
            return Verdict.refuted(witness={"B": B, "sup": supremum},
                                   note=f"partial sums never exceed {format_rat(B)}")
        m = next((n for n in range(s.offset, horizon + 1) if engine.sums.sum(n).lo > B), None)
        if m is None:
            return Verdict.undecided(note=f"S_n does not exceed {format_rat(B)} up to the horizon {horizon}")
        if not _stays_above(engine, m):
            return Verdict.undecided(note=f"cannot certify that S_n stays above {format_rat(B)} after {m}")
        # m is the first index above B, so n > m - 1 covers it
        indices[format_rat(B)] = m - 1
    logger.info(f"diverges_to_infinity({s.term}): PROVED")
    return Verdict.proved(certificate={"M": indices}, note="M found for every B")


def nsa_series_verdict(s: SeqExpr, L=None, prec: Optional[int] = None,
                       trunc_order: Optional[Fraction] = None) -> Verdict:
    """
    Read convergence off the canonical infinite index N = 1/eps.

    A closed form converges iff S_N is limited (then L = st S_N). For a
    rational term with |ratio| = 1 the order of a_N in eps decides: at least 2
    converges, otherwise the series diverges. That reading needs a_N > 0, so
    alternating or negative terms are UNDECIDED.
    """
    from nonstd.config import get_settings
    settings = get_settings()
    order = settings.trunc_order if trunc_order is None else as_rat(trunc_order)
    prec = settings.prec if prec is None else prec
    target = None if L is None else as_rat(L)
    index = lc_inv(epsilon(order))
    if s.closed_form:
        if s.ratio != 1:
            return Verdict.undecided(note="closed forms with a geometric factor are not expanded")
        try:
            value = eval_lc(s.term, index, prec, order)
        except (ExprError, LCError) as e:
            return Verdict.undecided(note=f"S_N could not be expanded: {e}")
        if is_provably_large(value):
            if target is not None:
                return Verdict.refuted(witness={"S_N": str(value)}, note="S_N is unlimited")
            return Verdict.proved(note=DIVERGES)
        if not is_limited_interval(value):
            return Verdict.undecided(note=f"S_N = {value} is not provably limited")
        if target is None:
            limit = standard_part(value.center)
            return Verdict.proved(value=limit, enclosure=RatInterval.point(limit), note=CONVERGES)
        verdict = i_close_verdict(value, LCInterval.exact(LCNumber.constant(target, order)))
        if verdict.status is Status.PROVED:
            return Verdict.proved(value=target, enclosure=RatInterval.point(target), note=CONVERGES)
        return verdict
    if s.rational_term() is None:
        return Verdict.undecided(note="term outside the rational fragment")
    try:
        term = eval_lc(s.term, index, prec, order)
    except (ExprError, LCError) as e:
        return Verdict.undecided(note=f"a_N could not be expanded: {e}")
    if term.center.is_zero and term.radius.is_zero:
        outcome = CONVERGES
    elif abs(s.ratio) < 1:
        outcome = CONVERGES
    elif abs(s.ratio) > 1:
        outcome = DIVERGES
    elif s.ratio < 0 or not (term.center.sign() > 0 and lc_sub(term.center, term.radius).sign() > 0):
        return Verdict.undecided(note="the non-negative criterion does not apply: a_N is not provably positive")
    else:
        outcome = CONVERGES if term.center.leading_exponent >= 2 else DIVERGES
    if outcome == DIVERGES and target is not None:
        return Verdict.refuted(witness={"a_N": str(term)}, note="the series diverges")
    if outcome == CONVERGES and target is not None:
        return Verdict.undecided(note="the limit is not determined by the term at N")
    return Verdict.proved(note=outcome)
