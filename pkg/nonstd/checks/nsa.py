"""
Non-standard checkers.

The universally quantified "for every x infinitely close to a" is sampled by
a ProbeSet of infinitesimal offsets. Each probe is evaluated in the
Levi-Civita field; values are compared with infinite closeness. REFUTED
verdicts carry the probes and values that witness them.
"""

import logging
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple, Union

from nonstd.checks.probes import Pair, ProbeSet, default_pairs, validate_pairs
from nonstd.core.lc_interval import (
    LCInterval,
    i_close_verdict,
    interval_div,
    interval_sub,
    is_limited_interval,
    is_provably_large,
)
from nonstd.core.lc_number import LCNumber, format_lc, lc_add, lc_sub, standard_part
from nonstd.core.rat_interval import RatInterval
from nonstd.core.rational import as_rat
from nonstd.core.verdict import Status, Verdict
from nonstd.errors import DomainError, ExprError, LCError
from nonstd.expr.evaluate import eval_rat
from nonstd.expr.lc_eval import Increment, eval_increment, eval_lc
from nonstd.expr.nodes import Expr

logger = logging.getLogger(__name__)

Labelled = Tuple[str, LCInterval]


class ProbeEvaluator:
    """
    Evaluates f near a and caches the results per offset.

    Attributes:
        f (Expr): The function
        a (Fraction): The standard point
        prec (int): Bits for transcendental coefficients
        order (Fraction): Truncation order
        extend_zero (bool): Take f(a) = 0 where f is undefined at a
    """

    def __init__(self, f: Expr, a: Fraction, prec: Optional[int] = None, trunc_order: Optional[Fraction] = None,
                 extend_zero: bool = False):
        from nonstd.config import get_settings
        settings = get_settings()
        self.f = f
        self.a = as_rat(a)
        self.prec = settings.prec if prec is None else prec
        self.order = settings.trunc_order if trunc_order is None else as_rat(trunc_order)
        self.extend_zero = extend_zero
        self._cache: Dict[LCNumber, Union[LCInterval, str]] = {}
        self._increments: Dict[LCNumber, Optional[Increment]] = {}

    def point(self, h: LCNumber) -> LCNumber:
        return lc_add(LCNumber.constant(self.a, self.order), h)

    def value(self, h: LCNumber) -> Union[LCInterval, str]:
        """f(a + h), or the reason it could not be evaluated."""
        if h not in self._cache:
            try:
                result: Union[LCInterval, str] = eval_lc(self.f, self.point(h), self.prec, self.order)
            except DomainError as e:
                if h.is_zero and self.extend_zero:
                    result = LCInterval.exact(LCNumber.zero(self.order))
                else:
                    result = f"domain error: {e.reason}"
            except (ExprError, LCError) as e:
                result = str(e)
            logger.debug(f"f({format_lc(self.point(h))}) = {result}")
            self._cache[h] = result
        return self._cache[h]

    def increment(self, h: LCNumber) -> Optional[Increment]:
        """f(a + h) as f(a) + h (f'(a) + rest), when f expands around a."""
        if h not in self._increments:
            self._increments[h] = eval_increment(self.f, self.a, h, self.prec, self.order)
        return self._increments[h]

    def shared(self, offsets: Sequence[LCNumber]) -> Optional[List[Increment]]:
        """Increments at every offset, or None unless all of them share f(a) and f'(a)."""
        increments = [self.increment(h) for h in offsets]
        if not increments or any(item is None for item in increments):
            return None
        if len({(item.base, item.slope) for item in increments}) > 1:
            return None
        return increments

    def quotient(self, h: LCNumber) -> Union[LCInterval, str]:
        """(f(a + h) - f(a)) / h"""
        return self.cross_quotient(LCNumber.zero(self.order), h)

    def cross_quotient(self, h1: LCNumber, h2: LCNumber) -> Union[LCInterval, str]:
        """(f(a + h2) - f(a + h1)) / (h2 - h1)"""
        first, second = self.value(h1), self.value(h2)
        for item in (first, second):
            if isinstance(item, str):
                return item
        try:
            return interval_div(interval_sub(second, first), LCInterval.exact(lc_sub(h2, h1)))
        except LCError as e:
            return str(e)


def _large_witness(label: str, value: LCInterval, what: str) -> Verdict:
    return Verdict.refuted(
        witness={"probe": label, "value": str(value)},
        note=f"{what} is unlimited at {label}",
    )


def _close(first: Labelled, second: Labelled, what: str) -> Verdict:
    verdict = i_close_verdict(first[1], second[1])
    if verdict.status is Status.REFUTED:
        return Verdict.refuted(
            witness={"probes": [first[0], second[0]], "values": [str(first[1]), str(second[1])],
                     "gap": verdict.witness["gap"]},
            note=f"{what} at {first[0]} and {second[0]} are not infinitely close",
        )
    return verdict


def aggregate(values: Sequence[Labelled], failures: Sequence[Tuple[str, str]], what: str,
              target: Optional[Labelled] = None, shared: Optional[RatInterval] = None) -> Verdict:
    """
    Combine probe values into one verdict.

    A provably unlimited value or a certified standard gap refutes; failed
    evaluations and values that are not provably limited leave the question
    open; otherwise every value must be infinitely close to the others (or to
    the target).

    With shared, each value is the offset of the real quantity from one
    standard real enclosed by shared; the verdict then reports the enclosure
    shared + st(offset), and an exact value only when that is a point.
    """
    for label, value in values:
        if is_provably_large(value):
            return _large_witness(label, value, what)
    limited = [(label, value) for label, value in values if is_limited_interval(value)]
    if target is not None:
        comparisons = [_close(item, target, what) for item in limited]
    else:
        comparisons = [_close(first, second, what) for first, second in combinations(limited, 2)]
    refutations = [verdict for verdict in comparisons if verdict.status is Status.REFUTED]
    if refutations:
        return refutations[0]
    if failures:
        label, reason = failures[0]
        return Verdict.undecided(note=f"{what} at {label} could not be evaluated: {reason}")
    if len(limited) < len(values):
        label = next(label for label, value in values if not is_limited_interval(value))
        return Verdict.undecided(note=f"{what} at {label} is not provably limited")
    combined = Verdict.combine(comparisons)
    if combined.status is not Status.PROVED:
        return combined
    value = standard_part(values[0][1].center)
    if shared is None:
        return Verdict.proved(value=value, enclosure=RatInterval.point(value),
                              note=f"{what} infinitely close to {value} at every probe")
    enclosure = shared + value
    exact = enclosure.lo if enclosure.is_point() else None
    return Verdict.proved(value=exact, enclosure=enclosure,
                          note=f"{what} infinitely close to a real in {enclosure} at every probe")


def _collect(results: Sequence[Tuple[str, Union[LCInterval, str]]]) -> Tuple[List[Labelled], List[Tuple[str, str]]]:
    values = [(label, item) for label, item in results if not isinstance(item, str)]
    failures = [(label, item) for label, item in results if isinstance(item, str)]
    return values, failures


def _sampled(evaluator: ProbeEvaluator, offsets: Sequence[LCNumber], quotient: bool,
             split: bool = True) -> Tuple[List[Labelled], List[Tuple[str, str]], Optional[RatInterval]]:
    """
    f(a + h), or the difference quotient at h, for every offset.

    When f expands around a at every offset the labelled values are the
    parts moving with h and the third item encloses f(a) (or f'(a)); with
    split False the full values are returned instead.
    """
    increments = evaluator.shared(offsets)
    if increments is None:
        method = evaluator.quotient if quotient else evaluator.value
        values, failures = _collect([(format_lc(h), method(h)) for h in offsets])
        return values, failures, None
    if not split:
        return [(format_lc(i.h), i.quotient if quotient else i.value) for i in increments], [], None
    if quotient:
        return [(format_lc(i.h), i.rest) for i in increments], [], increments[0].slope
    return [(format_lc(i.h), i.rise) for i in increments], [], increments[0].base


def _probes(probes: Optional[ProbeSet], order: Fraction) -> ProbeSet:
    return ProbeSet.default(order) if probes is None else probes


def _log(name: str, f: Expr, a: Fraction, verdict: Verdict) -> Verdict:
    logger.info(f"{name}({f}, a={a}): {verdict.status.value} {verdict.note}")
    return verdict


def nsa_limit(f: Expr, a, probes: Optional[ProbeSet] = None, prec: Optional[int] = None,
              trunc_order: Optional[Fraction] = None) -> Verdict:
    """
    x ~ a, x != a implies f(x) ~ L, with L read off the first probe.

    Returns:
        Verdict: PROVED with the limit as value (or as an enclosure when it
        is only known up to one), REFUTED with the witnessing probes,
        UNDECIDED on indeterminacy or evaluation failures
    """
    evaluator = ProbeEvaluator(f, a, prec, trunc_order)
    probes = _probes(probes, evaluator.order)
    values, failures, shared = _sampled(evaluator, probes.offsets, quotient=False)
    return _log("nsa_limit", f, evaluator.a, aggregate(values, failures, "f", shared=shared))


def _value_at(evaluator: ProbeEvaluator) -> Union[LCInterval, str]:
    return evaluator.value(LCNumber.zero(evaluator.order))


def nsa_continuity(f: Expr, a, probes: Optional[ProbeSet] = None, prec: Optional[int] = None,
                   trunc_order: Optional[Fraction] = None, extend_zero: bool = False) -> Verdict:
    """
    Continuity as a limit whose value is f(a).

    f undefined at a gives UNDECIDED unless extend_zero supplies f(a) = 0.
    """
    a = as_rat(a)
    try:
        at_point = eval_rat(f, a, prec)
    except DomainError as e:
        if not extend_zero:
            return _log("nsa_continuity", f, a, Verdict.undecided(note=f"not defined at a: {e.reason}"))
        at_point = RatInterval.point(0)
    evaluator = ProbeEvaluator(f, a, prec, trunc_order)
    increments = evaluator.shared(_probes(probes, evaluator.order).offsets)
    if increments is not None:
        zero = LCInterval.exact(LCNumber.zero(evaluator.order))
        rises = [(format_lc(item.h), item.rise) for item in increments]
        verdict = aggregate(rises, [], "f(x) - f(a)", target=("f(a)", zero), shared=increments[0].base)
        if verdict.status is Status.PROVED:
            verdict = verdict.with_note("f(x) is infinitely close to f(a) at every offset")
        return _log("nsa_continuity", f, a, verdict)
    limit = nsa_limit(f, a, probes, prec, trunc_order)
    if limit.status is not Status.PROVED:
        return _log("nsa_continuity", f, a, limit)
    found = limit.enclosure if limit.value is None else limit.value
    if limit.value is not None and at_point.is_point() and at_point.lo == limit.value:
        verdict = Verdict.proved(value=limit.value, enclosure=limit.enclosure, note="limit equals f(a)")
    elif at_point.intersect(limit.enclosure) is None:
        verdict = Verdict.refuted(witness={"limit": found, "f(a)": at_point}, note="limit differs from f(a)")
    else:
        verdict = Verdict.undecided(note=f"limit {found} lies in the enclosure {at_point} of f(a)")
    return _log("nsa_continuity", f, a, verdict)


def nsa_derivative(f: Expr, a, probes: Optional[ProbeSet] = None, prec: Optional[int] = None,
                   trunc_order: Optional[Fraction] = None, extend_zero: bool = False) -> Verdict:
    """
    f'(a) as the standard part of (f(a + h) - f(a)) / h.

    Args:
        f (Expr): The function
        a: The standard point
        probes (Optional[ProbeSet]): Offsets h, default {eps, -eps, 2eps, eps^2, eps + eps^3}
        prec (Optional[int]): Bits for transcendental coefficients
        trunc_order (Optional[Fraction]): Truncation order
        extend_zero (bool): Take f(a) = 0 where f is undefined at a

    Returns:
        Verdict: PROVED with f'(a) as value (or as an enclosure when f'(a) is
        not rational) when every quotient is limited and all are infinitely
        close
    """
    evaluator = ProbeEvaluator(f, a, prec, trunc_order, extend_zero)
    probes = _probes(probes, evaluator.order)
    values, failures, shared = _sampled(evaluator, probes.offsets, quotient=True)
    verdict = aggregate(values, failures, "difference quotient", shared=shared)
    return _log("nsa_derivative", f, evaluator.a, verdict)


def nsa_derivative_against(f: Expr, fprime_value, a, probes: Optional[ProbeSet] = None, prec: Optional[int] = None,
                           trunc_order: Optional[Fraction] = None, extend_zero: bool = False) -> Verdict:
    """Every difference quotient is infinitely close to the given f'(a)."""
    evaluator = ProbeEvaluator(f, a, prec, trunc_order, extend_zero)
    probes = _probes(probes, evaluator.order)
    target_value = as_rat(fprime_value)
    target = ("f'(a)", LCInterval.exact(LCNumber.constant(target_value, evaluator.order)))
    values, failures, _ = _sampled(evaluator, probes.offsets, quotient=True, split=False)
    verdict = aggregate(values, failures, "difference quotient", target=target)
    if verdict.status is Status.PROVED:
        verdict = Verdict.proved(value=target_value, enclosure=RatInterval.point(target_value),
                                 note=f"every difference quotient is infinitely close to {target_value}")
    return _log("nsa_derivative_against", f, evaluator.a, verdict)


def _pair_label(pair: Pair) -> str:
    return f"({format_lc(pair[0])}, {format_lc(pair[1])})"


def nsa_differentiable_two_point(f: Expr, a, pair_probes: Optional[Sequence[Pair]] = None,
                                 prec: Optional[int] = None, trunc_order: Optional[Fraction] = None,
                                 extend_zero: bool = False) -> Verdict:
    """
    Differentiability without reference to f'.

    For each pair (h1, h2) the quotient through a at h1 must not be large and
    must be infinitely close to the quotient at h2.
    """
    evaluator = ProbeEvaluator(f, a, prec, trunc_order, extend_zero)
    if pair_probes is None:
        pair_probes = ProbeSet.default(evaluator.order).pairs()
    pairs = validate_pairs(pair_probes, anchored=False)
    verdicts: List[Verdict] = []
    for h1, h2 in pairs:
        label = _pair_label((h1, h2))
        values, failures, shared = _sampled(evaluator, (h1, h2), quotient=True)
        verdict = aggregate(values, failures, "difference quotient", shared=shared)
        logger.debug(f"pair {label}: {verdict.status.value}")
        verdicts.append(verdict)
    verdict = Verdict.combine(verdicts)
    if verdict.status is Status.PROVED:
        verdict = Verdict.proved(value=verdicts[0].value, enclosure=verdicts[0].enclosure,
                                 note=f"quotients agree on all {len(pairs)} pairs")
    return _log("nsa_differentiable_two_point", f, evaluator.a, verdict)


def eq1_check(f: Expr, fprime: Expr, a, pair_probes: Optional[Sequence[Pair]] = None, prec: Optional[int] = None,
              trunc_order: Optional[Fraction] = None, extend_zero: bool = False) -> Verdict:
    """
    Continuous differentiability: (f(x2) - f(x1)) / (x2 - x1) ~ f'(a) for
    x1 != x2 both infinitely close to a.

    Args:
        f (Expr): The function
        fprime (Expr): Its derivative
        a: The standard point
        pair_probes (Optional[Sequence[Pair]]): Offset pairs, anchored or not
        prec (Optional[int]): Bits for transcendental coefficients
        trunc_order (Optional[Fraction]): Truncation order
        extend_zero (bool): Take f(a) = 0 and f'(a) = 0 where undefined at a

    Returns:
        Verdict: PROVED with f'(a) as value when every cross quotient is
        infinitely close to it
    """
    evaluator = ProbeEvaluator(f, a, prec, trunc_order, extend_zero)
    pairs = validate_pairs(default_pairs(evaluator.order) if pair_probes is None else pair_probes)
    derivative = ProbeEvaluator(fprime, evaluator.a, evaluator.prec, evaluator.order, extend_zero)
    target = _value_at(derivative)
    if isinstance(target, str):
        return _log("eq1_check", f, evaluator.a, Verdict.undecided(note=f"f'(a) could not be evaluated: {target}"))
    results = [(_pair_label(pair), evaluator.cross_quotient(*pair)) for pair in pairs]
    values, failures = _collect(results)
    verdict = aggregate(values, failures, "cross quotient", target=("f'(a)", target))
    if verdict.status is Status.PROVED:
        value = standard_part(target.center)
        verdict = Verdict.proved(value=value, enclosure=RatInterval.point(value),
                                 note=f"cross quotients over {len(pairs)} pairs are infinitely close to f'(a)")
    return _log("eq1_check", f, evaluator.a, verdict)


def dq_gap_xn(n: int, x, e) -> Fraction:
    """
    ((x + e)^n - x^n) / e - n x^(n-1), exactly.

    Raises:
        ValueError: If e is zero or n is not positive
    """
    x, e = as_rat(x), as_rat(e)
    if e == 0:
        raise ValueError("e must be nonzero")
    if n < 1:
        raise ValueError("n must be a positive integer")
    return ((x + e) ** n - x ** n) / e - n * x ** (n - 1)
