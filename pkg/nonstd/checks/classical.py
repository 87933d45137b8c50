"""
Classical epsilon-delta checkers.

For a given eps a candidate delta = 2**-j is certified by interval evaluation
of |f - L|, either over the whole ball around a or over the nested annuli
2**-(k+1) <= |x - a| <= 2**-k below it. Refutation needs certified
violations that persist into the innermost annuli of the search budget.
"""

import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Tuple

from nonstd.core.rat_interval import RatInterval
from nonstd.core.rational import as_rat, format_rat, parse_rat
from nonstd.core.verdict import Status, Verdict
from nonstd.errors import DomainError, EnclosureUnbounded, ExprError, LCError, NotRational, UsageError
from nonstd.expr.evaluate import eval_dual, eval_interval, eval_rat
from nonstd.expr.nodes import Const, Div, Expr, Sub, X
from nonstd.expr.rational import Poly, RationalFunction, range_enclosure, to_rational_function

logger = logging.getLogger(__name__)

# Low-discrepancy step for witness sampling, close to the golden ratio conjugate
GOLDEN = Fraction(610, 987)
# Annuli whose bounds must be non-increasing (and whose witnesses must persist)
TREND_WINDOW = 5
WITNESS_SAMPLES = 64


@dataclass(frozen=True)
class EpsSchedule:
    """
    Strictly descending positive epsilons.

    Attributes:
        values (Tuple[Fraction, ...]): The schedule
    """
    values: Tuple[Fraction, ...]

    def __post_init__(self):
        values = tuple(as_rat(v) for v in self.values)
        object.__setattr__(self, 'values', values)
        if not values:
            raise ValueError("an eps schedule needs at least one value")
        if any(v <= 0 for v in values):
            raise ValueError("eps values must be positive")
        if any(later >= earlier for earlier, later in zip(values, values[1:])):
            raise ValueError("eps values must be strictly descending")

    @classmethod
    def default(cls) -> 'EpsSchedule':
        from nonstd.config import get_settings
        return cls(tuple(get_settings().eps_schedule))

    @classmethod
    def parse(cls, text: str) -> 'EpsSchedule':
        """Comma separated rationals, e.g. ``1/10,1/1000``."""
        try:
            return cls(tuple(parse_rat(item) for item in text.split(',') if item.strip()))
        except ValueError as e:
            raise UsageError(f"invalid eps schedule {text!r}: {e}") from e

    @property
    def last(self) -> Fraction:
        return self.values[-1]

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class DeltaCertificate:
    """
    A delta certified for one eps.

    Attributes:
        eps (Fraction): The tolerance
        delta (Fraction): 0 < |x - a| < delta implies |f(x) - L| < eps
        depth (int): Annuli verified below delta; 0 when the whole ball was
            enclosed at once and no extrapolation was used
        cells_checked (int): Interval evaluations spent
        bound (Optional[Fraction]): Certified upper bound of |f - L| on the region
    """
    eps: Fraction
    delta: Fraction
    depth: int
    cells_checked: int
    bound: Optional[Fraction] = None

    def __post_init__(self):
        if self.delta <= 0:
            raise ValueError("delta must be positive")

    def to_dict(self) -> Dict[str, object]:
        data: Dict[str, object] = {
            "eps": format_rat(self.eps),
            "delta": format_rat(self.delta),
            "depth": self.depth,
            "cells_checked": self.cells_checked,
        }
        if self.bound is not None:
            data["bound"] = format_rat(self.bound)
        return data


def format_certificate(certificate: DeltaCertificate) -> str:
    """Line oriented record, one ``key=value`` per line."""
    lines = [f"{key}={value}" for key, value in certificate.to_dict().items()]
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> DeltaCertificate:
    """
    Inverse of format_certificate.

    Raises:
        UsageError: On missing or malformed fields
    """
    fields: Dict[str, str] = {}
    for line in text.splitlines():
        if not line.strip():
            continue
        key, sep, value = line.partition('=')
        if not sep:
            raise UsageError(f"certificate line {line!r} is not key=value")
        fields[key.strip()] = value.strip()
    try:
        return DeltaCertificate(
            eps=parse_rat(fields["eps"]),
            delta=parse_rat(fields["delta"]),
            depth=int(fields["depth"]),
            cells_checked=int(fields["cells_checked"]),
            bound=parse_rat(fields["bound"]) if "bound" in fields else None,
        )
    except KeyError as e:
        raise UsageError(f"certificate is missing the field {e.args[0]}") from e
    except ValueError as e:
        raise UsageError(f"malformed certificate: {e}") from e


class CellOutcome(NamedTuple):
    passed: bool
    bound: Fraction
    cells: int


def _golden_fraction(m: int) -> Fraction:
    value = m * GOLDEN
    return value - (value.numerator // value.denominator)


class LimitVerifier:
    """
    Certifies 0 < |x - a| < delta => |f(x) - L| < eps.

    Rational-only f is rewritten as a rational function of t = x - a with the
    common powers of t cancelled, which removes removable singularities at a.

    Attributes:
        f (Expr): The function
        a (Fraction): The point
        target (Fraction): The candidate limit L
    """

    def __init__(self, f: Expr, a: Fraction, target: Fraction, prec: int, max_depth: int, max_halvings: int,
                 bisection_depth: int):
        self.f = f
        self.a = a
        self.target = target
        self.prec = prec
        self.max_depth = max_depth
        self.max_halvings = max_halvings
        self.bisection_depth = bisection_depth
        self.deviation = Sub(f, Const(target))
        self.rational = self._rational_form()
        self._annuli: Dict[Tuple[Fraction, int], CellOutcome] = {}

    def _rational_form(self) -> Optional[RationalFunction]:
        try:
            difference = to_rational_function(self.f) - RationalFunction.polynomial(Poly.constant(self.target))
            return difference.shift(self.a)
        except (NotRational, DomainError):
            return None

    def _enclose(self, cell: RatInterval) -> Optional[RatInterval]:
        """Enclosure of f - L for x - a in the cell; None when unbounded."""
        if self.rational is not None:
            return self.rational.enclose(cell)
        try:
            return eval_interval(self.deviation, cell + self.a, self.prec)
        except EnclosureUnbounded:
            return None

    def ball_bound(self, delta: Fraction) -> Optional[Fraction]:
        cell = RatInterval(-delta, delta)
        if self.rational is not None:
            enclosure = range_enclosure(self.rational, cell, self.bisection_depth)
        else:
            try:
                enclosure = eval_interval(self.deviation, cell + self.a, self.prec)
            except ExprError:
                return None
        return None if enclosure is None else enclosure.magnitude

    def cell_bound(self, cell: RatInterval, eps: Fraction, depth: int) -> CellOutcome:
        """Depth first bisection; stops at the first cell that cannot pass."""
        try:
            enclosure = self._enclose(cell)
        except DomainError:
            # undefined on the whole cell: nothing to check
            return CellOutcome(True, Fraction(0), 1)
        if enclosure is not None:
            if enclosure.magnitude < eps:
                return CellOutcome(True, enclosure.magnitude, 1)
            if enclosure.mignitude >= eps:
                return CellOutcome(False, enclosure.magnitude, 1)
        if depth == 0:
            return CellOutcome(False, Fraction(0), 1)
        left, right = cell.bisect()
        first = self.cell_bound(left, eps, depth - 1)
        if not first.passed:
            return CellOutcome(False, Fraction(0), 1 + first.cells)
        second = self.cell_bound(right, eps, depth - 1)
        if not second.passed:
            return CellOutcome(False, Fraction(0), 1 + first.cells + second.cells)
        return CellOutcome(True, max(first.bound, second.bound), 1 + first.cells + second.cells)

    def annulus(self, eps: Fraction, k: int) -> CellOutcome:
        """2**-(k+1) <= |x - a| <= 2**-k, both sides."""
        key = (eps, k)
        if key not in self._annuli:
            outer, inner = Fraction(1, 2 ** k), Fraction(1, 2 ** (k + 1))
            right = self.cell_bound(RatInterval(inner, outer), eps, self.bisection_depth)
            if right.passed:
                left = self.cell_bound(RatInterval(-outer, -inner), eps, self.bisection_depth)
                outcome = CellOutcome(left.passed, max(left.bound, right.bound), left.cells + right.cells)
            else:
                outcome = right
            logger.debug(f"annulus {k} at eps={eps}: passed={outcome.passed} bound={outcome.bound}")
            self._annuli[key] = outcome
        return self._annuli[key]

    def find_witness(self, k: int, eps: Fraction) -> Optional[Tuple[Fraction, RatInterval]]:
        """A point of annulus k where |f(x) - L| >= eps is certified."""
        outer, inner = Fraction(1, 2 ** k), Fraction(1, 2 ** (k + 1))
        for m in range(1, WITNESS_SAMPLES + 1):
            t = inner + (outer - inner) * _golden_fraction(m)
            for x in (self.a + t, self.a - t):
                try:
                    value = eval_rat(self.f, x, self.prec)
                except ExprError:
                    continue
                if value.lo - self.target >= eps or self.target - value.hi >= eps:
                    return x, value
        return None

    def verify(self, eps: Fraction, start_j: int = 0, slack: Fraction = Fraction(0)) -> Tuple[Verdict, int]:
        """
        Search delta = 2**-j from start_j on.

        Args:
            eps (Fraction): The tolerance
            start_j (int): First halving index, carried over from a larger eps
            slack (Fraction): Uncertainty of L itself; proofs use eps - slack and
                refutations eps + slack

        Returns:
            Tuple[Verdict, int]: The verdict and the halving index reached
        """
        prove_at, refute_at = eps - slack, eps + slack
        if prove_at <= 0:
            return Verdict.undecided(note=f"enclosure of L is wider than eps={eps}"), start_j
        j = start_j
        while j <= self.max_halvings:
            delta = Fraction(1, 2 ** j)
            bound = self.ball_bound(delta)
            if bound is not None and bound < prove_at:
                certificate = DeltaCertificate(eps, delta, 0, 1, bound)
                return Verdict.proved(value=self.target, certificate=certificate,
                                      note=f"ball of radius {delta} enclosed"), j
            outcomes: List[CellOutcome] = []
            failed_at = None
            for k in range(j, j + self.max_depth):
                outcome = self.annulus(prove_at, k)
                if not outcome.passed:
                    failed_at = k
                    break
                outcomes.append(outcome)
            if failed_at is not None:
                j = failed_at + 1
                continue
            trend = [outcome.bound for outcome in outcomes[-TREND_WINDOW:]]
            if all(later <= earlier for earlier, later in zip(trend, trend[1:])):
                certificate = DeltaCertificate(
                    eps, delta, self.max_depth, sum(o.cells for o in outcomes), max(o.bound for o in outcomes),
                )
                return Verdict.proved(value=self.target, certificate=certificate,
                                      note=f"{self.max_depth} annuli below {delta} bounded"), j
            j += 1
        return self._refute(eps, refute_at), j

    def _refute(self, eps: Fraction, refute_at: Fraction) -> Verdict:
        innermost = range(self.max_halvings - TREND_WINDOW + 1, self.max_halvings + 1)
        witnesses = []
        for k in innermost:
            found = self.find_witness(k, refute_at)
            if found is None:
                return Verdict.undecided(note=f"no delta found for eps={eps} and no persistent violation")
            witnesses.append(found)
        x, value = witnesses[-1]
        return Verdict.refuted(
            witness={"x": x, "f(x)": value, "L": self.target, "eps": eps, "annuli": len(witnesses)},
            note=f"|f(x) - L| >= {eps} in each of the {len(witnesses)} innermost annuli",
        )


def _budget(prec, max_depth, max_halvings, bisection_depth) -> Tuple[int, int, int, int]:
    from nonstd.config import get_settings
    settings = get_settings()
    return (
        settings.prec if prec is None else prec,
        settings.max_depth if max_depth is None else max_depth,
        settings.max_halvings if max_halvings is None else max_halvings,
        settings.bisection_depth if bisection_depth is None else bisection_depth,
    )


def as_schedule(sched) -> EpsSchedule:
    if sched is None:
        return EpsSchedule.default()
    if isinstance(sched, EpsSchedule):
        return sched
    return EpsSchedule(tuple(sched))


def ed_verify_limit(f: Expr, a, L, eps, max_depth: Optional[int] = None, prec: Optional[int] = None,
                    max_halvings: Optional[int] = None, bisection_depth: Optional[int] = None) -> Verdict:
    """
    Certify a delta for a single eps.

    Returns:
        Verdict: PROVED with a DeltaCertificate as certificate, REFUTED with a
        certified witness x, or UNDECIDED when the halving budget runs out
    """
    eps = as_rat(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    prec, max_depth, max_halvings, bisection_depth = _budget(prec, max_depth, max_halvings, bisection_depth)
    verifier = LimitVerifier(f, as_rat(a), as_rat(L), prec, max_depth, max_halvings, bisection_depth)
    verdict, _ = verifier.verify(eps)
    return verdict


def ed_limit(f: Expr, a, L, sched=None, prec: Optional[int] = None, max_depth: Optional[int] = None,
             max_halvings: Optional[int] = None, bisection_depth: Optional[int] = None,
             slack: Fraction = Fraction(0)) -> Verdict:
    """
    For every eps of the schedule there is a delta.

    Deltas only shrink along the schedule: the search for a smaller eps starts
    at the delta found for the previous one, and a certificate whose bound is
    already below the next eps is reused.

    Args:
        f (Expr): The function
        a: The point
        L: The candidate limit
        sched: EpsSchedule or descending rationals, default from settings
        prec (Optional[int]): Bits for transcendental enclosures
        max_depth (Optional[int]): Annuli verified below a candidate delta
        max_halvings (Optional[int]): Largest j of delta = 2**-j
        bisection_depth (Optional[int]): Bisection levels inside an annulus
        slack (Fraction): Radius of an enclosure of L

    Returns:
        Verdict: PROVED with the list of certificates, REFUTED at the first
        refuted eps, otherwise UNDECIDED
    """
    a, L = as_rat(a), as_rat(L)
    schedule = as_schedule(sched)
    prec, max_depth, max_halvings, bisection_depth = _budget(prec, max_depth, max_halvings, bisection_depth)
    verifier = LimitVerifier(f, a, L, prec, max_depth, max_halvings, bisection_depth)
    certificates: List[DeltaCertificate] = []
    undecided: Optional[Verdict] = None
    previous: Optional[DeltaCertificate] = None
    start_j = 0
    for eps in schedule:
        if previous is not None and previous.bound is not None and previous.bound < eps - slack:
            previous = replace(previous, eps=eps)
            certificates.append(previous)
            continue
        verdict, start_j = verifier.verify(eps, start_j, slack)
        if verdict.status is Status.REFUTED:
            logger.info(f"ed_limit({f}, a={a}, L={L}): REFUTED at eps={eps}")
            return verdict
        if verdict.status is Status.UNDECIDED:
            undecided = undecided or verdict
            continue
        previous = verdict.certificate
        certificates.append(previous)
    if undecided is not None:
        logger.info(f"ed_limit({f}, a={a}, L={L}): UNDECIDED {undecided.note}")
        return undecided
    logger.info(f"ed_limit({f}, a={a}, L={L}): PROVED for {len(schedule)} eps values")
    return Verdict.proved(value=L, enclosure=RatInterval.point(L), certificate=certificates,
                          note=f"delta certified for every eps down to {format_rat(schedule.last)}")


def ed_continuity(f: Expr, a, sched=None, prec: Optional[int] = None, extend_zero: bool = False,
                  **budget) -> Verdict:
    """ed_limit with L the midpoint of an enclosure of f(a) and its radius as slack."""
    a = as_rat(a)
    try:
        at_point = eval_rat(f, a, prec)
    except DomainError as e:
        if not extend_zero:
            return Verdict.refuted(witness={"a": a, "reason": e.reason}, note="not defined at a")
        at_point = RatInterval.point(0)
    return ed_limit(f, a, at_point.mid, sched, prec, slack=at_point.radius, **budget)


def difference_quotient(f: Expr, a: Fraction, at_point: Fraction) -> Expr:
    """(f(x) - f(a)) / (x - a) with f(a) given."""
    return Div(Sub(f, Const(at_point)), Sub(X, Const(a)))


def _mean_value_route(f: Expr, v: Fraction, a: Fraction, schedule: EpsSchedule, prec: int,
                      max_halvings: int) -> Optional[Verdict]:
    """The quotient lies in the hull of the slope over [a - delta, a + delta]."""
    certificates: List[DeltaCertificate] = []
    j = 0
    for eps in schedule:
        while j <= max_halvings:
            delta = Fraction(1, 2 ** j)
            try:
                slope = eval_dual(f, RatInterval(a - delta, a + delta), prec).slope
            except (ExprError, LCError, ZeroDivisionError):
                slope = None
            if slope is not None and (slope - v).magnitude < eps:
                certificates.append(DeltaCertificate(eps, delta, 0, 1, (slope - v).magnitude))
                break
            j += 1
        else:
            return None
    return Verdict.proved(value=v, enclosure=RatInterval.point(v), certificate=certificates,
                          note="slope enclosure over the ball within eps (mean value)")


def ed_derivative(f: Expr, fprime_value, a, sched=None, prec: Optional[int] = None, extend_zero: bool = False,
                  **budget) -> Verdict:
    """
    The difference quotient tends to fprime_value.

    Tries the mean value route first; otherwise runs ed_limit on the quotient
    expression, which needs an exact f(a).
    """
    a, v = as_rat(a), as_rat(fprime_value)
    schedule = as_schedule(sched)
    prec, max_depth, max_halvings, bisection_depth = _budget(
        prec, budget.get('max_depth'), budget.get('max_halvings'), budget.get('bisection_depth'),
    )
    try:
        at_point = eval_rat(f, a, prec)
    except DomainError as e:
        if not extend_zero:
            return Verdict.refuted(witness={"a": a, "reason": e.reason}, note="not defined at a")
        at_point = RatInterval.point(0)
    else:
        mean_value = _mean_value_route(f, v, a, schedule, prec, max_halvings)
        if mean_value is not None:
            logger.info(f"ed_derivative({f}, a={a}): PROVED by the mean value route")
            return mean_value
    if not at_point.is_point():
        return Verdict.undecided(note=f"f(a) is only known as {at_point}")
    quotient = difference_quotient(f, a, at_point.lo)
    return ed_limit(quotient, a, v, schedule, prec, max_depth, max_halvings, bisection_depth)


def resample_certificate(f: Expr, a, L, certificate: DeltaCertificate, samples: int = 10_000,
                         prec: Optional[int] = None) -> Verdict:
    """
    Re-check a certificate at low-discrepancy points of the punctured ball.

    Returns:
        Verdict: PROVED when no sample violates it, REFUTED with the first
        certified violation, UNDECIDED when a sample enclosure straddles eps
    """
    a, L = as_rat(a), as_rat(L)
    eps, delta = certificate.eps, certificate.delta
    undecided: Optional[Fraction] = None
    for m in range(1, samples // 2 + 1):
        t = delta * _golden_fraction(m)
        for x in (a + t, a - t):
            try:
                value = eval_rat(f, x, prec)
            except ExprError:
                continue
            deviation = value - L
            if deviation.magnitude < eps:
                continue
            if deviation.mignitude >= eps:
                return Verdict.refuted(witness={"x": x, "f(x)": value, "eps": eps},
                                       note="certificate violated at a sample point")
            undecided = undecided if undecided is not None else x
    if undecided is not None:
        return Verdict.undecided(note=f"sample at {format_rat(undecided)} is too close to eps to decide")
    return Verdict.proved(value=L, note=f"{samples} samples within eps")
