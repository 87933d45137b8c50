"""
Command dispatch shared by the command line and the HTTP API.

Every command takes a validated RunConfig and returns a CheckReport.
"""

import logging
from fractions import Fraction
from typing import Callable, Dict, Optional

from nonstd.checks import (
    EpsSchedule,
    ProbeSet,
    dq_gap_xn,
    ed_continuity,
    ed_derivative,
    ed_limit,
    eq1_check,
    nsa_continuity,
    nsa_derivative,
    nsa_derivative_against,
    nsa_differentiable_two_point,
    nsa_limit,
)
from nonstd.checks.probes import parse_pairs
from nonstd.core.rational import format_rat, parse_rat
from nonstd.core.verdict import Status, Verdict
from nonstd.errors import UsageError
from nonstd.expr import Expr, eval_rat, parse
from nonstd.models.report import CheckReport, RunConfig
from nonstd.riemann import classical_integral, ftc_check, nsa_integral
from nonstd.series import (
    SeqExpr,
    diverges_to_infinity,
    nonneg_bounded_verdict,
    nsa_series_verdict,
    partial_sums,
    weierstrass_converges,
)
from nonstd.series.sequence import parse_head

logger = logging.getLogger(__name__)


def _rat(text: Optional[str]) -> Optional[Fraction]:
    return None if text is None else parse_rat(text)


class CommandContext:
    """Parsed view of a RunConfig."""

    def __init__(self, config: RunConfig):
        self.config = config
        self.f: Optional[Expr] = parse(config.expression) if config.expression is not None else None
        self.prec = config.prec
        self.trunc_order = _rat(config.trunc_order)
        self.schedule = EpsSchedule.parse(config.schedule) if config.schedule else None
        self.probes = ProbeSet.parse(config.probes) if config.probes else None
        self.pairs = parse_pairs(config.pairs) if config.pairs else None

    @property
    def at(self) -> Fraction:
        return parse_rat(self.config.at)

    def fprime_value(self) -> Optional[Fraction]:
        """f'(a) from --value, else from --fprime evaluated at a."""
        if self.config.value is not None:
            return parse_rat(self.config.value)
        if self.config.fprime is None:
            return None
        enclosure = eval_rat(parse(self.config.fprime), self.at, self.prec)
        if not enclosure.is_point():
            raise UsageError(f"f'(a) is only known as {enclosure}; pass an exact --value")
        return enclosure.lo


def _limit(ctx: CommandContext) -> Verdict:
    L = _rat(ctx.config.L)
    if ctx.config.criterion == "classical":
        if L is None:
            raise UsageError("the classical limit check needs --L")
        return ed_limit(ctx.f, ctx.at, L, ctx.schedule, ctx.prec)
    verdict = nsa_limit(ctx.f, ctx.at, ctx.probes, ctx.prec, ctx.trunc_order)
    if L is None or verdict.status is not Status.PROVED:
        return verdict
    found = verdict.enclosure if verdict.value is None else verdict.value
    if not verdict.enclosure.contains(L):
        return Verdict.refuted(witness={"limit": found, "L": L}, note="the limit differs from L")
    if verdict.value is None:
        return Verdict.undecided(note=f"L lies in the limit enclosure {found}")
    return verdict


def _continuity(ctx: CommandContext) -> Verdict:
    if ctx.config.criterion == "classical":
        return ed_continuity(ctx.f, ctx.at, ctx.schedule, ctx.prec, extend_zero=ctx.config.extend_zero)
    return nsa_continuity(ctx.f, ctx.at, ctx.probes, ctx.prec, ctx.trunc_order, extend_zero=ctx.config.extend_zero)


def _derivative(ctx: CommandContext) -> Verdict:
    criterion = ctx.config.criterion or "nsa"
    extend_zero = ctx.config.extend_zero
    if criterion == "two-point":
        return nsa_differentiable_two_point(ctx.f, ctx.at, ctx.pairs, ctx.prec, ctx.trunc_order, extend_zero)
    if criterion == "eq1":
        return eq1_check(ctx.f, parse(ctx.config.fprime), ctx.at, ctx.pairs, ctx.prec, ctx.trunc_order, extend_zero)
    value = ctx.fprime_value()
    if criterion == "classical":
        return ed_derivative(ctx.f, value, ctx.at, ctx.schedule, ctx.prec, extend_zero)
    if value is not None:
        return nsa_derivative_against(ctx.f, value, ctx.at, ctx.probes, ctx.prec, ctx.trunc_order, extend_zero)
    return nsa_derivative(ctx.f, ctx.at, ctx.probes, ctx.prec, ctx.trunc_order, extend_zero)


def _integrate(ctx: CommandContext) -> Verdict:
    a, b = parse_rat(ctx.config.from_), parse_rat(ctx.config.to)
    if ctx.config.criterion == "nsa":
        probes = None if ctx.probes is None else ctx.probes.offsets
        return nsa_integral(ctx.f, a, b, probes, ctx.prec)
    return classical_integral(ctx.f, a, b, ctx.schedule, ctx.prec)


def _ftc(ctx: CommandContext) -> Verdict:
    return ftc_check(ctx.f, parse_rat(ctx.config.from_), parse_rat(ctx.config.to), ctx.schedule, ctx.prec)


def _sequence(ctx: CommandContext) -> SeqExpr:
    config = ctx.config
    return SeqExpr(
        term=ctx.f,
        offset=config.offset,
        ratio=_rat(config.ratio) or Fraction(1),
        head=parse_head(config.head) if config.head else (),
        closed_form=config.closed_form,
    )


def _series(ctx: CommandContext) -> Verdict:
    config = ctx.config
    s = _sequence(ctx)
    L = _rat(config.L)
    if config.criterion == "nsa":
        verdict = nsa_series_verdict(s, L, ctx.prec, ctx.trunc_order)
    elif config.diverges:
        bounds = [parse_rat(b) for b in config.bounds.split(',') if b.strip()] if config.bounds else None
        verdict = diverges_to_infinity(s, bounds, prec=ctx.prec)
    elif config.bounded:
        verdict = nonneg_bounded_verdict(s, prec=ctx.prec)
    elif L is not None:
        verdict = weierstrass_converges(s, L, ctx.schedule, prec=ctx.prec)
    elif config.sum_to is not None:
        trace = partial_sums(s, config.sum_to, ctx.prec)
        total = trace.last
        return Verdict.proved(value=total.lo if total.is_point() else None, enclosure=total,
                              note=f"S_{config.sum_to}")
    else:
        raise UsageError("series needs --L, --diverges, --bounded, --criterion nsa or --sum-to")
    if config.sum_to is not None:
        total = partial_sums(s, config.sum_to, ctx.prec).last
        verdict = verdict.with_note(f"{verdict.note}; S_{config.sum_to} in {total}")
    return verdict


def _gap(config: RunConfig) -> CheckReport:
    value = dq_gap_xn(config.n, parse_rat(config.x), parse_rat(config.eps))
    return CheckReport(command="gap", input=config.inputs(), status="COMPUTED", value=format_rat(value),
                       note=f"((x + e)^{config.n} - x^{config.n}) / e - {config.n} x^{config.n - 1}")


def _xcheck(config: RunConfig) -> CheckReport:
    from nonstd.xcheck import load_corpus, run_xcheck
    corpus = load_corpus(config.corpus, config.seed)
    report = run_xcheck(corpus, config.seed, jobs=config.jobs)
    if report.disagreement:
        return CheckReport(command="xcheck", input=config.inputs(), status="REFUTED",
                           certificate=report.to_dict(), witness={"disagreements": report.disagreements()},
                           note=f"{report.disagreement} disagreements")
    return CheckReport(command="xcheck", input=config.inputs(), status="COMPUTED", certificate=report.to_dict(),
                       note=f"{len(report.rows)} decisions compared, no disagreement")


_VERDICT_COMMANDS: Dict[str, Callable[[CommandContext], Verdict]] = {
    "limit": _limit,
    "continuity": _continuity,
    "derivative": _derivative,
    "integrate": _integrate,
    "ftc": _ftc,
    "series": _series,
}

_REPORT_COMMANDS: Dict[str, Callable[[RunConfig], CheckReport]] = {
    "gap": _gap,
    "xcheck": _xcheck,
}


def execute(config: RunConfig) -> CheckReport:
    """
    Run one command.

    Args:
        config (RunConfig): The validated request

    Returns:
        CheckReport: The report; partial sums and exact values are COMPUTED

    Raises:
        NonstdError: On usage errors and on domain errors the checker does
            not turn into a verdict
    """
    logger.debug(f"Executing {config.command} with {config.inputs()}")
    if config.command in _REPORT_COMMANDS:
        return _REPORT_COMMANDS[config.command](config)
    verdict = _VERDICT_COMMANDS[config.command](CommandContext(config))
    report = CheckReport.from_verdict(config.command, config.inputs(), verdict)
    if config.command == "series" and config.sum_to is not None and not _is_check(config):
        report = report.model_copy(update={"status": "COMPUTED"})
    logger.info(f"{config.command} {config.expression}: {report.status}")
    return report


def _is_check(config: RunConfig) -> bool:
    return config.criterion == "nsa" or config.diverges or config.bounded or config.L is not None
