"""
Agreement of the non-standard and the classical checkers.

For every corpus entry and notion both checker families run; their decided
verdicts must agree. Entries run in a thread pool and the report is
assembled by entry index, so the output does not depend on the pool size.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence

from nonstd.checks import (
    ed_continuity,
    ed_derivative,
    ed_limit,
    eq1_check,
    nsa_continuity,
    nsa_derivative,
    nsa_limit,
)
from nonstd.core.rational import format_rat
from nonstd.core.verdict import Status, Verdict
from nonstd.errors import NonstdError
from nonstd.expr import eval_rat, parse, symbolic_diff
from nonstd.expr.nodes import Expr
from nonstd.riemann import classical_integral, nsa_integral
from nonstd.xcheck.corpus import CorpusEntry

logger = logging.getLogger(__name__)

BOTH_PROVED = "both-PROVED-agree"
BOTH_REFUTED = "both-REFUTED-agree"
DISAGREEMENT = "disagreement"
UNDECIDED = "undecided"


@dataclass(frozen=True)
class AgreementRow:
    """
    Attributes:
        index (int): Position of the entry in the corpus
        entry (str): The entry, as written in a corpus file
        notion (str): limit, continuity, derivative or integral
        nsa (Verdict): Non-standard verdict
        classical (Verdict): Classical verdict
        eq1 (Optional[Status]): Continuous differentiability verdict, derivative rows only
    """
    index: int
    entry: str
    notion: str
    nsa: Verdict
    classical: Verdict
    eq1: Optional[Status] = None

    @property
    def outcome(self) -> str:
        statuses = {self.nsa.status, self.classical.status}
        if Status.UNDECIDED in statuses:
            return UNDECIDED
        if statuses == {Status.REFUTED}:
            return BOTH_REFUTED
        if statuses == {Status.PROVED}:
            return BOTH_PROVED if _same_value(self.nsa, self.classical) else DISAGREEMENT
        return DISAGREEMENT

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "index": self.index,
            "entry": self.entry,
            "notion": self.notion,
            "nsa": self.nsa.status.value,
            "classical": self.classical.status.value,
            "outcome": self.outcome,
        }
        if self.nsa.value is not None:
            data["nsa_value"] = format_rat(self.nsa.value)
        if self.classical.value is not None:
            data["classical_value"] = format_rat(self.classical.value)
        if self.eq1 is not None:
            data["eq1"] = self.eq1.value
        return data


def _same_value(first: Verdict, second: Verdict) -> bool:
    if first.value is not None and second.value is not None:
        return first.value == second.value
    if first.enclosure is not None and second.enclosure is not None:
        return first.enclosure.intersect(second.enclosure) is not None
    return True


@dataclass
class AgreementReport:
    """Counts of agreeing, disagreeing and undecided comparisons."""
    rows: List[AgreementRow] = field(default_factory=list)
    seed: int = 0

    def count(self, outcome: str) -> int:
        return sum(1 for row in self.rows if row.outcome == outcome)

    @property
    def both_proved(self) -> int:
        return self.count(BOTH_PROVED)

    @property
    def both_refuted(self) -> int:
        return self.count(BOTH_REFUTED)

    @property
    def disagreement(self) -> int:
        return self.count(DISAGREEMENT)

    @property
    def undecided(self) -> int:
        return self.count(UNDECIDED)

    def disagreements(self) -> List[Dict[str, Any]]:
        return [row.to_dict() for row in self.rows if row.outcome == DISAGREEMENT]

    def counts(self) -> Dict[str, int]:
        return {
            BOTH_PROVED: self.both_proved,
            BOTH_REFUTED: self.both_refuted,
            DISAGREEMENT: self.disagreement,
            UNDECIDED: self.undecided,
        }

    def to_dict(self) -> Dict[str, Any]:
        return {"seed": self.seed, "counts": self.counts(), "rows": [row.to_dict() for row in self.rows]}

    def matrix(self) -> str:
        """Plain text agreement matrix, one line per comparison."""
        lines = [f"{'entry':<36} {'notion':<11} {'nsa':<10} {'classical':<10} {'eq1':<10} outcome"]
        for row in self.rows:
            eq1 = row.eq1.value if row.eq1 is not None else "-"
            lines.append(f"{row.entry:<36} {row.notion:<11} {row.nsa.status.value:<10} "
                         f"{row.classical.status.value:<10} {eq1:<10} {row.outcome}")
        lines.append(", ".join(f"{key}: {value}" for key, value in self.counts().items()))
        return "\n".join(lines)


def _guarded(check: Callable[[], Verdict]) -> Verdict:
    try:
        return check()
    except (NonstdError, ValueError, ArithmeticError) as e:
        return Verdict.undecided(note=f"{type(e).__name__}: {e}")


def _candidate_limit(f: Expr, a: Fraction, nsa: Verdict, prec: Optional[int]) -> Fraction:
    """The classical candidate: the NSA value, else f(a), else 0."""
    if nsa.status is Status.PROVED and nsa.value is not None:
        return nsa.value
    try:
        return eval_rat(f, a, prec).mid
    except (NonstdError, ArithmeticError):
        return Fraction(0)


def _candidate_derivative(f: Expr, a: Fraction, nsa: Verdict, prec: Optional[int]) -> Fraction:
    if nsa.status is Status.PROVED and nsa.value is not None:
        return nsa.value
    try:
        return eval_rat(symbolic_diff(f), a, prec).mid
    except (NonstdError, ArithmeticError):
        return Fraction(0)


class CrossCheckRunner:
    """
    Runs both checker families on corpus entries.

    Attributes:
        prec (Optional[int]): Bits for transcendental enclosures
        jobs (int): Worker threads
    """

    def __init__(self, prec: Optional[int] = None, jobs: Optional[int] = None):
        from nonstd.config import get_settings
        settings = get_settings()
        self.prec = prec
        self.jobs = settings.jobs if jobs is None else jobs

    def _limit(self, f: Expr, entry: CorpusEntry):
        a = entry.point
        nsa = _guarded(lambda: nsa_limit(f, a, prec=self.prec))
        L = _candidate_limit(f, a, nsa, self.prec)
        return nsa, _guarded(lambda: ed_limit(f, a, L, prec=self.prec)), None

    def _continuity(self, f: Expr, entry: CorpusEntry):
        a, extend_zero = entry.point, entry.extend_zero
        nsa = _guarded(lambda: nsa_continuity(f, a, prec=self.prec, extend_zero=extend_zero))
        classical = _guarded(lambda: ed_continuity(f, a, prec=self.prec, extend_zero=extend_zero))
        return nsa, classical, None

    def _derivative(self, f: Expr, entry: CorpusEntry):
        a, extend_zero = entry.point, entry.extend_zero
        nsa = _guarded(lambda: nsa_derivative(f, a, prec=self.prec, extend_zero=extend_zero))
        v = _candidate_derivative(f, a, nsa, self.prec)
        classical = _guarded(lambda: ed_derivative(f, v, a, prec=self.prec, extend_zero=extend_zero))
        eq1 = _guarded(lambda: eq1_check(f, symbolic_diff(f), a, prec=self.prec, extend_zero=extend_zero))
        return nsa, classical, eq1.status

    def _integral(self, f: Expr, entry: CorpusEntry):
        a, b = entry.interval
        nsa = _guarded(lambda: nsa_integral(f, a, b, prec=self.prec))
        classical = _guarded(lambda: classical_integral(f, a, b, prec=self.prec))
        return nsa, classical, None

    def run_entry(self, index: int, entry: CorpusEntry) -> List[AgreementRow]:
        f = parse(entry.expression)
        rows: List[AgreementRow] = []
        for notion in entry.notions:
            nsa, classical, eq1 = getattr(self, f"_{notion}")(f, entry)
            row = AgreementRow(index, str(entry), notion, nsa, classical, eq1)
            logger.debug(f"{entry} [{notion}]: nsa={nsa.status.value} classical={classical.status.value}")
            if row.outcome == DISAGREEMENT:
                logger.warning(f"Disagreement on {entry} [{notion}]: {nsa} vs {classical}")
            rows.append(row)
        return rows

    def run(self, corpus: Sequence[CorpusEntry], seed: int = 0) -> AgreementReport:
        with ThreadPoolExecutor(max_workers=self.jobs) as pool:
            results = list(pool.map(lambda item: self.run_entry(*item), enumerate(corpus)))
        report = AgreementReport([row for rows in results for row in rows], seed)
        logger.info(f"Cross-check of {len(corpus)} entries: {report.counts()}")
        return report


def run_xcheck(corpus: Sequence[CorpusEntry], seed: int = 0, jobs: Optional[int] = None,
               prec: Optional[int] = None) -> AgreementReport:
    """
    Run the agreement suite.

    Args:
        corpus (Sequence[CorpusEntry]): Entries, e.g. from load_corpus
        seed (int): Seed the random entries were drawn with, recorded in the report
        jobs (Optional[int]): Worker threads
        prec (Optional[int]): Bits for transcendental enclosures

    Returns:
        AgreementReport: Per entry and notion outcomes
    """
    return CrossCheckRunner(prec, jobs).run(corpus, seed)
