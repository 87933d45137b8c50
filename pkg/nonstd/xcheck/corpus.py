"""
Cross-check corpus.

One entry per line: ``expr ; point-or-range ; notions [; extend-zero]``,
where the point is ``p/q``, a range is ``a..b`` and notions is a comma
separated subset of limit, continuity, derivative, integral. Blank lines and
``#`` comments are skipped.
"""

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Tuple

from nonstd.core.rational import format_rat, parse_rat
from nonstd.errors import UsageError
from nonstd.expr.parser import parse

logger = logging.getLogger(__name__)

NOTIONS = ("limit", "continuity", "derivative", "integral")
POINT_NOTIONS = frozenset({"limit", "continuity", "derivative"})
RANDOM_ENTRIES = 5

BUILTIN_CORPUS = """\
# polynomials and rational functions
x^3 ; 2 ; limit, continuity, derivative
x^2 - 3*x + 1 ; 1/2 ; limit, continuity, derivative
x^4 - 2*x ; -1 ; limit, continuity, derivative
(2*x + 1)/(x - 3) ; 1 ; limit, continuity, derivative
(x^2 - 1)/(x - 1) ; 1 ; limit
(x^3 - 8)/(x - 2) ; 2 ; limit
# poles and jumps
1/x ; 0 ; limit
1/x^2 ; 0 ; limit
x/abs(x) ; 0 ; limit
abs(x) ; 0 ; limit, continuity, derivative
# elementary functions
exp(x) ; 0 ; limit, continuity, derivative
cos(x) ; 0 ; limit, continuity, derivative
sin(x)/x ; 0 ; limit
sqrt(x) ; 4 ; limit, continuity, derivative
ln(1 + x) ; 0 ; limit, derivative
# oscillation at the origin
x*sin(1/x) ; 0 ; limit, derivative ; extend-zero
x^2*sin(1/x) ; 0 ; limit, derivative ; extend-zero
# integrals
x^2 ; 0..1 ; integral
abs(x) ; -1..1 ; integral
1/(1 + x^2) ; 0..1 ; integral
sin(x) ; 0..1 ; integral
exp(x) ; 0..1 ; integral
sqrt(x) ; 0..1 ; integral
"""


@dataclass(frozen=True)
class CorpusEntry:
    """
    Attributes:
        expression (str): f in the expression grammar
        point (Optional[Fraction]): Standard point for limit, continuity, derivative
        interval (Optional[Tuple[Fraction, Fraction]]): [a, b] for integral
        notions (Tuple[str, ...]): Notions to cross-check
        extend_zero (bool): Take f(a) = 0 where f is undefined at a
    """
    expression: str
    point: Optional[Fraction]
    interval: Optional[Tuple[Fraction, Fraction]]
    notions: Tuple[str, ...]
    extend_zero: bool = False

    def __str__(self):
        where = format_rat(self.point) if self.point is not None else \
            f"{format_rat(self.interval[0])}..{format_rat(self.interval[1])}"
        return f"{self.expression} ; {where}"


def parse_corpus_line(line: str, lineno: int = 0) -> Optional[CorpusEntry]:
    """
    Parse one corpus line; blank lines and comments give None.

    Raises:
        UsageError: On malformed lines
    """
    text = line.split('#', 1)[0].strip()
    if not text:
        return None
    fields = [field.strip() for field in text.split(';')]
    if len(fields) not in (3, 4):
        raise UsageError(f"corpus line {lineno}: expected 'expr ; point-or-range ; notions [; extend-zero]'")
    expression, where, notion_text = fields[:3]
    parse(expression)
    notions = tuple(n.strip() for n in notion_text.split(',') if n.strip())
    unknown = [n for n in notions if n not in NOTIONS]
    if unknown or not notions:
        raise UsageError(f"corpus line {lineno}: unknown notions {unknown or notion_text!r}")
    extend_zero = False
    if len(fields) == 4:
        if fields[3] != "extend-zero":
            raise UsageError(f"corpus line {lineno}: expected 'extend-zero', got {fields[3]!r}")
        extend_zero = True
    point, interval = None, None
    if '..' in where:
        left, right = where.split('..', 1)
        interval = (parse_rat(left), parse_rat(right))
        if interval[0] >= interval[1]:
            raise UsageError(f"corpus line {lineno}: empty range {where}")
        if POINT_NOTIONS.intersection(notions):
            raise UsageError(f"corpus line {lineno}: a range only supports the integral notion")
    else:
        point = parse_rat(where)
        if "integral" in notions:
            raise UsageError(f"corpus line {lineno}: the integral notion needs a range a..b")
    return CorpusEntry(expression, point, interval, notions, extend_zero)


def parse_corpus(text: str) -> List[CorpusEntry]:
    entries = (parse_corpus_line(line, lineno) for lineno, line in enumerate(text.splitlines(), start=1))
    return [entry for entry in entries if entry is not None]


def random_entries(seed: int, count: int = RANDOM_ENTRIES) -> List[CorpusEntry]:
    """Seeded random polynomials of degree at most 4 at small rational points."""
    rng = random.Random(seed)
    entries: List[CorpusEntry] = []
    for _ in range(count):
        degree = rng.randint(1, 4)
        coefficients = [rng.randint(-5, 5) for _ in range(degree + 1)]
        coefficients[-1] = coefficients[-1] or 1
        terms = [f"({c})*x^{k}" if k else f"({c})" for k, c in enumerate(coefficients) if c]
        point = Fraction(rng.randint(-8, 8), rng.randint(1, 4))
        entries.append(CorpusEntry(" + ".join(terms), point, None, ("limit", "continuity", "derivative")))
    return entries


def load_corpus(path: Optional[str] = None, seed: int = 0) -> List[CorpusEntry]:
    """
    The corpus file at path, or the built-in corpus plus seeded random polynomials.

    Raises:
        UsageError: If the file cannot be read or parsed
    """
    if path is None:
        entries = parse_corpus(BUILTIN_CORPUS) + random_entries(seed)
    else:
        try:
            text = Path(path).read_text(encoding='utf-8')
        except OSError as e:
            raise UsageError(f"cannot read corpus {path}: {e}") from e
        entries = parse_corpus(text)
    logger.info(f"Loaded {len(entries)} cross-check entries")
    return entries
