"""
Cross-check package.

The agreement suite between the non-standard and the classical checkers.
"""

from nonstd.xcheck.corpus import BUILTIN_CORPUS, CorpusEntry, load_corpus, parse_corpus, parse_corpus_line, random_entries
from nonstd.xcheck.runner import AgreementReport, AgreementRow, CrossCheckRunner, run_xcheck

__all__ = [
    "AgreementReport",
    "AgreementRow",
    "BUILTIN_CORPUS",
    "CorpusEntry",
    "CrossCheckRunner",
    "load_corpus",
    "parse_corpus",
    "parse_corpus_line",
    "random_entries",
    "run_xcheck",
]
