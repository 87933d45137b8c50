"""
Series package.

Exact partial sums, certified tails and the convergence and divergence
criteria for series.
"""

from nonstd.series.criteria import (
    SeriesEngine,
    diverges_to_infinity,
    nonneg_bounded_verdict,
    nsa_series_verdict,
    weierstrass_converges,
)
from nonstd.series.sequence import PartialSums, SeqExpr, SumTrace, parse_head, partial_sums, trace_to_csv
from nonstd.series.tails import TailCertificate

__all__ = [
    "PartialSums",
    "SeqExpr",
    "SeriesEngine",
    "SumTrace",
    "TailCertificate",
    "diverges_to_infinity",
    "nonneg_bounded_verdict",
    "nsa_series_verdict",
    "parse_head",
    "partial_sums",
    "trace_to_csv",
    "weierstrass_converges",
]
