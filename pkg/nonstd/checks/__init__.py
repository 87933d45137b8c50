"""
Checks package.

Non-standard checkers over probes in the Levi-Civita field and sound
epsilon-delta checkers over rational intervals.
"""

from nonstd.checks.classical import (
    DeltaCertificate,
    EpsSchedule,
    LimitVerifier,
    difference_quotient,
    ed_continuity,
    ed_derivative,
    ed_limit,
    ed_verify_limit,
    format_certificate,
    parse_certificate,
    resample_certificate,
)
from nonstd.checks.nsa import (
    ProbeEvaluator,
    dq_gap_xn,
    eq1_check,
    nsa_continuity,
    nsa_derivative,
    nsa_derivative_against,
    nsa_differentiable_two_point,
    nsa_limit,
)
from nonstd.checks.probes import ProbeSet, default_pairs, parse_pairs, validate_pairs

__all__ = [
    "DeltaCertificate",
    "EpsSchedule",
    "LimitVerifier",
    "ProbeEvaluator",
    "ProbeSet",
    "default_pairs",
    "difference_quotient",
    "dq_gap_xn",
    "ed_continuity",
    "ed_derivative",
    "ed_limit",
    "ed_verify_limit",
    "eq1_check",
    "format_certificate",
    "nsa_continuity",
    "nsa_derivative",
    "nsa_derivative_against",
    "nsa_differentiable_two_point",
    "nsa_limit",
    "parse_certificate",
    "parse_pairs",
    "resample_certificate",
    "validate_pairs",
]
