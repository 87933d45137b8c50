"""
Core package.

Exact rationals, truncated Levi-Civita numbers and intervals over them,
rational intervals and three-valued verdicts.
"""

from nonstd.core.lc_interval import (
    LCInterval,
    i_close_verdict,
    interval_abs,
    interval_add,
    interval_div,
    interval_mul,
    interval_sub,
    is_limited_interval,
    is_provably_large,
)
from nonstd.core.lc_number import (
    LCNumber,
    Magnitude,
    Ordering,
    classify,
    epsilon,
    format_lc,
    i_close,
    is_infinitesimal,
    is_large,
    is_limited,
    lc_abs,
    lc_add,
    lc_cmp,
    lc_div,
    lc_inv,
    lc_mul,
    lc_neg,
    lc_pow,
    lc_sub,
    parse_lc,
    standard_part,
)
from nonstd.core.rat_interval import RatInterval
from nonstd.core.rational import Rat, as_rat, format_rat, parse_rat
from nonstd.core.verdict import Status, Verdict

__all__ = [
    'Rat',
    'as_rat',
    'format_rat',
    'parse_rat',
    'RatInterval',
    'LCNumber',
    'Magnitude',
    'Ordering',
    'classify',
    'epsilon',
    'format_lc',
    'parse_lc',
    'i_close',
    'is_infinitesimal',
    'is_large',
    'is_limited',
    'lc_abs',
    'lc_add',
    'lc_cmp',
    'lc_div',
    'lc_inv',
    'lc_mul',
    'lc_neg',
    'lc_pow',
    'lc_sub',
    'standard_part',
    'LCInterval',
    'i_close_verdict',
    'interval_abs',
    'interval_add',
    'interval_div',
    'interval_mul',
    'interval_sub',
    'is_limited_interval',
    'is_provably_large',
    'Status',
    'Verdict',
]
