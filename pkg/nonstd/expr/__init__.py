"""
Expression package.

One-variable real functions: the AST, parser and printer, exact, interval,
dual and Levi-Civita evaluation, symbolic differentiation and the exact
rational-function normal form.
"""

from nonstd.expr.diff import nth_derivative, symbolic_diff
from nonstd.expr.evaluate import DualInterval, eval_dual, eval_interval, eval_rat
from nonstd.expr.lc_eval import Increment, eval_increment, eval_lc
from nonstd.expr.monotone import monotone_on, monotonicity
from nonstd.expr.nodes import (
    X,
    Abs,
    Add,
    Const,
    Cos,
    Div,
    Exp,
    Expr,
    Ln,
    Mul,
    PowInt,
    Sin,
    Sqrt,
    Sub,
    Var,
    format_expr,
    is_rational_only,
    substitute,
    walk,
)
from nonstd.expr.parser import parse
from nonstd.expr.rational import Poly, RationalFunction, range_enclosure, to_rational_function

__all__ = [
    "Abs",
    "Add",
    "Const",
    "Cos",
    "Div",
    "DualInterval",
    "Exp",
    "Expr",
    "Increment",
    "Ln",
    "Mul",
    "Poly",
    "PowInt",
    "RationalFunction",
    "Sin",
    "Sqrt",
    "Sub",
    "Var",
    "X",
    "eval_dual",
    "eval_increment",
    "eval_interval",
    "eval_lc",
    "eval_rat",
    "format_expr",
    "is_rational_only",
    "monotone_on",
    "monotonicity",
    "nth_derivative",
    "parse",
    "range_enclosure",
    "substitute",
    "symbolic_diff",
    "to_rational_function",
    "walk",
]
