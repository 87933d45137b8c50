"""
Static monotonicity analysis.

Propagates the direction of change through the expression tree using the
chain and product rules on signs only. Needs range enclosures of
sub-expressions but never a derivative enclosure, so it works at points
where the slope is unbounded (sqrt at 0).
"""

import logging
from typing import Optional

from nonstd.core.rat_interval import RatInterval
from nonstd.errors import ExprError, LCError
from nonstd.expr import elementary
from nonstd.expr.evaluate import eval_dual, eval_interval
from nonstd.expr.nodes import Abs, Add, Const, Cos, Div, Exp, Expr, Ln, Mul, PowInt, Sin, Sqrt, Sub, Var

logger = logging.getLogger(__name__)

# +1 non-decreasing, -1 non-increasing, 0 constant, None unknown
Direction = Optional[int]


def interval_sign(interval: RatInterval) -> Direction:
    """Weak sign of every value in the interval."""
    if interval.lo == 0 and interval.hi == 0:
        return 0
    if interval.lo >= 0:
        return 1
    if interval.hi <= 0:
        return -1
    return None


def _combine(a: Direction, b: Direction) -> Direction:
    if a is None or b is None:
        return None
    if a == 0:
        return b
    if b == 0 or a == b:
        return a
    return None


def _times(direction: Direction, sign: Direction) -> Direction:
    if direction == 0:
        return 0
    if direction is None or sign is None:
        return None
    return direction * sign


class MonotonicityAnalyzer:
    """Direction of f over a cell."""

    def __init__(self, cell: RatInterval, prec: int):
        self.cell = cell
        self.prec = prec

    def range_sign(self, node: Expr) -> Direction:
        try:
            return interval_sign(eval_interval(node, self.cell, self.prec))
        except (ExprError, ZeroDivisionError):
            return None

    def direction(self, node: Expr) -> Direction:
        if isinstance(node, Const):
            return 0
        if isinstance(node, Var):
            return 1
        if isinstance(node, Add):
            return _combine(self.direction(node.left), self.direction(node.right))
        if isinstance(node, Sub):
            right = self.direction(node.right)
            return _combine(self.direction(node.left), None if right is None else -right)
        if isinstance(node, Mul):
            return self._product(self.direction(node.left), node.left, self.direction(node.right), node.right)
        if isinstance(node, Div):
            inner = self.direction(node.right)
            if inner != 0 and self.range_sign(node.right) in (None, 0):
                return None
            # 1/h moves against h where h keeps its sign
            return self._product(self.direction(node.left), node.left, None if inner is None else -inner, node.right)
        if isinstance(node, PowInt):
            return self._power(node)
        if isinstance(node, (Exp, Ln, Sqrt)):
            return self.direction(node.arg)
        if isinstance(node, Abs):
            return _times(self.direction(node.arg), self.range_sign(node.arg))
        if isinstance(node, (Sin, Cos)):
            return self._trigonometric(node)
        return None

    def _product(self, left: Direction, left_node: Expr, right: Direction, right_node: Expr) -> Direction:
        first = _times(left, self.range_sign(right_node) if left else 0)
        second = _times(right, self.range_sign(left_node) if right else 0)
        return _combine(first, second)

    def _power(self, node: PowInt) -> Direction:
        inner = self.direction(node.base)
        n = node.exponent
        if n == 0 or inner == 0:
            return 0
        base_sign = self.range_sign(node.base)
        if n < 0 and base_sign in (None, 0):
            return None
        # d/du u^n = n u^(n-1)
        factor_sign = 1 if (n - 1) % 2 == 0 else base_sign
        if factor_sign is None:
            return None
        return _times(inner, factor_sign * (1 if n > 0 else -1))

    def _trigonometric(self, node: Expr) -> Direction:
        inner = self.direction(node.arg)
        if inner == 0:
            return 0
        try:
            argument = eval_interval(node.arg, self.cell, self.prec)
            if isinstance(node, Sin):
                slope_sign = interval_sign(elementary.enclose('cos', argument, self.prec))
            else:
                slope = elementary.enclose('sin', argument, self.prec)
                slope_sign = interval_sign(-slope)
        except (ExprError, ValueError):
            return None
        return _times(inner, slope_sign)


def monotonicity(f: Expr, cell: RatInterval, prec: int = 64) -> Direction:
    """
    Direction of f on the cell from the structure of f alone.

    Returns:
        Direction: 1 non-decreasing, -1 non-increasing, 0 constant, None unknown
    """
    return MonotonicityAnalyzer(cell, prec).direction(f)


def monotone_on(f: Expr, cell: RatInterval, prec: int = 64) -> Direction:
    """Static analysis first, then the sign of an interval slope enclosure."""
    direction = monotonicity(f, cell, prec)
    if direction is not None:
        return direction
    try:
        slope = eval_dual(f, cell, prec).slope
    except (ExprError, LCError, ZeroDivisionError):
        return None
    return interval_sign(slope)
