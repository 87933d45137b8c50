"""
Evaluation of expressions over rationals and rational intervals.

Interval evaluation is natural interval extension: every node maps an
enclosure of its arguments to an enclosure of its value. The transcendental
nodes delegate to nonstd.expr.elementary.
"""

import logging
from fractions import Fraction
from typing import Callable, Dict, NamedTuple, Optional, Type

from nonstd.core.rat_interval import RatInterval
from nonstd.core.rational import as_rat
from nonstd.errors import DomainError, EnclosureUnbounded
from nonstd.expr import elementary
from nonstd.expr.nodes import (
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
)

logger = logging.getLogger(__name__)

# Extra working bits and retries used by eval_rat to reach 2**-prec
GUARD_BITS = 16
MAX_RETRIES = 6


def _default_prec() -> int:
    from nonstd.config import get_settings
    return get_settings().prec


class IntervalEvaluator:
    """
    Natural interval extension of an expression.

    Attributes:
        prec (int): Working precision for transcendental enclosures
        strict (bool): Raise DomainError as soon as any sub-expression may be
            undefined somewhere on the cell, instead of clipping sqrt
    """

    def __init__(self, prec: int, strict: bool = False):
        self.prec = prec
        self.strict = strict
        self._handlers: Dict[Type[Expr], Callable] = {
            Const: self._const,
            Var: self._var,
            Add: self._add,
            Sub: self._sub,
            Mul: self._mul,
            Div: self._div,
            PowInt: self._pow,
            Sin: self._elementary,
            Cos: self._elementary,
            Exp: self._elementary,
            Ln: self._ln,
            Sqrt: self._sqrt,
            Abs: self._abs,
        }

    def evaluate(self, node: Expr, x: RatInterval) -> RatInterval:
        handler = self._handlers.get(type(node))
        if handler is None:
            raise TypeError(f"not an expression node: {node!r}")
        return handler(node, x)

    def _const(self, node, x):
        return RatInterval.point(node.value)

    def _var(self, node, x):
        return x

    def _add(self, node, x):
        return self.evaluate(node.left, x) + self.evaluate(node.right, x)

    def _sub(self, node, x):
        return self.evaluate(node.left, x) - self.evaluate(node.right, x)

    def _mul(self, node, x):
        if node.left == node.right:
            return self.evaluate(node.left, x) ** 2
        return self.evaluate(node.left, x) * self.evaluate(node.right, x)

    def _checked_reciprocal(self, node, denominator: RatInterval) -> RatInterval:
        if denominator.lo == denominator.hi == 0:
            raise DomainError(node, "division by zero")
        if denominator.contains_zero():
            if self.strict:
                raise DomainError(node, "divisor may vanish on the cell")
            raise EnclosureUnbounded(node, "divisor enclosure contains 0")
        return denominator.reciprocal()

    def _div(self, node, x):
        numerator = self.evaluate(node.left, x)
        return numerator * self._checked_reciprocal(node, self.evaluate(node.right, x))

    def _pow(self, node, x):
        base = self.evaluate(node.base, x)
        if node.exponent >= 0:
            return base ** node.exponent
        return self._checked_reciprocal(node, base ** -node.exponent)

    def _elementary(self, node, x):
        return elementary.enclose(node.name, self.evaluate(node.arg, x), self.prec)

    def _ln(self, node, x):
        argument = self.evaluate(node.arg, x)
        if argument.hi <= 0:
            raise DomainError(node, "ln of a non-positive value")
        if argument.lo <= 0:
            if self.strict:
                raise DomainError(node, "ln argument may be non-positive on the cell")
            raise EnclosureUnbounded(node, "ln argument enclosure reaches 0")
        return elementary.enclose('ln', argument, self.prec)

    def _sqrt(self, node, x):
        argument = self.evaluate(node.arg, x)
        if argument.hi < 0:
            raise DomainError(node, "sqrt of a negative value")
        if argument.lo < 0:
            if self.strict:
                raise DomainError(node, "sqrt argument may be negative on the cell")
            # only the non-negative part of the cell is in the domain
            argument = RatInterval(Fraction(0), argument.hi)
        return elementary.enclose('sqrt', argument, self.prec)

    def _abs(self, node, x):
        return abs(self.evaluate(node.arg, x))


def eval_interval(f: Expr, x: RatInterval, prec: Optional[int] = None, strict: bool = False) -> RatInterval:
    """
    Enclose f over the cell x.

    Args:
        f (Expr): The function
        x (RatInterval): The cell
        prec (Optional[int]): Precision in bits for transcendental nodes
        strict (bool): Require f to be defined on the whole cell

    Returns:
        RatInterval: Contains f(t) for every rational t in x where f is defined

    Raises:
        DomainError: If f is undefined on all of x (or anywhere, in strict mode)
        EnclosureUnbounded: If no finite enclosure is available
    """
    prec = _default_prec() if prec is None else prec
    return IntervalEvaluator(prec, strict).evaluate(f, x)


def eval_rat(f: Expr, x, prec: Optional[int] = None) -> RatInterval:
    """
    Enclose f(x) with width at most 2**-prec.

    Rational-only expressions are evaluated exactly (degenerate result).

    Raises:
        DomainError: If f is undefined at x
    """
    prec = _default_prec() if prec is None else prec
    point = RatInterval.point(as_rat(x))
    target = Fraction(1, 2 ** prec)
    working = prec + GUARD_BITS
    result = None
    for _ in range(MAX_RETRIES):
        try:
            result = IntervalEvaluator(working, strict=False).evaluate(f, point)
        except EnclosureUnbounded as e:
            logger.debug(f"Retrying {f} at {x} with more bits: {e}")
            working *= 2
            continue
        if result.width <= target:
            return result
        working *= 2
    if result is None:
        raise DomainError(f, f"cannot separate a divisor from 0 at x = {x}")
    logger.warning(f"Enclosure of {f} at {x} has width above 2^-{prec} after {working} bits")
    return result


class DualInterval(NamedTuple):
    """Enclosures of a value and of its slope over a cell."""
    value: RatInterval
    slope: RatInterval


class DualEvaluator:
    """
    Forward-mode differentiation over rational intervals.

    The slope enclosure contains f'(t) for every t of the cell; across a kink
    of abs it contains the convex hull of the one-sided slopes, which keeps it
    a valid mean-value (Lipschitz) enclosure.
    """

    def __init__(self, prec: int):
        self.prec = prec
        self.values = IntervalEvaluator(prec, strict=True)

    def evaluate(self, node: Expr, x: RatInterval) -> DualInterval:
        if isinstance(node, Const):
            return DualInterval(RatInterval.point(node.value), RatInterval.point(0))
        if isinstance(node, Var):
            return DualInterval(x, RatInterval.point(1))
        if isinstance(node, (Add, Sub)):
            u, v = self.evaluate(node.left, x), self.evaluate(node.right, x)
            if isinstance(node, Add):
                return DualInterval(u.value + v.value, u.slope + v.slope)
            return DualInterval(u.value - v.value, u.slope - v.slope)
        if isinstance(node, Mul):
            u, v = self.evaluate(node.left, x), self.evaluate(node.right, x)
            return DualInterval(u.value * v.value, u.slope * v.value + u.value * v.slope)
        if isinstance(node, Div):
            u, v = self.evaluate(node.left, x), self.evaluate(node.right, x)
            inverse = self.values._checked_reciprocal(node, v.value)
            return DualInterval(
                u.value * inverse,
                (u.slope * v.value - u.value * v.slope) * (inverse ** 2),
            )
        if isinstance(node, PowInt):
            u = self.evaluate(node.base, x)
            n = node.exponent
            if n == 0:
                return DualInterval(RatInterval.point(1), RatInterval.point(0))
            if n < 0:
                self.values._checked_reciprocal(node, u.value)
            return DualInterval(u.value ** n, RatInterval.point(n) * (u.value ** (n - 1)) * u.slope)
        if isinstance(node, (Sin, Cos, Exp)):
            u = self.evaluate(node.arg, x)
            value = elementary.enclose(node.name, u.value, self.prec)
            if isinstance(node, Sin):
                derivative = elementary.enclose('cos', u.value, self.prec)
            elif isinstance(node, Cos):
                derivative = -elementary.enclose('sin', u.value, self.prec)
            else:
                derivative = value
            return DualInterval(value, derivative * u.slope)
        if isinstance(node, Ln):
            u = self.evaluate(node.arg, x)
            if u.value.lo <= 0:
                raise DomainError(node, "ln argument may be non-positive on the cell")
            return DualInterval(elementary.enclose('ln', u.value, self.prec), u.slope / u.value)
        if isinstance(node, Sqrt):
            u = self.evaluate(node.arg, x)
            if u.value.lo <= 0:
                raise EnclosureUnbounded(node, "sqrt slope is unbounded where the argument reaches 0")
            root = elementary.enclose('sqrt', u.value, self.prec)
            return DualInterval(root, u.slope / (2 * root))
        if isinstance(node, Abs):
            u = self.evaluate(node.arg, x)
            if u.value.lo >= 0:
                return u
            if u.value.hi <= 0:
                return DualInterval(-u.value, -u.slope)
            bound = u.slope.magnitude
            return DualInterval(abs(u.value), RatInterval(-bound, bound))
        raise TypeError(f"not an expression node: {node!r}")


def eval_dual(f: Expr, x: RatInterval, prec: Optional[int] = None) -> DualInterval:
    """
    Enclose f and f' over the cell x.

    Raises:
        DomainError: If some node may be undefined on the cell
        EnclosureUnbounded: If the slope is unbounded on the cell
    """
    prec = _default_prec() if prec is None else prec
    return DualEvaluator(prec).evaluate(f, x)
