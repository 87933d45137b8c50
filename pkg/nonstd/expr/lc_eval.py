"""
Evaluation at Levi-Civita points.

Rational nodes use field arithmetic. A transcendental node at a limited
argument s + h (s standard, h infinitesimal) is expanded as a Taylor
polynomial in h whose coefficients are rigorous enclosures at s; the
expansion stops once the powers of h pass the truncation order. sin and cos
of an unlimited argument are the bounded-indeterminate value 0 +/- 1.

Near a standard point a, eval_increment writes f(a + h) as f(a) + h (f'(a) + r)
with f(a) and f'(a) enclosed once for every offset h, so values at different
offsets can be compared without their shared uncertainty.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Union

from nonstd.core.lc_interval import LCInterval, interval_abs, interval_add, interval_div, interval_mul, interval_sub
from nonstd.core.lc_number import (
    LCNumber,
    Magnitude,
    classify,
    is_infinitesimal,
    is_large,
    lc_mul,
    lc_sub,
    standard_part,
)
from nonstd.core.rat_interval import RatInterval
from nonstd.errors import DomainError, ExprError, LCError, UnlimitedTranscendental
from nonstd.expr import elementary
from nonstd.expr.nodes import Abs, Add, Const, Div, Expr, Mul, PowInt, Sub, Unary, Var

logger = logging.getLogger(__name__)


def _binomial_half(k: int) -> Fraction:
    """Generalised binomial coefficient C(1/2, k)."""
    value = Fraction(1)
    for j in range(k):
        value *= (Fraction(1, 2) - j) / (j + 1)
    return value


class LCEvaluator:
    """
    Node-wise evaluation over LCInterval values.

    Attributes:
        prec (int): Precision of the Taylor coefficient enclosures
        order (Fraction): Truncation order of constants and expansions
    """

    def __init__(self, prec: int, order: Fraction):
        self.prec = prec
        self.order = order

    def constant(self, value: Fraction) -> LCInterval:
        return LCInterval.exact(LCNumber.constant(value, self.order))

    def from_rat(self, interval: RatInterval) -> LCInterval:
        return LCInterval.from_rat_interval(interval, self.order)

    def evaluate(self, node: Expr, x: LCInterval) -> LCInterval:
        if isinstance(node, Const):
            return self.constant(node.value)
        if isinstance(node, Var):
            return x
        if isinstance(node, Add):
            return interval_add(self.evaluate(node.left, x), self.evaluate(node.right, x))
        if isinstance(node, Sub):
            return interval_sub(self.evaluate(node.left, x), self.evaluate(node.right, x))
        if isinstance(node, Mul):
            return interval_mul(self.evaluate(node.left, x), self.evaluate(node.right, x))
        if isinstance(node, Div):
            numerator = self.evaluate(node.left, x)
            return interval_div(numerator, self._divisor(node, self.evaluate(node.right, x)))
        if isinstance(node, PowInt):
            base = self.evaluate(node.base, x)
            if node.exponent >= 0:
                return self._power(base, node.exponent)
            return interval_div(self.constant(Fraction(1)), self._divisor(node, self._power(base, -node.exponent)))
        if isinstance(node, Abs):
            return interval_abs(self.evaluate(node.arg, x))
        if isinstance(node, Unary):
            return self._transcendental(node, self.evaluate(node.arg, x))
        raise TypeError(f"not an expression node: {node!r}")

    def _divisor(self, node: Expr, value: LCInterval) -> LCInterval:
        if value.center.is_zero and value.radius.is_zero and value.center.order > 0:
            raise DomainError(node, "division by zero")
        return value

    def _power(self, base: LCInterval, n: int) -> LCInterval:
        result = self.constant(Fraction(1))
        while n:
            if n & 1:
                result = interval_mul(result, base)
            n >>= 1
            if n:
                base = interval_mul(base, base)
        return result

    # Transcendental nodes

    def _taylor_coefficients(self, name: str, point: RatInterval, count: int) -> List[RatInterval]:
        """g^(k)(s) / k! for k < count, enclosed for every s in point."""
        if name in ('sin', 'cos'):
            sin_s = elementary.enclose('sin', point, self.prec)
            cos_s = elementary.enclose('cos', point, self.prec)
            cycle = [sin_s, cos_s, -sin_s, -cos_s] if name == 'sin' else [cos_s, -sin_s, -cos_s, sin_s]
            return [cycle[k % 4] * Fraction(1, math.factorial(k)) for k in range(count)]
        if name == 'exp':
            exp_s = elementary.enclose('exp', point, self.prec)
            return [exp_s * Fraction(1, math.factorial(k)) for k in range(count)]
        if name == 'ln':
            coefficients = [elementary.enclose('ln', point, self.prec)]
            coefficients += [RatInterval.point(Fraction((-1) ** (k + 1), k)) / point ** k for k in range(1, count)]
            return coefficients
        if name == 'sqrt':
            root = elementary.enclose('sqrt', point, self.prec)
            return [root * _binomial_half(k) / point ** k for k in range(count)]
        raise ValueError(f"no Taylor expansion for {name}")

    def _taylor(self, name: str, s: Fraction, h: LCInterval) -> LCInterval:
        """g(s + h) for infinitesimal h, truncated at the evaluator's order."""
        leads = [v.leading_exponent for v in (h.center, h.radius) if v.terms]
        if not leads:
            return self.from_rat(self._taylor_coefficients(name, RatInterval.point(s), 1)[0])
        lead = min(leads)
        terms = math.ceil(self.order / lead) + 1
        coefficients = self._taylor_coefficients(name, RatInterval.point(s), terms)
        result = self.from_rat(coefficients[-1])
        for coefficient in reversed(coefficients[:-1]):
            result = interval_add(self.from_rat(coefficient), interval_mul(h, result))
        # the remainder starts beyond the truncation order
        return LCInterval(
            LCNumber(result.center.terms, min(result.center.order, self.order)),
            LCNumber(result.radius.terms, min(result.radius.order, self.order)),
        )

    def _standard_fallback(self, node: Unary, s: Fraction, spread: Fraction) -> LCInterval:
        """Argument within an appreciable radius: enclose over a standard cell."""
        slack = Fraction(1, 2 ** self.prec)
        cell = RatInterval(s - spread - slack, s + spread + slack)
        if node.name == 'ln':
            if cell.hi <= 0:
                raise DomainError(node, "ln of a non-positive value")
            if cell.lo <= 0:
                raise UnlimitedTranscendental(f"ln near a non-positive standard part in {node}")
        if node.name == 'sqrt':
            if cell.hi < 0:
                raise DomainError(node, "sqrt of a negative value")
            cell = RatInterval(max(cell.lo, Fraction(0)), cell.hi)
        return self.from_rat(elementary.enclose(node.name, cell, self.prec))

    def _sqrt_near_zero(self, node: Unary, u: LCInterval) -> LCInterval:
        """sqrt(c0 eps^l (1 + w)) = sqrt(c0) eps^(l/2) sqrt(1 + w)."""
        center, radius = u.center, u.radius
        if center.is_zero:
            if radius.is_zero:
                return self.constant(Fraction(0))
            raise UnlimitedTranscendental(f"sign of the sqrt argument is unknown in {node}")
        lead, c0 = center.terms[0]
        dominated = radius.is_zero or radius.terms[0][0] > lead
        if c0 < 0:
            if dominated:
                raise DomainError(node, "sqrt of a negative infinitesimal")
            raise UnlimitedTranscendental(f"sign of the sqrt argument is unknown in {node}")
        if not dominated:
            raise UnlimitedTranscendental(f"sqrt argument is not provably positive in {node}")
        unit = LCNumber.monomial(1 / c0, -lead, self.order)
        w = LCInterval(lc_sub(lc_mul(center, unit), LCNumber.constant(1, self.order)), lc_mul(radius, unit))
        factor = self._taylor('sqrt', Fraction(1), w)
        root = self.from_rat(elementary.enclose('sqrt', RatInterval.point(c0), self.prec))
        scale = LCInterval.exact(LCNumber.monomial(1, lead / 2, self.order))
        return interval_mul(interval_mul(root, scale), factor)

    def _transcendental(self, node: Unary, u: LCInterval) -> LCInterval:
        name = node.name
        if Magnitude.INDETERMINATE in (classify(u.center), classify(u.radius)):
            raise UnlimitedTranscendental(f"truncation order exhausted before {node}")
        if is_large(u.center) or is_large(u.radius):
            if name in ('sin', 'cos'):
                return LCInterval(LCNumber.zero(self.order), LCNumber.constant(1, self.order))
            raise UnlimitedTranscendental(f"{name} of the unlimited argument {u}")
        s = standard_part(u.center)
        if not is_infinitesimal(u.radius):
            return self._standard_fallback(node, s, standard_part(u.radius))
        if name == 'sqrt':
            if s < 0:
                raise DomainError(node, "sqrt of a negative value")
            if s == 0:
                return self._sqrt_near_zero(node, u)
        if name == 'ln':
            if s < 0:
                raise DomainError(node, "ln of a negative value")
            if s == 0:
                raise UnlimitedTranscendental(f"ln of an infinitesimal in {node}")
        h = LCInterval(lc_sub(u.center, LCNumber.constant(s, u.center.order)), u.radius)
        return self._taylor(name, s, h)


def eval_lc(f: Expr, x: Union[LCNumber, LCInterval], prec: Optional[int] = None,
            trunc_order: Optional[Fraction] = None) -> LCInterval:
    """
    Evaluate f at a Levi-Civita point.

    Args:
        f (Expr): The function
        x (Union[LCNumber, LCInterval]): The point (or an enclosure of it)
        prec (Optional[int]): Bits for the Taylor coefficient enclosures
        trunc_order (Optional[Fraction]): Truncation order of the expansion

    Returns:
        LCInterval: Contains f at every point of x

    Raises:
        UnlimitedTranscendental: exp, ln or sqrt at an unlimited argument, ln at an
            infinitesimal, or an argument whose truncation is exhausted
        DomainError: Division by an exact zero, ln or sqrt of a negative value
    """
    from nonstd.config import get_settings
    settings = get_settings()
    prec = settings.prec if prec is None else prec
    order = settings.trunc_order if trunc_order is None else Fraction(trunc_order)
    point = x if isinstance(x, LCInterval) else LCInterval.exact(x)
    return LCEvaluator(prec, order).evaluate(f, point)


class _Unshared(Exception):
    """A node cannot be expanded around its value at the standard point."""


@dataclass(frozen=True)
class Increment:
    """
    f(a + h) = base + h (slope + rest).

    base and slope depend on a alone and are enclosed the same way for every
    offset, so two increments of one function at one point differ only in
    rest, which is infinitesimal.

    Attributes:
        base (RatInterval): f(a)
        slope (RatInterval): f'(a)
        rest (LCInterval): Difference quotient minus f'(a)
        h (LCNumber): The offset
        order (Fraction): Truncation order
    """
    base: RatInterval
    slope: RatInterval
    rest: LCInterval
    h: LCNumber
    order: Fraction

    def lift(self, interval: RatInterval) -> LCInterval:
        return LCInterval.from_rat_interval(interval, self.order)

    @property
    def quotient(self) -> LCInterval:
        """(f(a + h) - f(a)) / h"""
        return interval_add(self.lift(self.slope), self.rest)

    @property
    def rise(self) -> LCInterval:
        """f(a + h) - f(a)"""
        return interval_mul(LCInterval.exact(self.h), self.quotient)

    @property
    def value(self) -> LCInterval:
        return interval_add(self.lift(self.base), self.rise)


class IncrementEvaluator(LCEvaluator):
    """
    Node-wise evaluation of Increments at a + h.

    Products and quotients follow the difference form of the product and
    quotient rules; a transcendental node g expands as
    g(s + r) - g(s) = r (g'(s) + g''(s) r / 2 + ...) around its value s at a.

    Attributes:
        a (Fraction): The standard point
        h (LCNumber): The offset
    """

    def __init__(self, prec: int, order: Fraction, a: Fraction, h: LCNumber):
        super().__init__(prec, order)
        self.a = a
        self.h = h

    def _make(self, base: RatInterval, slope: RatInterval, rest: LCInterval) -> Increment:
        return Increment(base, slope, rest, self.h, self.order)

    def _zero(self) -> LCInterval:
        return LCInterval.exact(LCNumber.zero(self.order))

    def _const(self, value: Fraction) -> Increment:
        return self._make(RatInterval.point(value), RatInterval.point(0), self._zero())

    def increment(self, node: Expr) -> Increment:
        if isinstance(node, Const):
            return self._const(node.value)
        if isinstance(node, Var):
            return self._make(RatInterval.point(self.a), RatInterval.point(1), self._zero())
        if isinstance(node, (Add, Sub)):
            u, v = self.increment(node.left), self.increment(node.right)
            if isinstance(node, Add):
                return self._make(u.base + v.base, u.slope + v.slope, interval_add(u.rest, v.rest))
            return self._make(u.base - v.base, u.slope - v.slope, interval_sub(u.rest, v.rest))
        if isinstance(node, Mul):
            return self._product(self.increment(node.left), self.increment(node.right))
        if isinstance(node, Div):
            return self._quotient(self.increment(node.left), self.increment(node.right))
        if isinstance(node, PowInt):
            base = self.increment(node.base)
            power = self._const(Fraction(1))
            for _ in range(abs(node.exponent)):
                power = self._product(power, base)
            return power if node.exponent >= 0 else self._quotient(self._const(Fraction(1)), power)
        if isinstance(node, Abs):
            u = self.increment(node.arg)
            self._require_infinitesimal(u.rise)
            if u.base.lo > 0:
                return u
            if u.base.hi < 0:
                return self._make(-u.base, -u.slope, -u.rest)
            raise _Unshared(f"abs argument vanishes at {self.a}")
        if isinstance(node, Unary):
            return self._transcendental_increment(node, self.increment(node.arg))
        raise TypeError(f"not an expression node: {node!r}")

    def _product(self, u: Increment, v: Increment) -> Increment:
        """(uv)(a + h) - (uv)(a) = u(a + h) (v(a + h) - v(a)) + v(a) (u(a + h) - u(a))."""
        rest = interval_add(
            interval_add(interval_mul(self.from_rat(u.base), v.rest), interval_mul(u.rise, v.quotient)),
            interval_mul(self.from_rat(v.base), u.rest),
        )
        return self._make(u.base * v.base, u.base * v.slope + v.base * u.slope, rest)

    def _quotient(self, u: Increment, v: Increment) -> Increment:
        if v.base.contains_zero():
            raise _Unshared(f"divisor vanishes at {self.a}")
        leading = v.base * u.slope - u.base * v.slope
        square = v.base ** 2
        moving = interval_sub(interval_mul(self.from_rat(v.base), u.rest), interval_mul(self.from_rat(u.base), v.rest))
        numerator = interval_sub(interval_mul(self.from_rat(v.base), moving), interval_mul(self.from_rat(leading), v.rise))
        rest = interval_div(numerator, interval_mul(v.value, self.from_rat(square)))
        return self._make(u.base / v.base, leading / square, rest)

    def _require_infinitesimal(self, value: LCInterval):
        for part in (value.center, value.radius):
            if classify(part) is Magnitude.INDETERMINATE or not is_infinitesimal(part):
                raise _Unshared(f"increment {value} is not infinitesimal")

    def _transcendental_increment(self, node: Unary, u: Increment) -> Increment:
        name = node.name
        if name in ('ln', 'sqrt') and u.base.lo <= 0:
            raise _Unshared(f"{name} argument is not bounded away from 0 at {self.a}")
        r = u.rise
        self._require_infinitesimal(r)
        leads = [part.leading_exponent for part in (r.center, r.radius) if part.terms]
        count = math.ceil(self.order / min(leads)) + 1 if leads else 2
        coefficients = self._taylor_coefficients(name, u.base, max(count, 2))
        tail = self._zero()
        if len(coefficients) > 2:
            tail = self.from_rat(coefficients[-1])
            for coefficient in reversed(coefficients[2:-1]):
                tail = interval_add(self.from_rat(coefficient), interval_mul(r, tail))
            tail = interval_mul(r, tail)
            tail = LCInterval(
                LCNumber(tail.center.terms, min(tail.center.order, self.order)),
                LCNumber(tail.radius.terms, min(tail.radius.order, self.order)),
            )
        first = coefficients[1]
        rest = interval_add(
            interval_mul(self.from_rat(u.slope), tail),
            interval_mul(u.rest, interval_add(self.from_rat(first), tail)),
        )
        return self._make(coefficients[0], first * u.slope, rest)


def eval_increment(f: Expr, a, h: LCNumber, prec: Optional[int] = None,
                   trunc_order: Optional[Fraction] = None) -> Optional[Increment]:
    """
    f(a + h) split into f(a), f'(a) and a part moving with h.

    Args:
        f (Expr): The function
        a: The standard point
        h (LCNumber): An infinitesimal offset
        prec (Optional[int]): Bits for the coefficient enclosures
        trunc_order (Optional[Fraction]): Truncation order of the expansion

    Returns:
        Optional[Increment]: None when some node cannot be expanded around
        its value at a: a divisor or abs argument vanishing there, ln or sqrt
        at the edge of the domain, or an evaluation error
    """
    from nonstd.config import get_settings
    settings = get_settings()
    prec = settings.prec if prec is None else prec
    order = settings.trunc_order if trunc_order is None else Fraction(trunc_order)
    try:
        return IncrementEvaluator(prec, order, Fraction(a), h).increment(f)
    except (_Unshared, ExprError, LCError) as e:
        logger.debug(f"no increment form for {f} at {a}: {e}")
        return None
