"""
Symbolic differentiation.

Standard rules with light constant folding; no simplification beyond that.
"""

from fractions import Fraction

from nonstd.errors import NotDifferentiable
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

ZERO = Const(Fraction(0))
ONE = Const(Fraction(1))


def _is_const(node: Expr, value=None) -> bool:
    return isinstance(node, Const) and (value is None or node.value == value)


def add(a: Expr, b: Expr) -> Expr:
    if _is_const(a, 0):
        return b
    if _is_const(b, 0):
        return a
    if _is_const(a) and _is_const(b):
        return Const(a.value + b.value)
    return Add(a, b)


def sub(a: Expr, b: Expr) -> Expr:
    if _is_const(b, 0):
        return a
    if _is_const(a) and _is_const(b):
        return Const(a.value - b.value)
    if _is_const(a, 0):
        return neg(b)
    return Sub(a, b)


def mul(a: Expr, b: Expr) -> Expr:
    if _is_const(a, 0) or _is_const(b, 0):
        return ZERO
    if _is_const(a, 1):
        return b
    if _is_const(b, 1):
        return a
    if _is_const(a) and _is_const(b):
        return Const(a.value * b.value)
    if _is_const(b):
        return Mul(b, a)
    return Mul(a, b)


def div(a: Expr, b: Expr) -> Expr:
    if _is_const(a, 0):
        return ZERO
    if _is_const(b, 1):
        return a
    if _is_const(a) and _is_const(b) and b.value != 0:
        return Const(a.value / b.value)
    return Div(a, b)


def neg(a: Expr) -> Expr:
    if _is_const(a):
        return Const(-a.value)
    return Mul(Const(Fraction(-1)), a)


def power(base: Expr, n: int) -> Expr:
    if n == 0:
        return ONE
    if n == 1:
        return base
    return PowInt(base, n)


def symbolic_diff(f: Expr) -> Expr:
    """
    Derivative of f with respect to x.

    Raises:
        NotDifferentiable: If f contains abs
    """
    if isinstance(f, Const):
        return ZERO
    if isinstance(f, Var):
        return ONE
    if isinstance(f, Add):
        return add(symbolic_diff(f.left), symbolic_diff(f.right))
    if isinstance(f, Sub):
        return sub(symbolic_diff(f.left), symbolic_diff(f.right))
    if isinstance(f, Mul):
        return add(mul(symbolic_diff(f.left), f.right), mul(f.left, symbolic_diff(f.right)))
    if isinstance(f, Div):
        numerator = sub(mul(symbolic_diff(f.left), f.right), mul(f.left, symbolic_diff(f.right)))
        return div(numerator, power(f.right, 2))
    if isinstance(f, PowInt):
        if f.exponent == 0:
            return ZERO
        return mul(mul(Const(Fraction(f.exponent)), power(f.base, f.exponent - 1)), symbolic_diff(f.base))
    if isinstance(f, Sin):
        return mul(Cos(f.arg), symbolic_diff(f.arg))
    if isinstance(f, Cos):
        return mul(neg(Sin(f.arg)), symbolic_diff(f.arg))
    if isinstance(f, Exp):
        return mul(f, symbolic_diff(f.arg))
    if isinstance(f, Ln):
        return div(symbolic_diff(f.arg), f.arg)
    if isinstance(f, Sqrt):
        return div(symbolic_diff(f.arg), mul(Const(Fraction(2)), f))
    if isinstance(f, Abs):
        raise NotDifferentiable(f"abs is not differentiable everywhere: {f}")
    raise TypeError(f"not an expression node: {f!r}")


def nth_derivative(f: Expr, n: int) -> Expr:
    for _ in range(n):
        f = symbolic_diff(f)
    return f
