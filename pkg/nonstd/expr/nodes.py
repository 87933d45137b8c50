"""
Expression tree for one-variable real functions.

Nodes are frozen dataclasses, so trees compare structurally and can be
shared freely between threads. ``str(node)`` is the canonical, fully
parenthesised form accepted back by the parser.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import ClassVar, Union

from nonstd.core.rational import format_rat


class Expr:
    """Base class of all nodes; arithmetic operators build new nodes."""

    def __add__(self, other):
        return Add(self, _lift(other))

    def __radd__(self, other):
        return Add(_lift(other), self)

    def __sub__(self, other):
        return Sub(self, _lift(other))

    def __rsub__(self, other):
        return Sub(_lift(other), self)

    def __mul__(self, other):
        return Mul(self, _lift(other))

    def __rmul__(self, other):
        return Mul(_lift(other), self)

    def __truediv__(self, other):
        return Div(self, _lift(other))

    def __rtruediv__(self, other):
        return Div(_lift(other), self)

    def __neg__(self):
        return Mul(Const(Fraction(-1)), self)

    def __pow__(self, n: int):
        return PowInt(self, n)

    def __str__(self):
        return format_expr(self)


def _lift(value: Union[Expr, int, Fraction]) -> Expr:
    if isinstance(value, Expr):
        return value
    return Const(Fraction(value))


@dataclass(frozen=True, eq=True)
class Const(Expr):
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, 'value', Fraction(self.value))


@dataclass(frozen=True, eq=True)
class Var(Expr):
    pass


@dataclass(frozen=True, eq=True)
class Binary(Expr):
    left: Expr
    right: Expr
    symbol: ClassVar[str] = "?"


@dataclass(frozen=True, eq=True)
class Add(Binary):
    symbol: ClassVar[str] = "+"


@dataclass(frozen=True, eq=True)
class Sub(Binary):
    symbol: ClassVar[str] = "-"


@dataclass(frozen=True, eq=True)
class Mul(Binary):
    symbol: ClassVar[str] = "*"


@dataclass(frozen=True, eq=True)
class Div(Binary):
    symbol: ClassVar[str] = "/"


@dataclass(frozen=True, eq=True)
class PowInt(Expr):
    base: Expr
    exponent: int

    def __post_init__(self):
        if isinstance(self.exponent, bool) or not isinstance(self.exponent, int):
            raise TypeError("PowInt exponent must be an integer literal")


@dataclass(frozen=True, eq=True)
class Unary(Expr):
    arg: Expr
    name: ClassVar[str] = "?"


@dataclass(frozen=True, eq=True)
class Sin(Unary):
    name: ClassVar[str] = "sin"


@dataclass(frozen=True, eq=True)
class Cos(Unary):
    name: ClassVar[str] = "cos"


@dataclass(frozen=True, eq=True)
class Exp(Unary):
    name: ClassVar[str] = "exp"


@dataclass(frozen=True, eq=True)
class Ln(Unary):
    name: ClassVar[str] = "ln"


@dataclass(frozen=True, eq=True)
class Sqrt(Unary):
    name: ClassVar[str] = "sqrt"


@dataclass(frozen=True, eq=True)
class Abs(Unary):
    name: ClassVar[str] = "abs"


FUNCTIONS = {cls.name: cls for cls in (Sin, Cos, Exp, Ln, Sqrt, Abs)}
TRANSCENDENTAL = (Sin, Cos, Exp, Ln, Sqrt)

X = Var()


def _is_bare_integer(node: Expr) -> bool:
    return isinstance(node, Const) and node.value.denominator == 1 and node.value >= 0


def format_expr(node: Expr) -> str:
    """Canonical fully parenthesised rendering."""
    if isinstance(node, Const):
        if _is_bare_integer(node):
            return str(node.value.numerator)
        return f"({format_rat(node.value)})"
    if isinstance(node, Var):
        return "x"
    if isinstance(node, Binary):
        left, right = format_expr(node.left), format_expr(node.right)
        # "1 / 2" would read back as the literal 1/2
        if isinstance(node, Div) and _is_bare_integer(node.left) and _is_bare_integer(node.right):
            right = f"({right})"
        return f"({left} {node.symbol} {right})"
    if isinstance(node, PowInt):
        return f"({format_expr(node.base)} ^ {node.exponent})"
    if isinstance(node, Unary):
        return f"{node.name}({format_expr(node.arg)})"
    raise TypeError(f"not an expression node: {node!r}")


def walk(node: Expr):
    """Pre-order traversal."""
    yield node
    if isinstance(node, Binary):
        yield from walk(node.left)
        yield from walk(node.right)
    elif isinstance(node, PowInt):
        yield from walk(node.base)
    elif isinstance(node, Unary):
        yield from walk(node.arg)


def is_rational_only(node: Expr) -> bool:
    """Built from Const, Var, the four operations and integer powers only."""
    return all(isinstance(n, (Const, Var, Binary, PowInt)) for n in walk(node))


def substitute(node: Expr, replacement: Expr) -> Expr:
    """Replace the variable by another expression."""
    if isinstance(node, Var):
        return replacement
    if isinstance(node, Const):
        return node
    if isinstance(node, Binary):
        return type(node)(substitute(node.left, replacement), substitute(node.right, replacement))
    if isinstance(node, PowInt):
        return PowInt(substitute(node.base, replacement), node.exponent)
    if isinstance(node, Unary):
        return type(node)(substitute(node.arg, replacement))
    raise TypeError(f"not an expression node: {node!r}")
