"""
Exact polynomials and rational functions.

Expressions of the rational fragment are brought to a normal form P/Q.
Shifting (x = a + t) and cancelling the common power of t removes
removable singularities at a; the reciprocal substitution (x = 1/u) moves
the behaviour at infinity to a neighbourhood of u = 0.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Optional, Tuple

from nonstd.core.rat_interval import RatInterval
from nonstd.errors import DomainError, NotRational
from nonstd.expr.nodes import Add, Const, Div, Expr, Mul, PowInt, Sub, Var


def _trim(coefficients) -> Tuple[Fraction, ...]:
    coefficients = [Fraction(c) for c in coefficients]
    while coefficients and coefficients[-1] == 0:
        coefficients.pop()
    return tuple(coefficients)


@dataclass(frozen=True)
class Poly:
    """Polynomial with ascending rational coefficients; the zero polynomial is ()."""
    coefficients: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, 'coefficients', _trim(self.coefficients))

    @classmethod
    def constant(cls, value) -> 'Poly':
        return cls((Fraction(value),))

    @classmethod
    def x(cls) -> 'Poly':
        return cls((Fraction(0), Fraction(1)))

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def valuation(self) -> int:
        """Exponent of the lowest nonzero term."""
        for k, c in enumerate(self.coefficients):
            if c != 0:
                return k
        raise ValueError("valuation of the zero polynomial")

    def __add__(self, other: 'Poly') -> 'Poly':
        n = max(len(self.coefficients), len(other.coefficients))
        a = self.coefficients + (Fraction(0),) * (n - len(self.coefficients))
        b = other.coefficients + (Fraction(0),) * (n - len(other.coefficients))
        return Poly(tuple(p + q for p, q in zip(a, b)))

    def __neg__(self) -> 'Poly':
        return Poly(tuple(-c for c in self.coefficients))

    def __sub__(self, other: 'Poly') -> 'Poly':
        return self + (-other)

    def __mul__(self, other: 'Poly') -> 'Poly':
        if self.is_zero or other.is_zero:
            return Poly(())
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, p in enumerate(self.coefficients):
            for j, q in enumerate(other.coefficients):
                out[i + j] += p * q
        return Poly(tuple(out))

    def __pow__(self, n: int) -> 'Poly':
        result = Poly.constant(1)
        for _ in range(n):
            result = result * self
        return result

    def __call__(self, x: Fraction) -> Fraction:
        total = Fraction(0)
        for c in reversed(self.coefficients):
            total = total * x + c
        return total

    def enclose(self, cell: RatInterval) -> RatInterval:
        """Horner enclosure over a cell."""
        total = RatInterval.point(0)
        for c in reversed(self.coefficients):
            total = total * cell + c
        return total

    def shift(self, a: Fraction) -> 'Poly':
        """Coefficients of p(a + t) in t."""
        out = [Fraction(0)] * len(self.coefficients)
        for n, c in enumerate(self.coefficients):
            for k in range(n + 1):
                out[k] += c * comb(n, k) * a ** (n - k)
        return Poly(tuple(out))

    def reverse(self, length: int) -> 'Poly':
        """u^(length-1) * p(1/u) for length > degree."""
        padded = self.coefficients + (Fraction(0),) * (length - len(self.coefficients))
        return Poly(tuple(reversed(padded)))

    def drop_low(self, k: int) -> 'Poly':
        """p / t^k, assuming the valuation is at least k."""
        return Poly(self.coefficients[k:])

    def raise_by(self, k: int) -> 'Poly':
        """p * t^k."""
        return Poly((Fraction(0),) * k + self.coefficients)


@dataclass(frozen=True)
class RationalFunction:
    """numerator / denominator, with a nonzero denominator polynomial."""
    numerator: Poly
    denominator: Poly

    def __post_init__(self):
        if self.denominator.is_zero:
            raise DomainError(self, "denominator is identically zero")

    @classmethod
    def polynomial(cls, p: Poly) -> 'RationalFunction':
        return cls(p, Poly.constant(1))

    def __add__(self, other):
        return RationalFunction(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    def __sub__(self, other):
        return RationalFunction(
            self.numerator * other.denominator - other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    def __mul__(self, other):
        return RationalFunction(self.numerator * other.numerator, self.denominator * other.denominator)

    def __truediv__(self, other):
        if other.numerator.is_zero:
            raise DomainError(other, "division by an identically zero function")
        return RationalFunction(self.numerator * other.denominator, self.denominator * other.numerator)

    def __pow__(self, n: int):
        if n >= 0:
            return RationalFunction(self.numerator ** n, self.denominator ** n)
        if self.numerator.is_zero:
            raise DomainError(self, "negative power of an identically zero function")
        return RationalFunction(self.denominator ** -n, self.numerator ** -n)

    def __call__(self, x: Fraction) -> Fraction:
        denominator = self.denominator(x)
        if denominator == 0:
            raise DomainError(self, f"pole at {x}")
        return self.numerator(x) / denominator

    def cancel_powers(self) -> 'RationalFunction':
        """Cancel the common power of the variable."""
        if self.numerator.is_zero:
            return RationalFunction(Poly(()), Poly.constant(1))
        k = min(self.numerator.valuation, self.denominator.valuation)
        return RationalFunction(self.numerator.drop_low(k), self.denominator.drop_low(k))

    def shift(self, a: Fraction) -> 'RationalFunction':
        """g(t) = r(a + t) with common powers of t cancelled."""
        return RationalFunction(self.numerator.shift(a), self.denominator.shift(a)).cancel_powers()

    def reciprocal(self) -> 'RationalFunction':
        """g(u) = r(1/u) as a rational function of u."""
        n = max(self.numerator.degree, self.denominator.degree, 0) + 1
        numerator = self.numerator.reverse(n)
        denominator = self.denominator.reverse(n)
        return RationalFunction(numerator, denominator).cancel_powers()

    def enclose(self, cell: RatInterval) -> Optional[RatInterval]:
        """Enclosure over the cell, or None if the denominator enclosure reaches 0."""
        denominator = self.denominator.enclose(cell)
        if denominator.contains_zero():
            return None
        return self.numerator.enclose(cell) / denominator

    def __str__(self):
        return f"({self.numerator.coefficients}) / ({self.denominator.coefficients})"


def range_enclosure(r: RationalFunction, cell: RatInterval, depth: int = 8) -> Optional[RatInterval]:
    """
    Enclosure of r over the cell with adaptive bisection.

    Returns None when the denominator cannot be separated from 0 within the
    bisection depth.
    """
    direct = r.enclose(cell)
    if direct is not None or depth == 0 or cell.is_point():
        return direct
    left, right = cell.bisect()
    low = range_enclosure(r, left, depth - 1)
    if low is None:
        return None
    high = range_enclosure(r, right, depth - 1)
    if high is None:
        return None
    return low.hull(high)


def to_rational_function(f: Expr) -> RationalFunction:
    """
    Normal form P/Q of an expression of the rational fragment.

    Raises:
        NotRational: For transcendental nodes and abs
    """
    if isinstance(f, Const):
        return RationalFunction.polynomial(Poly.constant(f.value))
    if isinstance(f, Var):
        return RationalFunction.polynomial(Poly.x())
    if isinstance(f, Add):
        return to_rational_function(f.left) + to_rational_function(f.right)
    if isinstance(f, Sub):
        return to_rational_function(f.left) - to_rational_function(f.right)
    if isinstance(f, Mul):
        return to_rational_function(f.left) * to_rational_function(f.right)
    if isinstance(f, Div):
        return to_rational_function(f.left) / to_rational_function(f.right)
    if isinstance(f, PowInt):
        return to_rational_function(f.base) ** f.exponent
    raise NotRational(f"{f} is not a rational function of x")
