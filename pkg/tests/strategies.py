"""
Hypothesis strategies for rationals, Levi-Civita numbers and expressions.
"""

from fractions import Fraction

from hypothesis import strategies as st

from nonstd.core.lc_number import LCNumber
from nonstd.expr.nodes import Add, Const, Cos, Div, Exp, Mul, PowInt, Sin, Sub, Var, Abs

rationals = st.fractions(min_value=-10, max_value=10, max_denominator=20)
positive_rationals = st.fractions(min_value=Fraction(1, 1000), max_value=1000, max_denominator=1000)
small_points = st.fractions(min_value=-3, max_value=3, max_denominator=8)

# Exponents stay far below the default truncation order 12, so products of
# three values never reach it.
EXPONENTS = [Fraction(-1), Fraction(0), Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2)]
LIMITED_EXPONENTS = [e for e in EXPONENTS if e >= 0]


def _lc(exponents):
    terms = st.lists(st.tuples(st.sampled_from(exponents), rationals), min_size=0, max_size=4)
    return terms.map(LCNumber)


lc_numbers = _lc(EXPONENTS)
limited_lc_numbers = _lc(LIMITED_EXPONENTS)
nonzero_lc_numbers = lc_numbers.filter(lambda x: not x.is_zero)


def polynomials(max_degree: int = 4):
    """Polynomials with small integer coefficients as expression trees."""
    def build(coefficients):
        node = Const(coefficients[0])
        for k, c in enumerate(coefficients[1:], start=1):
            node = Add(node, Mul(Const(c), PowInt(Var(), k)))
        return node
    return st.lists(st.integers(-6, 6), min_size=2, max_size=max_degree + 1).map(build)


def rational_functions():
    """p(x) / (1 + x^2 q(x)^2): defined everywhere."""
    def build(pair):
        p, q = pair
        return Div(p, Add(Const(1), Mul(PowInt(Var(), 2), PowInt(q, 2))))
    return st.tuples(polynomials(3), polynomials(2)).map(build)


def expressions(max_leaves: int = 6):
    """Random trees over x, small constants, + - *, sin, cos, exp, abs and safe division."""
    leaves = st.one_of(st.just(Var()), st.integers(-3, 3).map(Const))

    def extend(children):
        binary = st.tuples(st.sampled_from([Add, Sub, Mul]), children, children).map(lambda t: t[0](t[1], t[2]))
        unary = st.tuples(st.sampled_from([Sin, Cos, Abs]), children).map(lambda t: t[0](t[1]))
        bounded_exp = children.map(lambda c: Exp(Sin(c)))
        safe_div = st.tuples(children, children).map(lambda t: Div(t[0], Add(Const(2), Cos(t[1]))))
        return st.one_of(binary, unary, bounded_exp, safe_div)

    return st.recursive(leaves, extend, max_leaves=max_leaves)


@st.composite
def cells(draw, lo=-2, hi=2):
    """Non-degenerate rational cells inside [lo, hi]."""
    a = draw(st.fractions(min_value=lo, max_value=hi, max_denominator=16))
    width = draw(st.fractions(min_value=Fraction(1, 64), max_value=1, max_denominator=64))
    return a, a + width
