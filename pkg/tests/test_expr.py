from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import iv, libmp

from nonstd.core.lc_number import LCNumber, epsilon, is_infinitesimal
from nonstd.core.rat_interval import RatInterval
from nonstd.errors import DomainError, EnclosureUnbounded, ExprSyntaxError, NotDifferentiable, NotRational
from nonstd.expr import (
    X,
    Abs,
    Add,
    Const,
    Cos,
    Div,
    Exp,
    Mul,
    PowInt,
    Sin,
    Sqrt,
    Sub,
    Var,
    eval_dual,
    eval_increment,
    eval_interval,
    eval_lc,
    eval_rat,
    format_expr,
    is_rational_only,
    monotone_on,
    monotonicity,
    parse,
    symbolic_diff,
    to_rational_function,
)
from tests.strategies import cells, expressions, polynomials, rational_functions, small_points

iv.prec = 200


def to_sympy(node):
    return sympy.sympify(format_expr(node).replace("^", "**").replace("ln", "log"))


def iv_eval(node, t):
    """Independent tight enclosure of f(t) with mpmath interval arithmetic."""
    if isinstance(node, Const):
        return iv.mpf(node.value.numerator) / node.value.denominator
    if isinstance(node, Var):
        return iv.mpf(t.numerator) / t.denominator
    if isinstance(node, Add):
        return iv_eval(node.left, t) + iv_eval(node.right, t)
    if isinstance(node, Sub):
        return iv_eval(node.left, t) - iv_eval(node.right, t)
    if isinstance(node, Mul):
        return iv_eval(node.left, t) * iv_eval(node.right, t)
    if isinstance(node, Div):
        return iv_eval(node.left, t) / iv_eval(node.right, t)
    if isinstance(node, PowInt):
        return iv_eval(node.base, t) ** node.exponent
    if isinstance(node, Abs):
        return abs(iv_eval(node.arg, t))
    functions = {Sin: iv.sin, Cos: iv.cos, Exp: iv.exp}
    return functions[type(node)](iv_eval(node.arg, t))


def iv_bounds(value):
    lo, hi = value._mpi_
    return Fraction(*libmp.to_rational(lo)), Fraction(*libmp.to_rational(hi))


class TestParser:
    @pytest.mark.parametrize("src, expected", [
        ("x", Var()),
        ("1/2", Const(Fraction(1, 2))),
        ("-3", Const(-3)),
        ("x^2", PowInt(Var(), 2)),
        ("x^-1", PowInt(Var(), -1)),
        ("1/x", Div(Const(1), Var())),
        ("2*x + 1", Add(Mul(Const(2), Var()), Const(1))),
        ("x - 1 - 2", Sub(Sub(Var(), Const(1)), Const(2))),
        ("sin(1/x)", Sin(Div(Const(1), Var()))),
        ("-x", Mul(Const(-1), Var())),
    ])
    def test_parses(self, src, expected):
        assert parse(src) == expected

    def test_power_binds_tighter_than_product(self):
        assert parse("x^2*sin(1/x)") == Mul(PowInt(Var(), 2), Sin(Div(Const(1), Var())))

    @pytest.mark.parametrize("src, offset", [
        ("x +", 3),
        ("x $ 1", 2),
        ("sin x", 4),
        ("foo(x)", 0),
        ("(x", 2),
        ("x^y", 2),
    ])
    def test_syntax_errors_carry_the_offset(self, src, offset):
        with pytest.raises(ExprSyntaxError) as e:
            parse(src)
        assert e.value.offset == offset

    def test_decimal_literals_are_rejected(self):
        with pytest.raises(ExprSyntaxError):
            parse("0.5*x")

    @given(expressions())
    def test_printed_form_parses_back(self, f):
        assert parse(format_expr(f)) == f

    @given(polynomials())
    def test_polynomials_round_trip(self, f):
        assert parse(str(f)) == f


class TestFormat:
    def test_fully_parenthesised(self):
        assert format_expr(parse("x^2 + sin(x)")) == "((x ^ 2) + sin(x))"

    def test_negative_constants(self):
        assert format_expr(Const(-3)) == "(-3)"

    def test_division_of_integers_stays_a_division(self):
        node = Div(Const(1), Const(2))
        assert parse(format_expr(node)) == node

    def test_rational_only(self):
        assert is_rational_only(parse("(x^2 - 1)/(x - 1)"))
        assert not is_rational_only(parse("x*sin(x)"))
        assert not is_rational_only(parse("abs(x)"))


class TestSymbolicDiff:
    @given(polynomials())
    def test_polynomials_match_sympy(self, f):
        x = sympy.Symbol("x")
        assert sympy.simplify(to_sympy(symbolic_diff(f)) - sympy.diff(to_sympy(f), x)) == 0

    @pytest.mark.parametrize("src", [
        "sin(x)*cos(x)",
        "exp(x^2)",
        "ln(1 + x^2)",
        "sqrt(1 + x)",
        "x/(1 + x^2)",
        "x^-2",
    ])
    def test_elementary_functions_match_sympy(self, src):
        x = sympy.Symbol("x")
        f = parse(src)
        assert sympy.simplify(to_sympy(symbolic_diff(f)) - sympy.diff(to_sympy(f), x)) == 0

    def test_abs_is_not_differentiated(self):
        with pytest.raises(NotDifferentiable):
            symbolic_diff(parse("x*abs(x)"))


class TestEvalRat:
    def test_rational_expressions_are_exact(self):
        value = eval_rat(parse("(x^2 - 3*x + 1)/(x + 1)"), Fraction(1, 2))
        assert value.is_point()
        assert value.lo == Fraction(-1, 6)

    @pytest.mark.parametrize("src, point, value", [
        ("sin(x)", 0, 0),
        ("cos(x)", 0, 1),
        ("exp(x)", 0, 1),
        ("ln(x)", 1, 0),
        ("sqrt(x)", 4, 2),
    ])
    def test_special_points_are_exact(self, src, point, value):
        assert eval_rat(parse(src), point) == RatInterval.point(value)

    @given(st.fractions(min_value=-4, max_value=4, max_denominator=30))
    def test_transcendental_enclosures_are_tight_and_sound(self, t):
        f = parse("exp(sin(x)) + cos(x)")
        enclosure = eval_rat(f, t, prec=64)
        lo, hi = iv_bounds(iv_eval(f, t))
        assert enclosure.width <= Fraction(1, 2 ** 64)
        assert enclosure.lo <= hi and lo <= enclosure.hi

    @pytest.mark.parametrize("src, point", [("1/x", 0), ("ln(x)", -1), ("sqrt(x)", -1), ("(x^2 - 1)/(x - 1)", 1)])
    def test_undefined_points_raise(self, src, point):
        with pytest.raises(DomainError):
            eval_rat(parse(src), point)


class TestEvalInterval:
    @settings(max_examples=1000)
    @given(expressions(), cells())
    def test_encloses_sampled_values(self, f, cell):
        a, b = cell
        enclosure = eval_interval(f, RatInterval(a, b))
        for k in range(100):
            t = a + (b - a) * Fraction(k, 99)
            lo, hi = iv_bounds(iv_eval(f, t))
            # the 200-bit oracle pins f(t) down to its own width
            assert hi - lo < Fraction(1, 2 ** 150)
            value = (lo + hi) / 2
            assert enclosure.lo - (hi - lo) <= value <= enclosure.hi + (hi - lo)

    @given(rational_functions(), cells())
    def test_rational_functions_contain_exact_values(self, f, cell):
        a, b = cell
        enclosure = eval_interval(f, RatInterval(a, b))
        for k in range(11):
            t = a + (b - a) * Fraction(k, 10)
            assert enclosure.contains(eval_rat(f, t).lo)

    def test_pole_inside_the_cell_is_unbounded(self):
        with pytest.raises(EnclosureUnbounded):
            eval_interval(parse("1/x"), RatInterval(-1, 1))

    def test_strict_mode_rejects_partial_domains(self):
        f = parse("sqrt(x)")
        eval_interval(f, RatInterval(-1, 1))
        with pytest.raises(DomainError):
            eval_interval(f, RatInterval(-1, 1), strict=True)


class TestEvalDual:
    @given(polynomials(), cells())
    def test_slope_contains_the_derivative(self, f, cell):
        a, b = cell
        dual = eval_dual(f, RatInterval(a, b))
        derivative = symbolic_diff(f)
        for k in range(11):
            t = a + (b - a) * Fraction(k, 10)
            assert dual.slope.contains(eval_rat(derivative, t).lo)
            assert dual.value.contains(eval_rat(f, t).lo)

    def test_abs_across_the_kink_gives_the_clarke_hull(self):
        dual = eval_dual(Abs(X), RatInterval(-1, 1))
        assert dual.slope.contains(RatInterval(-1, 1))

    def test_sqrt_at_zero_has_no_slope_enclosure(self):
        with pytest.raises(EnclosureUnbounded):
            eval_dual(Sqrt(X), RatInterval(0, 1))


class TestRationalFunctions:
    def test_normal_form_evaluates_like_the_tree(self):
        f = parse("(x^3 - 8)/(x - 2) + 1/x")
        r = to_rational_function(f)
        for t in (Fraction(1), Fraction(-3, 2), Fraction(5, 7)):
            assert r(t) == eval_rat(f, t).lo

    def test_shift_cancels_the_removable_singularity(self):
        r = to_rational_function(parse("(x^2 - 1)/(x - 1)")).shift(Fraction(1))
        assert r(Fraction(0)) == 2

    def test_transcendental_nodes_are_not_rational(self):
        with pytest.raises(NotRational):
            to_rational_function(parse("sin(x)"))


class TestMonotonicity:
    @pytest.mark.parametrize("src, lo, hi, direction", [
        ("x^3", -1, 1, 1),
        ("exp(x)", -1, 1, 1),
        ("sqrt(x)", 0, 1, 1),
        ("1/x", 1, 2, -1),
        ("-x + 3", 0, 5, -1),
        ("7", 0, 1, 0),
    ])
    def test_direction(self, src, lo, hi, direction):
        assert monotone_on(parse(src), RatInterval(lo, hi)) == direction

    def test_unknown_direction(self):
        assert monotonicity(parse("sin(x)"), RatInterval(0, 4)) is None
        assert monotone_on(parse("x^2"), RatInterval(-1, 1)) is None


class TestEvalLC:
    def test_sin_at_epsilon_is_its_series(self):
        value = eval_lc(Sin(X), epsilon())
        assert value.radius.is_zero
        assert value.center.coefficient(1) == 1
        assert value.center.coefficient(3) == Fraction(-1, 6)
        assert value.center.coefficient(2) == 0

    def test_exp_at_epsilon(self):
        value = eval_lc(Exp(X), epsilon())
        assert [value.center.coefficient(k) for k in range(4)] == [1, 1, Fraction(1, 2), Fraction(1, 6)]

    def test_sqrt_of_epsilon(self):
        value = eval_lc(Sqrt(X), epsilon())
        assert value.center.terms == ((Fraction(1, 2), Fraction(1)),)

    @given(small_points, polynomials())
    def test_polynomials_at_a_plus_epsilon_expand_exactly(self, a, f):
        value = eval_lc(f, LCNumber.constant(a) + epsilon())
        assert value.radius.is_zero
        assert value.center.coefficient(0) == eval_rat(f, a).lo
        assert value.center.coefficient(1) == eval_rat(symbolic_diff(f), a).lo

    def test_division_by_exact_zero(self):
        with pytest.raises(DomainError):
            eval_lc(parse("1/(x - x)"), epsilon())


class TestEvalIncrement:
    def test_value_and_slope_are_shared_across_offsets(self):
        f = parse("exp(sin(x))")
        first, second = eval_increment(f, 1, epsilon()), eval_increment(f, 1, -epsilon() * epsilon())
        assert (first.base, first.slope) == (second.base, second.slope)
        assert first.base.intersect(eval_rat(f, 1)) is not None
        assert first.slope.width < Fraction(1, 2 ** 50)
        for increment in (first, second):
            assert is_infinitesimal(increment.rest.center)
            assert is_infinitesimal(increment.rest.radius)

    def test_polynomial_increment_is_the_exact_expansion(self):
        increment = eval_increment(parse("x^3"), 2, epsilon())
        assert increment.base == RatInterval.point(8)
        assert increment.slope == RatInterval.point(12)
        value = increment.value
        assert value.radius.is_zero
        assert value.center.terms == eval_lc(parse("x^3"), 2 + epsilon()).center.terms

    def test_quotient_rule(self):
        increment = eval_increment(parse("1/(1 + x^2)"), 1, epsilon())
        assert increment.slope == RatInterval.point(Fraction(-1, 2))
        assert increment.rest.radius.is_zero

    @pytest.mark.parametrize("src, a", [("abs(x)", 0), ("1/x", 0), ("sqrt(x)", 0), ("ln(x)", 0), ("x/abs(x)", 0)])
    def test_no_expansion_where_a_node_vanishes(self, src, a):
        assert eval_increment(parse(src), a, epsilon()) is None
