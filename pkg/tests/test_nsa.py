from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import libmp

from nonstd.checks import (
    ProbeSet,
    default_pairs,
    dq_gap_xn,
    eq1_check,
    nsa_continuity,
    nsa_derivative,
    nsa_derivative_against,
    nsa_differentiable_two_point,
    nsa_limit,
    parse_pairs,
    validate_pairs,
)
from nonstd.core.lc_number import LCNumber, epsilon
from nonstd.core.verdict import Status
from nonstd.errors import UsageError
from nonstd.expr import eval_rat, parse, symbolic_diff
from tests.strategies import polynomials, rational_functions, small_points


def high_precision(value) -> Fraction:
    """A 256-bit rational approximation of an mpmath expression."""
    with mpmath.workprec(256):
        return Fraction(*libmp.to_rational(value()._mpf_))


class TestLimit:
    @pytest.mark.parametrize("src, a, value", [
        ("x^2 - 3*x + 1", Fraction(1, 2), Fraction(-1, 4)),
        ("(x^2 - 1)/(x - 1)", 1, 2),
        ("(x^3 - 8)/(x - 2)", 2, 12),
        ("sin(x)/x", 0, 1),
        ("exp(x)", 0, 1),
        ("x*sin(1/x)", 0, 0),
    ])
    def test_proved(self, src, a, value):
        verdict = nsa_limit(parse(src), a)
        assert verdict.status is Status.PROVED
        assert verdict.value == value

    @pytest.mark.parametrize("src", ["1/x", "1/x^2", "x/abs(x)"])
    def test_refuted_at_the_origin(self, src):
        verdict = nsa_limit(parse(src), 0)
        assert verdict.status is Status.REFUTED
        assert verdict.witness

    def test_oscillation_is_not_proved(self):
        assert nsa_limit(parse("sin(1/x)"), 0).status is not Status.PROVED

    def test_irrational_limit_is_enclosed(self):
        verdict = nsa_limit(parse("exp(x)"), 1)
        assert verdict.status is Status.PROVED
        assert verdict.value is None
        assert verdict.enclosure.width < Fraction(1, 2 ** 60)
        assert verdict.enclosure.contains(high_precision(lambda: mpmath.e))


class TestContinuity:
    def test_polynomial(self):
        verdict = nsa_continuity(parse("x^4 - 2*x"), -1)
        assert verdict.status is Status.PROVED
        assert verdict.value == 3

    def test_removable_singularity_is_not_defined_at_the_point(self):
        assert nsa_continuity(parse("(x^2 - 1)/(x - 1)"), 1).status is Status.UNDECIDED

    def test_extend_zero_fills_the_gap(self):
        verdict = nsa_continuity(parse("x*sin(1/x)"), 0, extend_zero=True)
        assert verdict.status is Status.PROVED

    def test_jump(self):
        assert nsa_continuity(parse("x/abs(x)"), 0, extend_zero=True).status is Status.REFUTED

    def test_abs(self):
        assert nsa_continuity(parse("abs(x)"), 0).status is Status.PROVED

    @pytest.mark.parametrize("src, a", [("exp(sin(x))", 1), ("sqrt(x)", 2), ("ln(x)*cos(x)", Fraction(1, 3))])
    def test_transcendental_values(self, src, a):
        verdict = nsa_continuity(parse(src), a)
        assert verdict.status is Status.PROVED
        assert verdict.enclosure.intersect(eval_rat(parse(src), a)) is not None


class TestDerivative:
    def test_cube_at_two(self):
        verdict = nsa_derivative(parse("x^3"), 2)
        assert verdict.status is Status.PROVED
        assert verdict.value == 12

    def test_abs_at_zero(self):
        assert nsa_derivative(parse("abs(x)"), 0).status is Status.REFUTED
        assert nsa_differentiable_two_point(parse("abs(x)"), 0).status is Status.REFUTED

    def test_x_squared_sin_inverse_is_differentiable_but_not_continuously(self):
        f = parse("x^2*sin(1/x)")
        verdict = nsa_derivative(f, 0, extend_zero=True)
        assert verdict.status is Status.PROVED
        assert verdict.value == 0
        fprime = parse("2*x*sin(1/x) - cos(1/x)")
        assert eq1_check(f, fprime, 0, extend_zero=True).status is not Status.PROVED

    def test_against_a_given_value(self):
        f = parse("x^3")
        assert nsa_derivative_against(f, 12, 2).status is Status.PROVED
        verdict = nsa_derivative_against(f, 11, 2)
        assert verdict.status is Status.REFUTED

    def test_eq1_for_a_polynomial(self):
        verdict = eq1_check(parse("x^3"), parse("3*x^2"), 2)
        assert verdict.status is Status.PROVED
        assert verdict.value == 12

    def test_two_point_for_a_polynomial(self):
        verdict = nsa_differentiable_two_point(parse("x^2 + x"), 1)
        assert verdict.status is Status.PROVED
        assert verdict.value == 3

    @pytest.mark.parametrize("src, a, derivative", [
        ("sin(x)", 1, lambda: mpmath.cos(1)),
        ("cos(x)", Fraction(1, 2), lambda: -mpmath.sin(mpmath.mpf(1) / 2)),
        ("exp(sin(x))", 1, lambda: mpmath.exp(mpmath.sin(1)) * mpmath.cos(1)),
        ("sin(x)*cos(x)", 1, lambda: mpmath.cos(2)),
        ("ln(x)/(1 + x^2)", 2, lambda: mpmath.mpf(1) / 10 - 4 * mpmath.log(2) / 25),
        ("sqrt(x)^3", 3, lambda: 3 * mpmath.sqrt(3) / 2),
    ])
    def test_transcendental_functions_at_generic_points(self, src, a, derivative):
        verdict = nsa_derivative(parse(src), a)
        assert verdict.status is Status.PROVED
        assert verdict.value is None
        assert verdict.enclosure.width < Fraction(1, 2 ** 50)
        assert verdict.enclosure.contains(high_precision(derivative))

    def test_sin_at_one_by_every_quotient_form(self):
        f = parse("sin(x)")
        cos_one = high_precision(lambda: mpmath.cos(1))
        verdict = nsa_differentiable_two_point(f, 1)
        assert verdict.status is Status.PROVED
        assert verdict.enclosure.contains(cos_one)
        assert nsa_derivative_against(f, Fraction(1, 2), 1).status is Status.REFUTED

    @settings(max_examples=30)
    @given(st.one_of(polynomials(), rational_functions()), st.lists(small_points, min_size=5, max_size=5))
    def test_agrees_with_symbolic_derivative(self, f, points):
        derivative = symbolic_diff(f)
        for a in points:
            verdict = nsa_derivative(f, a)
            assert verdict.status is Status.PROVED
            assert verdict.value == eval_rat(derivative, a).lo


class TestDifferenceQuotientGap:
    def test_large_exponent_gap_is_far_from_zero(self):
        assert dq_gap_xn(100, 2, Fraction(1, 100)) >= Fraction(99, 2) * 2 ** 98

    def test_gap_shrinks_with_e(self):
        gaps = [dq_gap_xn(5, 2, Fraction(1, 10 ** k)) for k in range(1, 8)]
        assert all(later < earlier for earlier, later in zip(gaps, gaps[1:]))
        assert gaps[-1] > 0

    def test_linear_has_no_gap(self):
        assert dq_gap_xn(1, 7, Fraction(1, 3)) == 0

    @pytest.mark.parametrize("n, e", [(0, Fraction(1, 2)), (3, 0)])
    def test_invalid_arguments(self, n, e):
        with pytest.raises(ValueError):
            dq_gap_xn(n, 1, e)


class TestProbes:
    def test_default_probe_set(self):
        probes = ProbeSet.default()
        assert len(probes) == 5
        assert any(h.sign() < 0 for h in probes)

    @pytest.mark.parametrize("offsets", [
        (epsilon(), epsilon() * epsilon()),
        (epsilon(), -epsilon()),
        (epsilon(), -epsilon(), LCNumber.constant(1)),
        (epsilon(), -epsilon() * epsilon(), LCNumber.zero()),
    ])
    def test_invalid_probe_sets(self, offsets):
        with pytest.raises(ValueError):
            ProbeSet(offsets)

    def test_parse(self):
        probes = ProbeSet.parse("eps, -eps, eps^2")
        # a literal without O(...) is trusted to the configured order, unlike a product
        assert probes.offsets == (epsilon(), -epsilon(), LCNumber.monomial(1, 2))
        assert probes.offsets[2].terms == (epsilon() * epsilon()).terms

    def test_parse_rejects_appreciable_offsets(self):
        with pytest.raises(UsageError):
            ProbeSet.parse("eps, -1")

    def test_pairs(self):
        pairs = parse_pairs("0, eps; -eps, eps")
        assert pairs[1] == (-epsilon(), epsilon())
        with pytest.raises(UsageError):
            parse_pairs("eps, eps")
        with pytest.raises(UsageError):
            parse_pairs("eps")

    def test_unanchored_pairs_reject_zero(self):
        validate_pairs(default_pairs())
        with pytest.raises(ValueError):
            validate_pairs(default_pairs(), anchored=False)
