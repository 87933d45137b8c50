from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nonstd.core.lc_number import (
    LCNumber,
    Magnitude,
    Ordering,
    classify,
    epsilon,
    format_lc,
    i_close,
    is_infinitesimal,
    is_large,
    is_limited,
    lc_cmp,
    lc_inv,
    parse_lc,
    standard_part,
)
from nonstd.errors import ExponentDenominatorTooLarge, UsageError, Unlimited, ZeroDivisionLC
from tests.strategies import limited_lc_numbers, lc_numbers, nonzero_lc_numbers, positive_rationals


def agree(x: LCNumber, y: LCNumber) -> bool:
    """Equal in every term both values are trusted for."""
    order = min(x.order, y.order)
    return [t for t in x.terms if t[0] <= order] == [t for t in y.terms if t[0] <= order]


ONE = LCNumber.constant(1)


class TestFieldAxioms:
    @settings(max_examples=1000)
    @given(lc_numbers, lc_numbers, lc_numbers)
    def test_addition_is_associative_and_commutative(self, x, y, z):
        assert (x + y) + z == x + (y + z)
        assert x + y == y + x

    @settings(max_examples=1000)
    @given(lc_numbers, lc_numbers, lc_numbers)
    def test_multiplication_is_associative(self, x, y, z):
        assert agree((x * y) * z, x * (y * z))

    @settings(max_examples=1000)
    @given(lc_numbers, lc_numbers)
    def test_multiplication_is_commutative(self, x, y):
        assert x * y == y * x

    @settings(max_examples=1000)
    @given(lc_numbers, lc_numbers, lc_numbers)
    def test_distributivity(self, x, y, z):
        assert agree(x * (y + z), x * y + x * z)

    @settings(max_examples=1000)
    @given(nonzero_lc_numbers)
    def test_inverse(self, x):
        assert agree(x * lc_inv(x), ONE)

    @settings(max_examples=1000)
    @given(lc_numbers)
    def test_additive_inverse(self, x):
        assert (x - x).is_zero

    @settings(max_examples=1000)
    @given(lc_numbers, lc_numbers, lc_numbers)
    def test_order_is_compatible_with_addition(self, x, y, z):
        assert lc_cmp(x, y) == lc_cmp(x + z, y + z)

    @settings(max_examples=1000)
    @given(nonzero_lc_numbers, nonzero_lc_numbers)
    def test_positive_times_positive_is_positive(self, x, y):
        assert (abs(x) * abs(y)).sign() == 1


class TestStandardPart:
    @given(limited_lc_numbers, limited_lc_numbers)
    def test_is_a_ring_homomorphism(self, x, y):
        assert standard_part(x + y) == standard_part(x) + standard_part(y)
        assert standard_part(x * y) == standard_part(x) * standard_part(y)

    def test_of_large_value_raises(self):
        with pytest.raises(Unlimited):
            standard_part(lc_inv(epsilon()))

    def test_reads_the_constant_term(self):
        assert standard_part(parse_lc("3/2 + eps - 4*eps^2")) == Fraction(3, 2)


class TestInfinitesimals:
    @given(positive_rationals)
    def test_epsilon_is_positive_and_below_every_standard_rational(self, q):
        e = epsilon()
        assert lc_cmp(LCNumber.zero(), e) is Ordering.LT
        assert lc_cmp(e, LCNumber.constant(q)) is Ordering.LT

    @given(limited_lc_numbers)
    def test_limited_times_infinitesimal_is_infinitesimal(self, x):
        assert is_infinitesimal(x * epsilon())

    def test_closeness_is_not_preserved_by_large_factors(self):
        y = lc_inv(epsilon())
        y1, y2 = LCNumber.constant(1), 1 + epsilon()
        assert i_close(y1, y2)
        assert not i_close(y * y1, y * y2)

    @given(st.integers(min_value=1, max_value=10 ** 12))
    def test_infinitesimal_tolerance_defeats_every_standard_index(self, N):
        # |S_n - 0| < eps fails at every standard n for S_n = 1/n
        assert lc_cmp(LCNumber.constant(Fraction(1, N)), epsilon()) is Ordering.GT

    def test_classify(self):
        e = epsilon()
        assert classify(LCNumber.zero()) is Magnitude.ZERO
        assert classify(e * e) is Magnitude.INFINITESIMAL
        assert classify(2 + e) is Magnitude.APPRECIABLE
        assert classify(lc_inv(e)) is Magnitude.LARGE
        assert classify(LCNumber.zero(order=0)) is Magnitude.INDETERMINATE

    def test_predicates(self):
        e = epsilon()
        assert is_limited(3 + e) and not is_infinitesimal(3 + e)
        assert is_large(1 / e)
        assert is_infinitesimal(LCNumber.zero())


class TestTruncation:
    def test_product_order_tracks_leading_exponents(self):
        x = LCNumber({-1: 1}, order=4)
        y = LCNumber({0: 1, 1: 1}, order=4)
        assert (x * y).order == 3

    def test_terms_beyond_order_are_dropped(self):
        assert LCNumber({1: 1, 5: 1}, order=3).terms == ((Fraction(1), Fraction(1)),)

    def test_inverse_of_one_plus_eps_is_geometric(self):
        inverse = lc_inv(LCNumber({0: 1, 1: 1}, order=4))
        assert inverse.terms == tuple((Fraction(k), Fraction((-1) ** k)) for k in range(5))

    def test_inverse_of_zero_raises(self):
        with pytest.raises(ZeroDivisionLC):
            lc_inv(LCNumber.zero())

    def test_exponent_denominator_is_bounded(self):
        with pytest.raises(ExponentDenominatorTooLarge):
            LCNumber({Fraction(1, 97): 1})

    def test_integer_powers(self):
        e = epsilon()
        assert (1 + e) ** 2 == 1 + 2 * e + e * e
        assert agree((1 + e) ** -1, lc_inv(1 + e))


class TestTextForm:
    @pytest.mark.parametrize("text", [
        "0",
        "eps",
        "-eps",
        "3/2 + eps - 4*eps^2",
        "eps^-1 + 1",
        "2*eps^(1/2)",
        "1 + eps + O(eps^3)",
    ])
    def test_round_trip(self, text):
        assert format_lc(parse_lc(text)) == text

    @given(lc_numbers)
    def test_parse_inverts_format(self, x):
        assert parse_lc(format_lc(x)) == x

    @pytest.mark.parametrize("text", ["", "eps eps", "1 +", "O(eps^2) + eps", "0.5"])
    def test_malformed_literals(self, text):
        with pytest.raises(UsageError):
            parse_lc(text)

    def test_order_marker_sets_the_truncation(self):
        assert parse_lc("1 + O(eps^3)").order == 3

    @given(st.integers(1, 5))
    def test_epsilon_powers(self, n):
        assert (epsilon() ** n).terms == ((Fraction(n), Fraction(1)),)
