import io
from fractions import Fraction

import pytest

from nonstd.core.rat_interval import RatInterval
from nonstd.core.verdict import Status
from nonstd.errors import NotNonNegative
from nonstd.expr import parse
from nonstd.series import (
    SeqExpr,
    diverges_to_infinity,
    nonneg_bounded_verdict,
    nsa_series_verdict,
    parse_head,
    partial_sums,
    trace_to_csv,
    weierstrass_converges,
)


def geometric(ratio):
    return SeqExpr(parse("1"), offset=0, ratio=ratio)


class TestPartialSums:
    def test_exact_sum(self):
        trace = partial_sums(SeqExpr(parse("x"), offset=1), 10)
        assert trace.last == RatInterval.point(55)
        assert trace.monotone
        assert trace.bound_found == 55

    def test_head_overrides_the_formula(self):
        s = SeqExpr(parse("0"), head=parse_head("1, 2"))
        trace = partial_sums(s, 3)
        assert [total.lo for _, total in trace.sums] == [1, 3, 3, 3]

    def test_closed_form_sums_are_the_formula(self):
        trace = partial_sums(SeqExpr(parse("1 - 1/x"), offset=1, closed_form=True), 4)
        assert trace.at(4) == RatInterval.point(Fraction(3, 4))

    def test_index_before_offset(self):
        with pytest.raises(ValueError):
            partial_sums(SeqExpr(parse("x"), offset=5), 3)

    def test_csv(self):
        stream = io.StringIO()
        trace_to_csv(partial_sums(geometric(Fraction(1, 2)), 2), stream)
        assert stream.getvalue().splitlines() == ["n,lo,hi", "0,1,1", "1,3/2,3/2", "2,7/4,7/4"]

    def test_zero_ratio_is_rejected(self):
        with pytest.raises(ValueError):
            SeqExpr(parse("1"), ratio=0)


class TestWeierstrass:
    def test_closed_form_one_over_n(self):
        s = SeqExpr(parse("1/x"), offset=1, closed_form=True)
        verdict = weierstrass_converges(s, 0)
        assert verdict.status is Status.PROVED
        assert verdict.certificate["M"]["1/10"] == 10

    def test_closed_form_wrong_limit(self):
        s = SeqExpr(parse("1/x"), offset=1, closed_form=True)
        verdict = weierstrass_converges(s, 1)
        assert verdict.status is Status.REFUTED
        assert "n" in verdict.witness

    def test_geometric_series(self):
        verdict = weierstrass_converges(geometric(Fraction(1, 2)), 2)
        assert verdict.status is Status.PROVED
        indices = list(verdict.certificate["M"].values())
        assert indices == sorted(indices)

    def test_geometric_series_wrong_limit(self):
        assert weierstrass_converges(geometric(Fraction(1, 2)), 3).status is Status.REFUTED


class TestBounded:
    @pytest.mark.parametrize("ratio, total", [(Fraction(1, 2), 2), (Fraction(1, 3), Fraction(3, 2))])
    def test_geometric_converges(self, ratio, total):
        verdict = nonneg_bounded_verdict(geometric(ratio))
        assert verdict.status is Status.PROVED
        assert verdict.note == "converges"
        assert verdict.enclosure.contains(total)

    def test_harmonic_diverges(self):
        verdict = nonneg_bounded_verdict(SeqExpr(parse("1/x"), offset=1))
        assert verdict.status is Status.PROVED
        assert verdict.note == "diverges"

    def test_negative_terms(self):
        with pytest.raises(NotNonNegative):
            nonneg_bounded_verdict(SeqExpr(parse("-1")))


class TestDivergence:
    def test_sum_of_ones(self):
        verdict = diverges_to_infinity(SeqExpr(parse("1"), offset=1))
        assert verdict.status is Status.PROVED
        assert verdict.certificate["M"] == {"10": 10, "100": 100, "1000": 1000}

    def test_witness_is_the_least_index_past_which_sums_exceed_the_bound(self):
        s = SeqExpr(parse("1"), offset=0)
        verdict = diverges_to_infinity(s, ["10", "21/2"])
        assert verdict.certificate["M"] == {"10": 9, "21/2": 9}
        trace = partial_sums(s, 12)
        assert trace.at(9).lo <= 10 < trace.at(10).lo

    def test_bounded_sums_are_refuted(self):
        verdict = diverges_to_infinity(geometric(Fraction(1, 2)))
        assert verdict.status is Status.REFUTED
        assert verdict.witness["B"] == 10

    def test_bounds_must_ascend(self):
        with pytest.raises(ValueError):
            diverges_to_infinity(SeqExpr(parse("1")), ["100", "10"])


class TestNSASeries:
    @pytest.mark.parametrize("src, outcome", [("1/x^2", "converges"), ("1/x", "diverges"), ("x/(x^3 + 1)", "converges")])
    def test_order_of_the_term_at_an_infinite_index(self, src, outcome):
        verdict = nsa_series_verdict(SeqExpr(parse(src), offset=1))
        assert verdict.status is Status.PROVED
        assert verdict.note == outcome

    @pytest.mark.parametrize("s", [
        SeqExpr(parse("1/x"), offset=1, ratio=Fraction(-1)),
        SeqExpr(parse("-1/x"), offset=1),
    ])
    def test_terms_of_either_sign_are_undecided(self, s):
        verdict = nsa_series_verdict(s)
        assert verdict.status is Status.UNDECIDED
        assert "non-negative" in verdict.note

    def test_geometric_factor_below_one_converges_for_any_sign(self):
        verdict = nsa_series_verdict(SeqExpr(parse("1/x"), offset=1, ratio=Fraction(-1, 2)))
        assert verdict.status is Status.PROVED
        assert verdict.note == "converges"

    def test_closed_form_limit(self):
        s = SeqExpr(parse("1 - 1/x"), offset=1, closed_form=True)
        verdict = nsa_series_verdict(s)
        assert verdict.status is Status.PROVED
        assert verdict.value == 1
        assert nsa_series_verdict(s, 1).status is Status.PROVED
        assert nsa_series_verdict(s, 2).status is Status.REFUTED

    def test_unbounded_closed_form(self):
        s = SeqExpr(parse("x"), offset=1, closed_form=True)
        assert nsa_series_verdict(s).note == "diverges"
        assert nsa_series_verdict(s, 0).status is Status.REFUTED
