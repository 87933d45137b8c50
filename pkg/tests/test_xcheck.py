from fractions import Fraction

import pytest

from nonstd.core.verdict import Status, Verdict
from nonstd.errors import UsageError
from nonstd.xcheck import (
    AgreementReport,
    AgreementRow,
    CrossCheckRunner,
    load_corpus,
    parse_corpus,
    parse_corpus_line,
    random_entries,
    run_xcheck,
)
from nonstd.xcheck.corpus import NOTIONS
from nonstd.xcheck.runner import BOTH_PROVED, BOTH_REFUTED, DISAGREEMENT, UNDECIDED

SMALL_CORPUS = """\
x^3 ; 2 ; limit, continuity, derivative
1/x ; 0 ; limit   # pole
abs(x) ; 0 ; derivative
x^2 ; 0..1 ; integral
"""

MIXED_CORPUS = """\
x^3 ; 2 ; limit, continuity, derivative
(x^2 - 1)/(x - 1) ; 1 ; limit
x/abs(x) ; 0 ; limit
abs(x) ; 0 ; continuity, derivative
cos(x) ; 0 ; continuity, derivative
x^2*sin(1/x) ; 0 ; derivative ; extend-zero
abs(x) ; -1..1 ; integral
"""


class TestCorpus:
    def test_parse_line(self):
        entry = parse_corpus_line("x*sin(1/x) ; 0 ; limit, derivative ; extend-zero")
        assert entry.point == 0
        assert entry.notions == ("limit", "derivative")
        assert entry.extend_zero
        assert str(entry) == "x*sin(1/x) ; 0"

    def test_range(self):
        entry = parse_corpus_line("sin(x) ; -1/2..1 ; integral")
        assert entry.interval == (Fraction(-1, 2), Fraction(1))
        assert str(entry) == "sin(x) ; -1/2..1"

    def test_comments_and_blank_lines(self):
        assert parse_corpus_line("   # nothing") is None
        assert len(parse_corpus(SMALL_CORPUS)) == 4

    @pytest.mark.parametrize("line", [
        "x ; 0",
        "x ; 0 ; smoothness",
        "x ; 0 ; integral",
        "x ; 0..1 ; limit",
        "x ; 1..0 ; integral",
        "x + ; 0 ; limit",
        "x ; 0.5 ; limit",
        "x ; 0 ; limit ; extend",
    ])
    def test_malformed_lines(self, line):
        with pytest.raises(UsageError):
            parse_corpus_line(line, 7)

    def test_random_entries_are_seeded(self):
        assert random_entries(3) == random_entries(3)
        assert random_entries(3) != random_entries(4)

    def test_builtin_corpus(self):
        corpus = load_corpus(seed=1)
        assert len(corpus) == len(load_corpus(seed=2))
        assert any(entry.extend_zero for entry in corpus)
        assert any(entry.interval is not None for entry in corpus)

    def test_corpus_file(self, tmp_path):
        path = tmp_path / "corpus.txt"
        path.write_text(SMALL_CORPUS)
        assert load_corpus(str(path)) == parse_corpus(SMALL_CORPUS)

    def test_missing_file(self, tmp_path):
        with pytest.raises(UsageError):
            load_corpus(str(tmp_path / "missing.txt"))


def row(nsa: Verdict, classical: Verdict) -> AgreementRow:
    return AgreementRow(0, "x ; 0", "limit", nsa, classical)


class TestOutcome:
    def test_agreeing_values(self):
        assert row(Verdict.proved(value=Fraction(1)), Verdict.proved(value=Fraction(1))).outcome == BOTH_PROVED

    def test_different_values(self):
        assert row(Verdict.proved(value=Fraction(1)), Verdict.proved(value=Fraction(2))).outcome == DISAGREEMENT

    def test_refutations(self):
        refuted = Verdict.refuted(witness={"x": 0})
        assert row(refuted, refuted).outcome == BOTH_REFUTED
        assert row(refuted, Verdict.proved(value=Fraction(0))).outcome == DISAGREEMENT

    def test_undecided_never_disagrees(self):
        assert row(Verdict.undecided(), Verdict.refuted(witness={"x": 0})).outcome == UNDECIDED

    def test_empty_report(self):
        report = AgreementReport()
        assert report.counts() == {BOTH_PROVED: 0, BOTH_REFUTED: 0, DISAGREEMENT: 0, UNDECIDED: 0}
        assert report.disagreements() == []


class TestRunner:
    def test_small_corpus(self):
        report = run_xcheck(parse_corpus(SMALL_CORPUS))
        assert report.disagreement == 0
        outcomes = {(r.entry, r.notion): r.outcome for r in report.rows}
        assert outcomes[("x^3 ; 2", "derivative")] == BOTH_PROVED
        assert outcomes[("1/x ; 0", "limit")] == BOTH_REFUTED
        assert outcomes[("abs(x) ; 0", "derivative")] == BOTH_REFUTED
        assert outcomes[("x^2 ; 0..1", "integral")] == BOTH_PROVED

    def test_derivative_rows_carry_eq1(self):
        report = CrossCheckRunner().run(parse_corpus("x^3 ; 2 ; derivative"))
        assert report.rows[0].eq1 is Status.PROVED
        assert report.to_dict()["rows"][0]["eq1"] == "PROVED"

    def test_every_notion_without_disagreement(self):
        report = run_xcheck(parse_corpus(MIXED_CORPUS))
        assert report.disagreement == 0, report.disagreements()
        assert {r.notion for r in report.rows} == set(NOTIONS)
        assert report.both_proved > 0
        assert report.both_refuted > 0
        outcomes = {(r.entry, r.notion): r.outcome for r in report.rows}
        assert outcomes[("x/abs(x) ; 0", "limit")] == BOTH_REFUTED
        assert outcomes[("abs(x) ; 0", "continuity")] == BOTH_PROVED

    def test_classical_refutation_of_a_proved_limit_is_a_disagreement(self, monkeypatch):
        monkeypatch.setattr("nonstd.xcheck.runner.ed_limit", lambda *args, **kwargs: Verdict.refuted(witness={"x": 0}))
        report = run_xcheck(parse_corpus("x^3 ; 2 ; limit"))
        assert report.rows[0].nsa.status is Status.PROVED
        assert report.rows[0].outcome == DISAGREEMENT
        assert report.disagreement == 1

    def test_pool_size_does_not_change_the_report(self):
        corpus = parse_corpus(SMALL_CORPUS)
        assert run_xcheck(corpus, jobs=1).to_dict() == run_xcheck(corpus, jobs=4).to_dict()

    @pytest.mark.slow
    def test_builtin_corpus_has_no_disagreement(self):
        report = run_xcheck(load_corpus(seed=0), seed=0, jobs=4)
        assert report.disagreement == 0, report.disagreements()
        assert report.both_proved > 0
        assert report.both_refuted > 0
