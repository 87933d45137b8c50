import io
import json

import pytest

from nonstd.cli import main
from nonstd.models import CheckReport

SCHEDULE = ["--eps", "1/10,1/1000"]


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run(*argv, "--json")
    assert not err
    return code, json.loads(out)


class TestVerdictCommands:
    def test_derivative(self):
        code, report = run_json("derivative", "x^3", "--at", "2")
        assert code == 0
        assert report["status"] == "PROVED"
        assert report["value"] == "12"
        assert report["enclosure"] == ["12", "12"]
        assert report["input"] == {"expression": "x^3", "at": "2"}

    def test_refuted_limit_exits_with_one(self):
        code, report = run_json("limit", "1/x", "--at", "0")
        assert code == 1
        assert report["status"] == "REFUTED"
        assert report["witness"]

    def test_undecided_exits_with_two(self):
        code, report = run_json("limit", "sin(1/x)", "--at", "0")
        assert code == 2
        assert report["status"] == "UNDECIDED"

    def test_limit_against_a_wrong_value(self):
        code, report = run_json("limit", "x^2", "--at", "2", "--L", "5")
        assert code == 1
        assert report["witness"]["L"] == "5"

    def test_classical_limit(self):
        code, report = run_json("limit", "(x^2 - 1)/(x - 1)", "--at", "1", "--L", "2", "--criterion", "classical",
                                *SCHEDULE)
        assert code == 0
        assert len(report["certificate"]) == 2

    def test_classical_continuity(self):
        code, _ = run_json("continuity", "cos(x)", "--at", "1", "--criterion", "classical", *SCHEDULE)
        assert code == 0

    @pytest.mark.parametrize("criterion", ["nsa", "two-point"])
    def test_kink(self, criterion):
        code, _ = run_json("derivative", "abs(x)", "--at", "0", "--criterion", criterion)
        assert code == 1

    def test_eq1(self):
        code, report = run_json("derivative", "x^2*sin(1/x)", "--at", "0", "--extend-zero",
                                "--criterion", "eq1", "--fprime", "2*x*sin(1/x) - cos(1/x)")
        assert code != 0
        assert report["status"] != "PROVED"

    def test_extend_zero(self):
        code, report = run_json("derivative", "x^2*sin(1/x)", "--at", "0", "--extend-zero")
        assert code == 0
        assert report["value"] == "0"

    def test_integrate(self):
        code, report = run_json("integrate", "x^2", "--from", "0", "--to", "1", *SCHEDULE)
        assert code == 0
        assert report["value"] == "1/3"

    def test_ftc(self):
        code, report = run_json("ftc", "x^3 - x", "--from", "0", "--to", "2", *SCHEDULE)
        assert code == 0
        assert report["value"] == "6"

    def test_series_closed_form(self):
        code, report = run_json("series", "1/x", "--closed-form", "--offset", "1", "--L", "0")
        assert code == 0
        assert report["certificate"]["M"]["1/10"] == 10

    def test_series_nsa(self):
        code, report = run_json("series", "1/x", "--offset", "1", "--criterion", "nsa")
        assert code == 0
        assert report["note"] == "diverges"

    def test_series_partial_sum_is_computed(self):
        code, report = run_json("series", "x", "--offset", "1", "--sum-to", "10")
        assert code == 0
        assert report["status"] == "COMPUTED"
        assert "55" in json.dumps(report)

    def test_gap(self):
        code, report = run_json("gap", "--n", "3", "--x", "1", "--eps", "1/10")
        assert code == 0
        assert report["status"] == "COMPUTED"
        assert report["value"] == "31/100"

    def test_json_is_deterministic(self):
        first = run("derivative", "x^3", "--at", "2", "--json")
        second = run("derivative", "x^3", "--at", "2", "--json")
        assert first == second

    @pytest.mark.parametrize("argv", [
        ("derivative", "x^3", "--at", "2"),
        ("limit", "1/x", "--at", "0"),
        ("limit", "sin(1/x)", "--at", "0"),
        ("limit", "x^2", "--at", "1", "--L", "1", "--criterion", "classical", *SCHEDULE),
        ("integrate", "x^2", "--from", "0", "--to", "1", *SCHEDULE),
        ("series", "1/x", "--closed-form", "--offset", "1", "--L", "0"),
        ("gap", "--n", "2", "--x", "1", "--eps", "1/2"),
    ])
    def test_report_schema_round_trip(self, argv):
        _, out, _ = run(*argv, "--json")
        schema = CheckReport.model_json_schema()
        data = json.loads(out)
        assert set(data) <= set(schema["properties"])
        assert set(schema["required"]) <= set(data)
        report = CheckReport.model_validate_json(out)
        assert report.to_json() == out.rstrip("\n")
        assert CheckReport.model_validate(json.loads(report.to_json())) == report

    def test_text_output(self):
        code, out, _ = run("derivative", "x^3", "--at", "2")
        assert code == 0
        assert out.splitlines()[0] == "PROVED"
        assert "value: 12" in out


class TestErrors:
    @pytest.mark.parametrize("argv", [
        ("limit", "x", "--at", "0.5"),
        ("limit", "x +", "--at", "0"),
        ("limit", "x"),
        ("derivative", "x", "--at", "0", "--criterion", "eq1"),
        ("integrate", "x", "--from", "1", "--to", "0"),
        ("limit", "x", "--at", "0", "--probes", "eps, 1"),
        ("frobnicate",),
    ])
    def test_exit_code_three(self, argv):
        code, out, err = run(*argv)
        assert code == 3
        assert not out
        assert err.startswith("error:")

    def test_syntax_errors_print_the_grammar(self):
        _, _, err = run("limit", "x $ 1", "--at", "0")
        assert "offset 2" in err
        assert "hint:" in err


class TestSideOutputs:
    def test_integrate_csv(self, tmp_path):
        target = tmp_path / "cells.csv"
        code, _, _ = run("integrate", "x", "--from", "0", "--to", "1", "--csv", str(target), "--cells", "4", *SCHEDULE)
        assert code == 0
        lines = target.read_text().splitlines()
        assert lines[0] == "cell,lo,hi"
        assert len(lines) == 5

    def test_series_csv(self, tmp_path):
        target = tmp_path / "sums.csv"
        run("series", "x", "--offset", "1", "--sum-to", "3", "--csv", str(target))
        assert target.read_text().splitlines() == ["n,lo,hi", "1,1,1", "2,3,3", "3,6,6"]

    def test_store_and_list_runs(self, tmp_path):
        url = f"sqlite:///{tmp_path}/runs.db"
        run("derivative", "x^3", "--at", "2", "--store", url)
        run("limit", "1/x", "--at", "0", "--store", url)
        code, out, _ = run("runs", "--store", url)
        assert code == 0
        runs = [json.loads(line) for line in out.splitlines()]
        assert [r["command"] for r in runs] == ["limit", "derivative"]
        assert runs[1]["status"] == "PROVED"
