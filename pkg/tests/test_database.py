import json

from nonstd.database import get_run, get_runs, save_run
from nonstd.models import CheckReport


def report(command: str, status: str = "PROVED", **fields) -> CheckReport:
    return CheckReport(command=command, input={"expression": "x"}, status=status, **fields)


class TestRunStore:
    def test_save_and_get(self, memory_db):
        run_id = save_run(report("limit", value="0"), memory_db)
        stored = get_run(run_id, memory_db)
        assert stored["command"] == "limit"
        assert stored["status"] == "PROVED"
        assert json.loads(stored["input"]) == {"expression": "x"}
        assert json.loads(stored["report"])["value"] == "0"
        assert stored["created_at"]

    def test_missing_run(self, memory_db):
        assert get_run(42, memory_db) is None

    def test_newest_first_with_limit(self, memory_db):
        for command in ("limit", "continuity", "derivative"):
            save_run(report(command), memory_db)
        assert [r["command"] for r in get_runs(memory_db)] == ["derivative", "continuity", "limit"]
        assert len(get_runs(memory_db, limit=2)) == 2

    def test_filter_by_command(self, memory_db):
        save_run(report("limit"), memory_db)
        save_run(report("limit", status="REFUTED", witness={"x": "0"}), memory_db)
        save_run(report("gap", status="COMPUTED"), memory_db)
        statuses = [r["status"] for r in get_runs(memory_db, command="limit")]
        assert statuses == ["REFUTED", "PROVED"]

    def test_default_url_comes_from_settings(self, monkeypatch, tmp_path):
        from nonstd.config import get_settings
        from nonstd.database.session import get_engine
        monkeypatch.setenv("NONSTD_DATABASE_URL", f"sqlite:///{tmp_path}/store/runs.db")
        get_settings.cache_clear()
        get_engine.cache_clear()
        save_run(report("ftc"))
        assert (tmp_path / "store" / "runs.db").exists()
        assert get_runs()[0]["command"] == "ftc"
        get_engine.cache_clear()


class TestReport:
    def test_refuted_reports_need_a_witness(self):
        import pytest
        from pydantic import ValidationError
        with pytest.raises(ValidationError):
            report("limit", status="REFUTED")

    def test_exit_codes(self):
        assert report("limit").exit_code == 0
        assert report("gap", status="COMPUTED").exit_code == 0
        assert report("limit", status="UNDECIDED").exit_code == 2
        assert report("limit", status="REFUTED", witness={"x": "0"}).exit_code == 1

    def test_json_omits_unset_fields(self):
        data = json.loads(report("limit", value="1").to_json())
        assert set(data) == {"command", "input", "status", "value", "note"}
