import json

import pytest
from fastapi.testclient import TestClient

from nonstd.api import create_app
from nonstd.config import get_settings


@pytest.fixture
def client(monkeypatch, memory_db):
    monkeypatch.setenv("NONSTD_DATABASE_URL", memory_db)
    get_settings.cache_clear()
    with TestClient(create_app()) as client:
        yield client


def test_derivative(client):
    response = client.post("/api/checks/derivative", json={"expression": "x^3", "at": "2"})
    assert response.status_code == 200
    report = response.json()
    assert report["status"] == "PROVED"
    assert report["value"] == "12"
    assert "witness" not in report


def test_refutation_carries_a_witness(client):
    report = client.post("/api/checks/limit", json={"expression": "1/x", "at": "0"}).json()
    assert report["status"] == "REFUTED"
    assert report["witness"]


def test_from_alias(client):
    body = {"expression": "x^2", "from": "0", "to": "1", "schedule": "1/10,1/1000"}
    report = client.post("/api/checks/integrate", json=body).json()
    assert report["value"] == "1/3"
    assert report["input"]["from"] == "0"


def test_gap_needs_no_expression(client):
    report = client.post("/api/checks/gap", json={"n": 3, "x": "1", "eps": "1/10"}).json()
    assert report == {
        "command": "gap",
        "input": {"n": 3, "x": "1", "eps": "1/10"},
        "status": "COMPUTED",
        "value": "31/100",
        "note": "((x + e)^3 - x^3) / e - 3 x^2",
    }


def test_unknown_command(client):
    assert client.post("/api/checks/frobnicate", json={}).status_code == 404


@pytest.mark.parametrize("body", [
    {"expression": "x", "at": "0.5"},
    {"expression": "x"},
    {"expression": "x", "at": "0", "colour": "red"},
    {"expression": "x", "at": "0", "criterion": "intuition"},
])
def test_invalid_requests(client, body):
    assert client.post("/api/checks/limit", json=body).status_code == 422


def test_corpus_files_are_not_read(client):
    assert client.post("/api/checks/xcheck", json={"corpus": "/etc/passwd"}).status_code == 422


@pytest.mark.parametrize("body", [
    {"expression": "x +", "at": "0"},
    {"expression": "x", "at": "0", "probes": "eps"},
])
def test_bad_arguments(client, body):
    response = client.post("/api/checks/limit", json=body)
    assert response.status_code == 400
    assert response.json()["detail"]


def test_integrand_undefined_on_the_interval(client):
    body = {"expression": "sqrt(x)", "from": "-1", "to": "1"}
    assert client.post("/api/checks/integrate", json=body).status_code == 400


def test_stored_runs(client):
    client.post("/api/checks/derivative?store=true", json={"expression": "x^3", "at": "2"})
    client.post("/api/checks/limit", json={"expression": "x", "at": "0"})
    client.post("/api/checks/limit?store=true", json={"expression": "1/x", "at": "0"})

    runs = client.get("/api/runs").json()
    assert [run["command"] for run in runs] == ["limit", "derivative"]
    assert client.get("/api/runs", params={"command": "derivative"}).json()[0]["status"] == "PROVED"

    stored = client.get(f"/api/runs/{runs[1]['id']}").json()
    assert json.loads(stored["report"])["value"] == "12"
    assert client.get("/api/runs/9999").status_code == 404


def test_openapi_docs(client):
    assert client.get("/api/openapi.json").status_code == 200
