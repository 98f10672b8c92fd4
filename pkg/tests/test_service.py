import pytest
from fastapi.testclient import TestClient

from sylvdet.runner import render_json
from sylvdet.schemas import Report
from sylvdet.service import app


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as c:
        yield c


def test_healthz(client):
    r = client.get("/healthz")
    assert r.status_code == 200
    assert r.json() == {"status": "ok"}


def test_eval_endpoint(client):
    r = client.post("/eval", json={"family": "krawtchouk", "dim": 3, "params": {"p": "1/3"}})
    assert r.status_code == 200
    body = r.json()
    assert body["command"] == "eval"
    case = body["cases"][0]
    assert case["factored"] == "t(t+1)(t+2)"
    assert case["match"] is True
    assert case["variable"] == "t = -x"
    assert body["summary"] == {"total": 1, "passed": 1, "failed": 0}


def test_eval_dual_hahn_dim_1(client):
    r = client.post(
        "/eval",
        json={"family": "dual-hahn", "dim": 1, "params": {"gamma": "1/2", "delta": "1/3"}},
    )
    case = r.json()["cases"][0]
    assert case["charpoly"] == ["0", "1"]
    assert case["factored"] == "t"
    assert case["match"] is True


def test_verify_endpoint_small_sweep(client):
    r = client.post("/verify", json={"family": "sylvester-d", "max_dim": 6})
    assert r.status_code == 200
    body = r.json()
    assert body["summary"]["failed"] == 0
    kinds = {c["kind"] for c in body["cases"]}
    assert kinds == {"verify", "induction"}


def test_verify_paper_literal_failure_reported(client):
    r = client.post(
        "/verify",
        json={
            "family": "dual-hahn",
            "dim": 1,
            "params": {"gamma": "1/2", "delta": "1/3"},
            "paper_literal": True,
        },
    )
    assert r.status_code == 200
    body = r.json()
    assert body["summary"]["failed"] == 1
    case = body["cases"][0]
    assert case["x_match"] is False
    assert "degree" in case["witness"]


def test_reduce_endpoint(client):
    r = client.post("/reduce", json={"family": "q-racah", "dim": 3, "seed": 7, "trace": True})
    assert r.status_code == 200
    case = r.json()["cases"][0]
    assert case["passed"] is True
    assert case["zero_block_ok"] and case["leading_eigs_ok"]
    assert case["leading_eigs"] == ["0"]
    names = [m["name"] for m in case["trace"]]
    assert names == ["G", "T-conjugated", "trailing", "S-conjugated", "final"]


def test_reduce_no_reduction_is_400(client):
    r = client.post("/reduce", json={"family": "racah", "dim": 4})
    assert r.status_code == 400
    assert "no block-triangularization" in r.json()["detail"]


def test_identity_endpoint_vacuous(client):
    r = client.post("/identity", json={"max_n": 2, "trials": 0})
    body = r.json()
    assert body["summary"]["failed"] == 0
    assert all(c["vacuous"] for c in body["cases"])


def test_identity_endpoint_variant_fails(client):
    r = client.post("/identity", json={"max_n": 2, "trials": 2, "seed": 3, "variant": "cN1"})
    assert r.json()["summary"]["failed"] > 0


def test_table_endpoint(client):
    r = client.post("/table", json={"family": "sylvester-d", "dims": [1, 3]})
    rows = [c["factored"] for c in r.json()["cases"]]
    assert rows == ["t", "(t+1)(t-1)", "(t+2)t(t-2)"]


def test_unknown_family_is_400(client):
    r = client.post("/eval", json={"family": "legendre", "dim": 3})
    assert r.status_code == 400


def test_degenerate_params_is_400(client):
    r = client.post(
        "/eval",
        json={"family": "q-racah", "dim": 3, "params": {"q": "1/2", "a": "4", "b": "1", "c": "1/7"}},
    )
    assert r.status_code == 400
    assert "a*b*q^2" in r.json()["detail"]


def test_malformed_body_is_422(client):
    r = client.post("/verify", json={"family": "sylvester-d", "bogus_field": 1})
    assert r.status_code == 422


def test_identical_requests_byte_identical(client):
    payload = {"family": "all", "max_dim": 4, "samples": 2, "seed": 42}
    first = client.post("/verify", json=payload)
    second = client.post("/verify", json=payload)
    a = render_json(Report.model_validate(first.json()))
    b = render_json(Report.model_validate(second.json()))
    assert a == b and first.json()["summary"]["failed"] == 0
