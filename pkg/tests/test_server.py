import pytest
from fastapi.testclient import TestClient

from gcjacobi.ring import SIGMA, D, X, format_poly
from gcjacobi.server import app
from gcjacobi.virasoro import q_basis


@pytest.fixture
def client():
    return TestClient(app)


def _elem(text):
    return {"n": 1, "entries": [[text]]}


def test_bracket_of_the_virasoro_element(client):
    response = client.post("/bracket", json={"a": _elem("x + 1/2*d"), "b": _elem("x + 1/2*d")})
    assert response.status_code == 200
    data = response.json()
    assert data["n"] == 1
    assert sorted(data["coefficients"]) == ["0", "1"]
    assert data["coefficients"]["1"]["entries"] == [[format_poly(2 * X + D)]]
    assert data["products"]["1"] == data["coefficients"]["1"]


def test_bracket_rejects_bad_input(client):
    response = client.post("/bracket", json={"a": _elem("x^^2"), "b": _elem("x")})
    assert response.status_code == 400
    assert "column 3" in response.json()["detail"]
    mismatch = {"a": _elem("x"), "b": {"n": 2, "entries": [["1", "0"], ["0", "1"]]}}
    assert client.post("/bracket", json=mismatch).status_code == 400


def test_basis(client):
    response = client.get("/basis", params={"n_max": 1})
    assert response.status_code == 200
    assert response.json() == ["1", format_poly(q_basis(SIGMA, 1))]
    assert client.get("/basis", params={"n_max": 31}).status_code == 422
    assert client.get("/basis", params={"sigma": "s^"}).status_code == 400


def test_dcoeff(client):
    assert client.get("/dcoeff", params={"m": 1, "n": 1, "k": 1}).json() == "1"
    assert client.get("/dcoeff", params={"m": 1, "n": 1, "k": 3}).status_code == 400


def test_verify_family(client):
    response = client.post("/verify/closure", json={"sign": "+", "S": 1, "k": 0, "N": 1, "deg": 3})
    assert response.status_code == 200
    data = response.json()
    assert data["schema"] == 1
    assert data["suite"] == "closure"
    assert all(case["pass"] for case in data["cases"])


def test_verify_named_suite_and_unknown(client):
    response = client.post("/verify/negative-control", json={"deg": 3})
    assert response.status_code == 200
    assert response.json()["cases"][0]["pass"] is True
    assert client.post("/verify/bogus", json={}).status_code == 400
    assert client.post("/verify/closure", json={"sign": "*"}).status_code == 422
