import numpy as np
import pytest
from fastapi.testclient import TestClient

from rifrange.service import create_app

EX1 = {"factors": [
    {"a": 2, "b": -1, "c": -1, "d": 0},
    {"a": 3, "b": -1, "c": -2, "d": 0},
]}


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_health(client):
    assert client.get("/health").json() == {"status": "ok"}


def test_symbol_entries(client):
    resp = client.post("/symbol", json=EX1)
    assert resp.status_code == 200
    data = resp.json()
    assert data["m"] == 2
    assert data["rendered"].splitlines()[0] == "1,1: num=[1] den=[2,-1]"
    by_pos = {(e["row"], e["col"]): e for e in data["entries"]}
    assert by_pos[(1, 1)]["num"] == [[1.0, 0.0]]
    assert by_pos[(1, 2)]["num"] == [[0.0, 0.0]]


def test_symbol_evaluated_at_one(client):
    resp = client.post("/symbol", json={**EX1, "at": [1.0, 0.0]})
    assert resp.status_code == 200
    mat = resp.json()["matrix"]
    assert np.allclose(mat, [[[1, 0], [0, 0]], [[0, 0], [1, 0]]])


def test_symbol_empty_factors_rejected(client):
    assert client.post("/symbol", json={"factors": []}).status_code == 422


def test_symbol_corrupted_factor_is_math_error(client):
    bad = {"factors": [{"a": 1.9, "b": -1, "c": -1, "d": 0}]}
    resp = client.post("/symbol", json=bad)
    assert resp.status_code == 422
    assert resp.json()["detail"]["kind"] == "math-validation"


def test_range_radius_and_hull(client):
    resp = client.post("/range", json={**EX1, "tau_samples": 64, "angle_samples": 64})
    assert resp.status_code == 200
    data = resp.json()
    assert abs(data["radius"] - 1.0) <= 1e-9
    assert data["points"] is None
    assert len(data["hull"]) >= 16


def test_range_dense_points(client):
    resp = client.post("/range", json={**EX1, "tau_samples": 16, "angle_samples": 16,
                                       "dense": True})
    assert len(resp.json()["points"]) >= 16


def test_range_rejects_small_sampling(client):
    resp = client.post("/range", json={**EX1, "tau_samples": 8})
    assert resp.status_code == 422
    assert isinstance(resp.json()["detail"], list)  # pydantic shape, a usage error


def test_range_deterministic(client):
    payload = {**EX1, "tau_samples": 32, "angle_samples": 32, "seed": 0}
    a = client.post("/range", json=payload).content
    b = client.post("/range", json=payload).content
    assert a == b


def test_boundary_rows_and_check(client):
    resp = client.post("/boundary", json={"a": 2, "c": 1, "samples": 64, "check": True})
    assert resp.status_code == 200
    data = resp.json()
    first = data["outer"][0]
    assert (first["theta"], first["x"], first["y"]) == (0.0, 1.0, 0.0)
    chk = data["check"]
    assert chk["convex"] is False or chk["convex"] is True
    assert abs(chk["gap"] - 4 / 81) < 1e-14
    assert chk["outer_f_residual"] <= 1e-10
    assert chk["reparam_dev"] <= 1e-10


def test_boundary_requires_normalized_family(client):
    resp = client.post("/boundary", json={"a": 2, "c": 0.5})
    assert resp.status_code == 400
    assert resp.json()["detail"]["kind"] == "usage"


def test_boundary_inner_branch(client):
    resp = client.post("/boundary", json={"a": 2, "c": 1, "samples": 32, "inner": True})
    assert len(resp.json()["inner"]) == 32


def test_zero_test_normalized_cases(client):
    for c1, c2, verdict in ((1.0, 0.5, "Boundary"), (0.9, 0.9, "Interior"),
                            (0.5, 0.5, "NotInterior")):
        resp = client.post("/zero-test", json={"c1": c1, "c2": c2})
        data = resp.json()
        assert data["verdict"] == verdict
        assert data["method"] == "coefficient-product"
    assert client.post("/zero-test",
                       json={"c1": 0.9, "c2": 0.9}).json()["witness_count"] > 0


def test_zero_test_config_route(client):
    resp = client.post("/zero-test", json={"factors": [
        {"a": 1.9, "b": -1, "c": 0.9, "d": 0},
        {"a": 1.9, "b": -1, "c": 0.9, "d": 0},
    ], "tau_samples": 90})
    data = resp.json()
    assert data["verdict"] == "Interior"
    assert data["method"] == "focal-witness"


def test_zero_test_input_validation(client):
    assert client.post("/zero-test", json={"c1": 1.0}).status_code == 400
    assert client.post("/zero-test", json={}).status_code == 400
    both = {"c1": 1.0, "c2": 1.0, "factors": EX1["factors"]}
    assert client.post("/zero-test", json=both).status_code == 400


def test_verify_corrupted_factor(client):
    bad = {"factors": [{"a": 1.9, "b": -1, "c": -1, "d": 0}], "seed": 0}
    resp = client.post("/verify", json=bad)
    assert resp.status_code == 422
    assert resp.json()["detail"]["kind"] == "math-validation"


def test_plot_svg_structure(client):
    rows = [[0.0, 1.0, 0.0], [1.0, 0.5, 0.5], [2.0, -0.5, 0.2]]
    resp = client.post("/plot", json={"rows": rows, "with_circles": 5, "a": 2.0, "c": 1.0})
    svg = resp.json()["svg"]
    assert svg.count('class="family"') == 5
    assert 'class="curve"' in svg
    assert 'class="unit"' in svg


def test_plot_row_shape_rejected(client):
    resp = client.post("/plot", json={"rows": [[1.0], [2.0]]})
    assert resp.status_code == 400


def test_plot_circles_need_family(client):
    resp = client.post("/plot", json={"rows": [[0.0, 0.0]], "with_circles": 3})
    assert resp.status_code == 400


def test_plot_style_override(client):
    rows = [[1.0, 0.0], [0.5, 0.5]]
    resp = client.post("/plot", json={"rows": rows,
                                      "styles": {"curve": "none:#123456:3"}})
    assert 'stroke="#123456"' in resp.json()["svg"]
    bad = client.post("/plot", json={"rows": rows, "styles": {"nope": "a:b:c"}})
    assert bad.status_code == 400
