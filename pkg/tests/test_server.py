"""HTTP service tests against a live in-process server."""

from __future__ import annotations

import json
import threading
import urllib.error
import urllib.request

import pytest

from ccl.cli import main
from ccl.serialization import constellation_to_jsonable
from ccl.catalog import catalog_get
from ccl.server import make_server


@pytest.fixture(scope="module")
def server_url():
    httpd = make_server("127.0.0.1", 0, mc_cap=50_000)
    thread = threading.Thread(target=httpd.serve_forever, daemon=True)
    thread.start()
    host, port = httpd.server_address[:2]
    yield f"http://{host}:{port}"
    httpd.shutdown()
    httpd.server_close()


def _get(url):
    with urllib.request.urlopen(url, timeout=30) as resp:
        return resp.status, resp.read()


def _post(url, payload):
    body = payload if isinstance(payload, bytes) else json.dumps(payload).encode()
    req = urllib.request.Request(
        url, data=body, headers={"Content-Type": "application/json"}, method="POST"
    )
    try:
        with urllib.request.urlopen(req, timeout=120) as resp:
            return resp.status, resp.read()
    except urllib.error.HTTPError as exc:
        return exc.code, exc.read()


def _asym4_payload():
    return constellation_to_jsonable(catalog_get("asym4").constellation, "asym4")


class TestEndpoints:
    def test_health(self, server_url):
        status, body = _get(server_url + "/health")
        assert status == 200
        assert body == b"ok"

    def test_catalog(self, server_url):
        status, body = _get(server_url + "/catalog")
        data = json.loads(body)
        names = [e["name"] for e in data["entries"]]
        assert "asym4" in names and "kite4" in names

    def test_analyze(self, server_url):
        status, body = _post(server_url + "/analyze", _asym4_payload())
        assert status == 200
        data = json.loads(body)
        assert data["a_min"] == 0.0
        assert data["angular_fraction"] == [0.0, 0.25, 0.375, 0.375]

    def test_analyze_parity_with_cli(self, server_url, tmp_path, capsys):
        out_path = tmp_path / "cli.json"
        main(["analyze", "asym4", "--format", "json", "--out", str(out_path)])
        capsys.readouterr()
        _, body = _post(server_url + "/analyze", _asym4_payload())
        assert out_path.read_bytes() == body

    def test_cones(self, server_url):
        status, body = _post(server_url + "/cones", _asym4_payload())
        assert status == 200
        data = json.loads(body)
        kinds = [p["kind"] for p in data["patches"]]
        assert kinds == ["degenerate_ray", "arc", "arc", "arc"]
        assert data["patches"][1]["fraction"] == 0.25

    def test_cones_rejects_3d(self, server_url):
        status, body = _post(
            server_url + "/cones", {"points": [[0, 0, 0], [1, 0, 0]]}
        )
        assert status == 422
        data = json.loads(body)
        assert data["error"] == "dimension_mismatch"
        assert data["field"] == "dim"

    def test_mc(self, server_url):
        payload = {
            "constellation": _asym4_payload(),
            "gamma": 0.5,
            "n_samples": 5000,
            "seed": 3,
        }
        status, body = _post(server_url + "/mc", payload)
        assert status == 200
        data = json.loads(body)
        assert data["n_samples"] == 5000
        assert data["gamma"] == 0.5
        assert 0.0 <= data["avg_error"] <= 1.0

    def test_mc_sample_cap(self, server_url):
        payload = {"constellation": _asym4_payload(), "gamma": 0.5, "n_samples": 60_000}
        status, body = _post(server_url + "/mc", payload)
        assert status == 400
        data = json.loads(body)
        assert data["error"] == "sample_cap_exceeded"
        assert "sample cap" in data["message"]
        assert data["field"] == "n_samples"

    def test_mc_deterministic(self, server_url):
        payload = {
            "constellation": _asym4_payload(),
            "gamma": 2.0,
            "n_samples": 4000,
            "seed": 11,
        }
        _, a = _post(server_url + "/mc", payload)
        _, b = _post(server_url + "/mc", payload)
        assert a == b

    def test_screen(self, server_url):
        payload = {
            "candidates": [
                constellation_to_jsonable(catalog_get("pentagon5").constellation, "pentagon5"),
                constellation_to_jsonable(catalog_get("cross5").constellation, "cross5"),
            ],
            "lambda": 0.5,
        }
        status, body = _post(server_url + "/screen", payload)
        assert status == 200
        data = json.loads(body)
        assert data["rejected"] == [{"name": "cross5", "reason": "geometric collapse"}]
        assert data["ranked"][0]["name"] == "pentagon5"

    def test_invariant_violation_names_field(self, server_url):
        bad = {"points": [[0, 0], [1, 0]], "priors": [0.5, 0.9]}
        status, body = _post(server_url + "/analyze", bad)
        assert status == 400
        data = json.loads(body)
        assert data["field"] == "priors"

    def test_duplicate_points_rejected(self, server_url):
        status, body = _post(server_url + "/analyze", {"points": [[0, 0], [0, 0]]})
        assert status == 400
        assert json.loads(body)["error"] == "duplicate_point"

    def test_malformed_json(self, server_url):
        status, body = _post(server_url + "/analyze", b'{"points": [[0,0],')
        assert status == 400
        assert json.loads(body)["error"] == "parse_error"

    def test_unknown_route(self, server_url):
        status, _ = _post(server_url + "/nothing", {})
        assert status == 404
