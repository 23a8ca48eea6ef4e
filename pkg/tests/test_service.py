"""Service-surface tests: every endpoint, payload validation, and the
usage/format/numeric error taxonomy the CLI relies on."""

import numpy as np
import pytest
from fastapi.testclient import TestClient

from conftest import plane_points_r12

from zetamix.service import create_app
from zetamix.service.schemas import TensorPayload


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def payload(arr) -> dict:
    return TensorPayload.from_array(np.asarray(arr)).model_dump()


def to_array(body: dict) -> np.ndarray:
    return TensorPayload(**body).to_array()


class TestHealthAndGammaMin:
    def test_healthz(self, client):
        body = client.get("/healthz").json()
        assert body["status"] == "ok"

    def test_openapi_schema_builds(self, client):
        resp = client.get("/openapi.json")
        assert resp.status_code == 200
        paths = resp.json()["paths"]
        for route in ("/generate", "/augment", "/intrinsic-dim", "/evaluate",
                      "/validate", "/benchmark", "/gamma-min"):
            assert route in paths

    def test_gamma_min(self, client):
        body = client.get("/gamma-min", params={"tolerance": 1e-6}).json()
        assert body["gamma_min"] == pytest.approx(1.72865, abs=1e-4)
        assert body["zeta_value"] == pytest.approx(2.0, abs=1e-4)

    def test_gamma_min_rejects_bad_tolerance(self, client):
        resp = client.get("/gamma-min", params={"tolerance": 0.0})
        assert resp.status_code == 422
        assert resp.json()["error"] == "usage"


class TestGenerate:
    def test_crescents(self, client):
        resp = client.post(
            "/generate",
            json={"shape": "crescents", "n": 512, "noise_sigma": 0.1, "seed": 1},
        )
        assert resp.status_code == 200
        body = resp.json()
        feats = to_array(body["features"])
        assert feats.shape == (512, 2)
        assert sum(body["labels"]) == 256
        assert body["generator_params"]["shape"] == "crescents"

    def test_helix12(self, client):
        body = client.post(
            "/generate", json={"shape": "helix12", "n": 64, "seed": 2}
        ).json()
        assert to_array(body["features"]).shape == (64, 12)

    def test_deterministic_per_seed(self, client):
        req = {"shape": "spirals", "n": 64, "noise_sigma": 0.05, "seed": 7}
        a = client.post("/generate", json=req).json()
        b = client.post("/generate", json=req).json()
        assert a["features"]["data_b64"] == b["features"]["data_b64"]
        assert a["labels"] == b["labels"]

    def test_unknown_shape_is_usage_error(self, client):
        resp = client.post("/generate", json={"shape": "torus", "n": 8, "seed": 0})
        assert resp.status_code == 422
        assert resp.json()["error"] == "usage"

    def test_odd_n_for_crescents_is_usage_error(self, client):
        resp = client.post("/generate", json={"shape": "crescents", "n": 9, "seed": 0})
        assert resp.status_code == 422
        assert resp.json()["error"] == "usage"


class TestAugment:
    def _features(self, n=8, d=3, seed=0):
        return np.random.default_rng(seed).normal(size=(n, d))

    def test_zeta_with_integer_labels(self, client):
        x = self._features()
        resp = client.post(
            "/augment",
            json={
                "features": payload(x),
                "labels": [0, 1, 2, 0, 1, 2, 0, 1],
                "method": "zeta",
                "gamma": 2.8,
                "seed": 5,
            },
        )
        assert resp.status_code == 200
        body = resp.json()
        feats = to_array(body["features"])
        soft = to_array(body["soft_labels"])
        weights = to_array(body["weights"])
        assert feats.shape == (8, 3)
        assert soft.shape == (8, 3)
        assert weights.shape == (8, 8)
        np.testing.assert_allclose(weights.sum(axis=1), 1.0, atol=1e-9)
        np.testing.assert_allclose(weights @ x, feats, rtol=1e-9, atol=1e-12)
        assert body["warnings"] == []

    def test_low_gamma_reports_warning(self, client):
        resp = client.post(
            "/augment",
            json={
                "features": payload(self._features()),
                "labels": [0, 1] * 4,
                "method": "zeta",
                "gamma": 1.0,
                "seed": 5,
            },
        )
        assert resp.status_code == 200
        warnings_ = resp.json()["warnings"]
        assert any("1.72865" in message for message in warnings_)

    def test_mixup_deterministic_per_seed(self, client):
        req = {
            "features": payload(self._features(seed=3)),
            "labels": [0, 1, 0, 1, 0, 1, 0, 1],
            "method": "mixup",
            "alpha": 1.0,
            "seed": 3,
        }
        a = client.post("/augment", json=req).json()
        b = client.post("/augment", json=req).json()
        assert a["features"]["data_b64"] == b["features"]["data_b64"]
        assert a["weights"]["data_b64"] == b["weights"]["data_b64"]

    def test_soft_label_input(self, client):
        soft = np.array([[0.6, 0.4], [0.2, 0.8], [1.0, 0.0]])
        resp = client.post(
            "/augment",
            json={
                "features": payload(self._features(n=3, d=2)),
                "soft_labels": payload(soft),
                "method": "zeta",
                "gamma": 4.0,
                "seed": 1,
            },
        )
        assert resp.status_code == 200
        out = to_array(resp.json()["soft_labels"])
        np.testing.assert_allclose(out.sum(axis=1), 1.0, atol=1e-9)

    def test_labels_and_soft_labels_conflict(self, client):
        resp = client.post(
            "/augment",
            json={
                "features": payload(self._features(n=3, d=2)),
                "labels": [0, 1, 0],
                "soft_labels": payload(np.eye(2)[[0, 1, 0]]),
                "method": "zeta",
                "gamma": 2.8,
                "seed": 1,
            },
        )
        assert resp.status_code == 422
        assert resp.json()["error"] == "usage"

    def test_missing_gamma_for_zeta(self, client):
        resp = client.post(
            "/augment",
            json={
                "features": payload(self._features(n=4, d=2)),
                "labels": [0, 1, 0, 1],
                "method": "zeta",
                "seed": 1,
            },
        )
        assert resp.status_code == 422
        assert "gamma" in resp.json()["message"]

    def test_label_row_mismatch_is_format_error(self, client):
        resp = client.post(
            "/augment",
            json={
                "features": payload(self._features(n=6, d=2)),
                "labels": [0, 1, 0],
                "method": "zeta",
                "gamma": 2.8,
                "seed": 1,
            },
        )
        assert resp.status_code == 400
        assert resp.json()["error"] == "format"

    def test_byte_length_mismatch_is_format_error(self, client):
        bad = payload(self._features(n=4, d=2))
        bad["shape"] = [4, 3]
        resp = client.post(
            "/augment",
            json={"features": bad, "labels": [0, 1, 0, 1], "method": "mixup", "seed": 1},
        )
        assert resp.status_code == 400
        assert resp.json()["error"] == "format"

    def test_nan_features_are_numeric_error(self, client):
        x = self._features(n=4, d=2)
        x[0, 0] = np.nan
        resp = client.post(
            "/augment",
            json={"features": payload(x), "labels": [0, 1, 0, 1], "method": "mixup", "seed": 1},
        )
        assert resp.status_code == 422
        assert resp.json()["error"] == "numeric"

    def test_float32_features_round_trip_in_float32(self, client):
        x = np.random.default_rng(4).standard_normal((6, 5), dtype=np.float32)
        resp = client.post(
            "/augment",
            json={
                "features": payload(x),
                "labels": [0, 1, 2, 0, 1, 2],
                "method": "zeta",
                "gamma": 2.8,
                "seed": 2,
            },
        )
        body = resp.json()
        assert body["features"]["dtype"] == "f32"
        assert to_array(body["features"]).dtype == np.float32

    def test_n_classes_override(self, client):
        resp = client.post(
            "/augment",
            json={
                "features": payload(self._features(n=4, d=2)),
                "labels": [0, 1, 0, 1],
                "n_classes": 5,
                "method": "zeta",
                "gamma": 2.8,
                "seed": 1,
            },
        )
        assert to_array(resp.json()["soft_labels"]).shape == (4, 5)


class TestIntrinsicDim:
    def test_plane_summary(self, client):
        pts = plane_points_r12(15, 20, seed=0)
        body = client.post(
            "/intrinsic-dim", json={"points": payload(pts), "k": 8}
        ).json()
        assert body["mean"] == 2.0
        assert body["std"] == 0.0
        assert body["n_degenerate"] == 0
        assert len(body["per_point"]) == 300
        assert body["k"] == 8 and body["threshold"] == 0.05

    def test_k_too_large_is_usage_error(self, client):
        pts = np.zeros((5, 2))
        resp = client.post("/intrinsic-dim", json={"points": payload(pts), "k": 5})
        assert resp.status_code == 422
        assert resp.json()["error"] == "usage"


class TestEvaluate:
    def test_matching_one_hots(self, client):
        eye = np.eye(4)[[0, 1, 2, 3, 0, 1]]
        body = client.post(
            "/evaluate",
            json={"oracle_probs": payload(eye), "soft_labels": payload(eye), "bins": 5},
        ).json()
        assert body["entropy"] == [0.0] * 6
        assert body["cross_entropy"] == [0.0] * 6
        assert body["n_ce_exported"] == 6

    def test_entropy_filter_restricts_ce_export(self, client):
        oracle = np.array([[1.0, 0.0], [0.5, 0.5], [0.0, 1.0]])
        soft = np.array([[0.9, 0.1], [0.5, 0.5], [0.2, 0.8]])
        body = client.post(
            "/evaluate",
            json={
                "oracle_probs": payload(oracle),
                "soft_labels": payload(soft),
                "entropy_filter": 0.1,
                "bins": 3,
            },
        ).json()
        assert body["n_ce_exported"] == 2  # rows 0 and 2 have entropy 0
        assert len(body["cross_entropy"]) == 3

    def test_row_mismatch_is_format_error(self, client):
        resp = client.post(
            "/evaluate",
            json={
                "oracle_probs": payload(np.eye(3)),
                "soft_labels": payload(np.eye(4)),
            },
        )
        assert resp.status_code == 400
        assert resp.json()["error"] == "format"


class TestValidateEndpoint:
    def test_good_and_bad_weights(self, client):
        good = np.full((4, 4), 0.25)
        body = client.post("/validate", json={"weights": payload(good)}).json()
        assert body["valid"] is True
        bad = np.full((4, 4), 0.3)
        body = client.post("/validate", json={"weights": payload(bad)}).json()
        assert body["valid"] is False
        assert any(not c["passed"] for c in body["checks"])

    def test_empty_request_is_usage_error(self, client):
        resp = client.post("/validate", json={})
        assert resp.status_code == 422


class TestBenchmarkEndpoint:
    def test_small_run(self, client):
        body = client.post(
            "/benchmark",
            json={"batch": 4, "dims": "4x4", "iters": 10, "warmup": 3, "seed": 0},
        ).json()
        assert set(body["reports"]) == {"zeta", "mixup"}
        assert body["reports"]["zeta"]["batch_shape"] == [4, 4, 4]
        assert body["ratio_median"] > 0

    def test_low_iters_is_usage_error(self, client):
        resp = client.post(
            "/benchmark", json={"batch": 4, "dims": "4", "iters": 5, "seed": 0}
        )
        assert resp.status_code == 422
        assert resp.json()["error"] == "usage"

    def test_bad_dims_string(self, client):
        resp = client.post(
            "/benchmark", json={"batch": 4, "dims": "4xx", "iters": 10, "seed": 0}
        )
        assert resp.status_code == 422
