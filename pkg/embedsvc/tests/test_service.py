"""Contract tests for the embedding service, exercised over HTTP."""

import base64
import io

import numpy as np
import pytest
from fastapi.testclient import TestClient
from PIL import Image

from embedsvc import MAX_BATCH, PREPROCESSING, create_app


def png_b64(array: np.ndarray) -> str:
    buf = io.BytesIO()
    Image.fromarray(array).save(buf, format="PNG")
    return base64.b64encode(buf.getvalue()).decode("ascii")


def solid(value: int, side: int = 56) -> str:
    return png_b64(np.full((side, side, 3), value, dtype=np.uint8))


@pytest.fixture(scope="module")
def client():
    with TestClient(create_app(preset="vit_small", seed=0)) as c:
        yield c


def test_health_contract(client):
    resp = client.get("/health")
    assert resp.status_code == 200
    body = resp.json()
    assert body["status"] == "ok"
    assert body["dim"] == 512
    assert "vit-small" in body["model_name"]
    assert body["preprocessing"] == PREPROCESSING


def test_health_503_while_loading():
    with TestClient(create_app(defer_load=True)) as c:
        assert c.get("/health").status_code == 503
        assert c.post("/embed", json={"images": [solid(0)]}).status_code == 503


def test_unknown_route_404(client):
    assert client.get("/nope").status_code == 404


def test_embed_shapes_and_unit_norm(client):
    resp = client.post("/embed", json={"images": [solid(0), solid(255)]})
    assert resp.status_code == 200
    body = resp.json()
    assert body["dim"] == 512
    assert len(body["vectors"]) == 2
    for vec in body["vectors"]:
        assert len(vec) == 512
        assert abs(np.linalg.norm(vec) - 1.0) < 1e-5


def test_identical_bytes_identical_vectors(client):
    img = solid(40)
    a = client.post("/embed", json={"images": [img]}).json()["vectors"][0]
    b = client.post("/embed", json={"images": [img]}).json()["vectors"][0]
    assert a == b


def test_duplicates_in_one_batch_cosine_one(client):
    img = solid(90)
    vecs = client.post("/embed",
                       json={"images": [img, img]}).json()["vectors"]
    cos = float(np.dot(vecs[0], vecs[1]))
    assert cos == pytest.approx(1.0, abs=1e-6)


def test_black_vs_white_distinct(client):
    vecs = client.post("/embed",
                       json={"images": [solid(0), solid(255)]}).json()["vectors"]
    assert np.linalg.norm(np.subtract(vecs[0], vecs[1])) > 0


def test_order_preserved_under_batching(client):
    images = [solid(v) for v in (0, 60, 120, 180, 240)]
    batch = client.post("/embed", json={"images": images}).json()["vectors"]
    single = [client.post("/embed",
                          json={"images": [img]}).json()["vectors"][0]
              for img in images]
    # identical up to float reduction order in the batched matmuls
    assert np.allclose(batch, single, atol=1e-6)


def test_empty_list_400(client):
    assert client.post("/embed", json={"images": []}).status_code == 400


def test_oversized_batch_413(client):
    images = [solid(1)] * (MAX_BATCH + 1)
    resp = client.post("/embed", json={"images": images})
    assert resp.status_code == 413


def test_malformed_entries_400_with_index(client):
    good = solid(10)
    bad_b64 = "@@@not-base64@@@"
    bad_png = base64.b64encode(b"these bytes are not a png").decode("ascii")
    for index, bad in ((1, bad_b64), (2, bad_png)):
        images = [good, good, good]
        images[index] = bad
        resp = client.post("/embed", json={"images": images})
        assert resp.status_code == 400
        assert resp.json()["detail"]["index"] == index


def test_non_square_image_accepted(client):
    img = png_b64(np.zeros((30, 80, 3), dtype=np.uint8))
    resp = client.post("/embed", json={"images": [img]})
    assert resp.status_code == 200


def test_default_preset_is_vit_b32_dim_512():
    with TestClient(create_app(seed=0)) as c:
        body = c.get("/health").json()
        assert body["dim"] == 512
        assert "vit-b32" in body["model_name"]
