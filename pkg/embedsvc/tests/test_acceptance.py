"""Acceptance gate for the embedding service.

Prints one [PASS]/[FAIL] line per release criterion. The end-to-end
training test is marked slow and needs the gridcurio package installed.
"""

import base64
import io
import os
import socket
import subprocess
import sys
import time
from pathlib import Path

import numpy as np
import pytest
import requests
from fastapi.testclient import TestClient
from PIL import Image

from embedsvc import create_app


def report(criterion: str, passed: bool, detail: str = "") -> None:
    print(f"[{'PASS' if passed else 'FAIL'}] {criterion}: {detail}")
    assert passed, f"{criterion}: {detail}"


def png_b64(array: np.ndarray) -> str:
    buf = io.BytesIO()
    Image.fromarray(array).save(buf, format="PNG")
    return base64.b64encode(buf.getvalue()).decode("ascii")


def test_criterion_service_contract():
    """/health dim matches vector lengths; duplicates embed identically;
    unit norms within 1e-5; malformed PNG rejected with its index."""
    rng = np.random.default_rng(0)
    with TestClient(create_app(preset="vit_small", seed=0)) as client:
        dim = client.get("/health").json()["dim"]

        images = [png_b64(rng.integers(0, 256, size=(56, 56, 3))
                          .astype(np.uint8)) for _ in range(6)]
        images.append(images[0])  # duplicate of the first
        body = client.post("/embed", json={"images": images}).json()

        lengths_ok = (body["dim"] == dim
                      and all(len(v) == dim for v in body["vectors"]))
        cosine = float(np.dot(body["vectors"][0], body["vectors"][-1]))
        norm_err = max(abs(np.linalg.norm(v) - 1.0) for v in body["vectors"])

        bad = base64.b64encode(b"not a png").decode("ascii")
        resp = client.post("/embed", json={"images": [images[0], bad]})
        rejection_ok = (resp.status_code == 400
                        and resp.json()["detail"]["index"] == 1)

    passed = (lengths_ok and cosine == pytest.approx(1.0, abs=1e-6)
              and norm_err < 1e-5 and rejection_ok)
    report("service-contract", passed,
           f"dim {dim} consistent: {lengths_ok}; duplicate cosine {cosine:.8f}; "
           f"max norm err {norm_err:.2e}; malformed rejected with index: "
           f"{rejection_ok}")


def _free_port() -> int:
    with socket.socket() as sock:
        sock.bind(("127.0.0.1", 0))
        return sock.getsockname()[1]


@pytest.mark.slow
def test_criterion_end_to_end_training(tmp_path):
    """A 10k-step embedding-novelty training run against the live service
    finishes without transport errors and logs positive intrinsic reward."""
    pytest.importorskip("gridcurio")
    port = _free_port()
    env = dict(os.environ, PORT=str(port), EMBEDSVC_PRESET="vit_small",
               EMBEDSVC_SEED="0")
    server = subprocess.Popen([sys.executable, "-m", "embedsvc.server"],
                              env=env, stdout=subprocess.DEVNULL,
                              stderr=subprocess.DEVNULL)
    try:
        base = f"http://127.0.0.1:{port}"
        for _ in range(120):
            try:
                if requests.get(base + "/health", timeout=2).status_code == 200:
                    break
            except requests.ConnectionError:
                time.sleep(0.5)
        else:
            pytest.fail("service never became healthy")

        config = tmp_path / "e2e.conf"
        config.write_text(f"""
env.id = MultiRoom-N2-S4
intrinsic.method = embedding_novelty
intrinsic.provider = remote_service
intrinsic.provider_dim = 512
intrinsic.beta = 0.05
run.total_steps = 10240
run.metrics_every = 2048
run.output_dir = {tmp_path / 'runs'}
""")
        train_env = dict(os.environ, GRIDCURIO_EMBED_URL=base)
        proc = subprocess.run(
            [sys.executable, "-m", "gridcurio.cli", "train",
             "--config", str(config), "--seed", "0"],
            env=train_env, capture_output=True, text=True, timeout=3600)

        completed = proc.returncode == 0
        transport_clean = "TransportError" not in proc.stderr
        intrinsic_ok = False
        metrics = tmp_path / "runs" / "metrics_seed0.csv"
        if metrics.exists():
            import csv
            rows = list(csv.DictReader(metrics.open()))
            values = [float(r["mean_intrinsic_reward"]) for r in rows]
            intrinsic_ok = (len(values) > 0 and all(v > 0 for v in values)
                            and float(rows[-1]["global_step"]) == 10240)
        passed = completed and transport_clean and intrinsic_ok
        report("end-to-end-wiring", passed,
               f"exit {proc.returncode}, transport clean: {transport_clean}, "
               f"positive intrinsic on every row to 10240 steps: {intrinsic_ok}"
               + ("" if completed else f"; stderr tail: {proc.stderr[-300:]}"))
    finally:
        server.terminate()
        server.wait(timeout=10)
