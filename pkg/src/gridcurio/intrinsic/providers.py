"""Frozen embedding providers for pixel observations.

Both providers are frozen: identical input bytes always map to the same
unit-norm vector for the lifetime of a run.
"""

from __future__ import annotations

import base64
import io
import time
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np
import requests
from PIL import Image

from ..gridworld.state import ConfigurationError

MAX_BATCH = 256
RETRY_ATTEMPTS = 3
BACKOFF_BASE_S = 0.5


class TransportError(RuntimeError):
    """Remote embedding service unreachable after exhausting retries."""


@dataclass
class EmbeddingProviderSpec:
    kind: str  # ride_learned | frozen_random | remote_service
    dim: int = 128
    seed: int = 0
    endpoint: str = ""

    def __post_init__(self):
        if self.kind not in ("ride_learned", "frozen_random", "remote_service"):
            raise ConfigurationError(f"provider kind: unknown {self.kind!r}")
        if self.dim <= 0:
            raise ConfigurationError("provider dim: must be > 0")


class FrozenRandomProvider:
    """Seeded random 2-layer projection of area-downscaled pixels.

    A deterministic local stand-in for a pretrained visual encoder."""

    INPUT_SIDE = 56

    def __init__(self, spec: EmbeddingProviderSpec):
        self.spec = spec
        self.dim = spec.dim
        rng = np.random.default_rng(spec.seed)
        n_in = self.INPUT_SIDE * self.INPUT_SIDE * 3
        hidden = 256
        self.w1 = rng.standard_normal((n_in, hidden)).astype(np.float32) / np.sqrt(n_in)
        self.b1 = rng.standard_normal(hidden).astype(np.float32) * 0.1
        self.w2 = rng.standard_normal((hidden, spec.dim)).astype(np.float32) / np.sqrt(hidden)
        self.b2 = rng.standard_normal(spec.dim).astype(np.float32) * 0.1

    def _preprocess(self, image: np.ndarray) -> np.ndarray:
        side = self.INPUT_SIDE
        if image.shape[:2] != (side, side):
            pil = Image.fromarray(image)
            image = np.asarray(pil.resize((side, side), Image.BOX))
        return image.astype(np.float32).reshape(-1) / 255.0

    def embed(self, image: np.ndarray) -> np.ndarray:
        x = self._preprocess(image)
        h = np.tanh(x @ self.w1 + self.b1)
        v = np.tanh(h @ self.w2 + self.b2)
        return v / np.linalg.norm(v)

    def embed_batch(self, images: Sequence[np.ndarray]) -> List[np.ndarray]:
        return [self.embed(img) for img in images]


def frozen_embed(spec: EmbeddingProviderSpec, image: np.ndarray) -> np.ndarray:
    return FrozenRandomProvider(spec).embed(image)


def _png_b64(image: np.ndarray) -> str:
    buf = io.BytesIO()
    Image.fromarray(image).save(buf, format="PNG")
    return base64.b64encode(buf.getvalue()).decode("ascii")


class RemoteProvider:
    """HTTP client for the embedding service (see the embedsvc package)."""

    def __init__(self, spec: EmbeddingProviderSpec,
                 session: Optional[requests.Session] = None):
        self.spec = spec
        self.session = session or requests.Session()
        self.endpoint = spec.endpoint.rstrip("/")
        health = self._request("GET", "/health")
        self.dim = int(health["dim"])
        self.model_name = health.get("model_name", "")
        if spec.dim and spec.dim != self.dim:
            raise ConfigurationError(
                f"provider dim: service advertises {self.dim}, config says {spec.dim}")

    def _request(self, method: str, path: str, json_body=None):
        last_err = None
        for attempt in range(RETRY_ATTEMPTS):
            try:
                resp = self.session.request(method, self.endpoint + path,
                                            json=json_body, timeout=60)
                resp.raise_for_status()
                return resp.json()
            except (requests.ConnectionError, requests.Timeout,
                    requests.HTTPError) as err:
                last_err = err
                if attempt < RETRY_ATTEMPTS - 1:
                    time.sleep(BACKOFF_BASE_S * 2 ** attempt)
        raise TransportError(f"{method} {path} failed after "
                             f"{RETRY_ATTEMPTS} attempts: {last_err}")

    def embed_batch(self, images: Sequence[np.ndarray]) -> List[np.ndarray]:
        if len(images) == 0:
            return []
        vectors: List[np.ndarray] = []
        for start in range(0, len(images), MAX_BATCH):
            chunk = images[start:start + MAX_BATCH]
            body = {"images": [_png_b64(img) for img in chunk]}
            data = self._request("POST", "/embed", json_body=body)
            if int(data["dim"]) != self.dim:
                raise ConfigurationError("provider dim: response dim changed")
            vectors.extend(np.asarray(v, dtype=np.float32) for v in data["vectors"])
        return vectors

    def embed(self, image: np.ndarray) -> np.ndarray:
        return self.embed_batch([image])[0]


def remote_embed(spec: EmbeddingProviderSpec,
                 images: Sequence[np.ndarray]) -> List[np.ndarray]:
    return RemoteProvider(spec).embed_batch(images)
