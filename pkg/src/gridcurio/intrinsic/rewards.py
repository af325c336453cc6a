"""Intrinsic reward kernels and reward combination."""

from __future__ import annotations

import numpy as np

from ..gridworld.state import UsageError


def _embedding_distance_reward(emb_t: np.ndarray, emb_next: np.ndarray,
                               divisor: float) -> float:
    emb_t = np.asarray(emb_t, dtype=np.float64)
    emb_next = np.asarray(emb_next, dtype=np.float64)
    if emb_t.shape != emb_next.shape:
        raise UsageError(
            f"embedding dim mismatch: {emb_t.shape} vs {emb_next.shape}")
    return float(np.linalg.norm(emb_next - emb_t) / divisor)


def ride_reward(emb_t: np.ndarray, emb_next: np.ndarray, divisor: float) -> float:
    """L2 distance between consecutive learned embeddings over the
    episodic divisor."""
    return _embedding_distance_reward(emb_t, emb_next, divisor)


def embedding_novelty_reward(emb_t: np.ndarray, emb_next: np.ndarray,
                             divisor: float) -> float:
    """Same kernel as ride_reward, with frozen pretrained-style embeddings
    as the source."""
    return _embedding_distance_reward(emb_t, emb_next, divisor)


def combine_reward(r_e: float, r_i: float, beta: float) -> float:
    return r_e + beta * r_i
