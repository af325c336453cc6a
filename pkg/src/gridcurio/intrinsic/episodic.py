"""Per-episode visitation counting over encoded observations."""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from typing import Dict

import numpy as np

from ..gridworld.state import UsageError


def observation_key(obs_enc: np.ndarray) -> int:
    """Stable 64-bit hash of the tensor's byte serialization."""
    digest = hashlib.blake2b(obs_enc.tobytes(), digest_size=8).digest()
    return int.from_bytes(digest, "little")


@dataclass
class EpisodicCounter:
    counts: Dict[int, int] = field(default_factory=dict)
    episode_id: int = 0

    def clear(self) -> None:
        self.counts.clear()
        self.episode_id += 1


def observe_and_count(counter: EpisodicCounter, obs_enc: np.ndarray,
                      done: bool) -> int:
    """Increment and return the episode visitation count for this
    observation; the counter resets after a terminal observation."""
    key = observation_key(obs_enc)
    count = counter.counts.get(key, 0) + 1
    counter.counts[key] = count
    if done:
        counter.clear()
    return count


def episodic_divisor(count: int, enabled: bool) -> float:
    """sqrt(N_ep) when the episodic term is on, exactly 1 when ablated."""
    if count < 1:
        raise UsageError("episodic count must be >= 1")
    return math.sqrt(count) if enabled else 1.0
