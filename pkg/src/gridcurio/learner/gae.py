"""Generalized advantage estimation over a full rollout buffer."""

from __future__ import annotations

from typing import Tuple

import numpy as np

from ..gridworld.state import UsageError
from .buffer import RolloutBuffer
from .config import PpoConfig


def compute_gae(buffer: RolloutBuffer,
                config: PpoConfig) -> Tuple[np.ndarray, np.ndarray]:
    """Exponentially weighted TD-residual advantages, computed
    right-to-left per environment; rewards are the combined (extrinsic +
    beta * intrinsic) rewards stored in the buffer."""
    if not buffer.full:
        raise UsageError("compute_gae: buffer is not full")
    gamma, lam = config.gamma, config.gae_lambda
    rewards = buffer.combined
    values = buffer.values
    dones = buffer.dones
    n_envs, n_steps = rewards.shape

    advantages = np.zeros_like(rewards)
    last_adv = np.zeros(n_envs)
    next_values = buffer.bootstrap_values
    for t in range(n_steps - 1, -1, -1):
        not_done = 1.0 - dones[:, t].astype(np.float64)
        delta = rewards[:, t] + gamma * next_values * not_done - values[:, t]
        last_adv = delta + gamma * lam * not_done * last_adv
        advantages[:, t] = last_adv
        next_values = values[:, t]
    returns = advantages + values
    return advantages, returns
