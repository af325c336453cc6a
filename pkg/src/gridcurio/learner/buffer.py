"""Fixed-capacity trajectory storage for one PPO rollout."""

from __future__ import annotations

import numpy as np

from ..gridworld.constants import VIEW_SIZE
from ..gridworld.state import UsageError


class RolloutBuffer:
    def __init__(self, n_envs: int, rollout_len: int):
        self.n_envs = n_envs
        self.rollout_len = rollout_len
        shape = (n_envs, rollout_len)
        self.obs = np.zeros(shape + (VIEW_SIZE, VIEW_SIZE, 3), dtype=np.uint8)
        self.actions = np.zeros(shape, dtype=np.int64)
        self.log_probs = np.zeros(shape, dtype=np.float64)
        self.values = np.zeros(shape, dtype=np.float64)
        self.extrinsic = np.zeros(shape, dtype=np.float64)
        self.intrinsic = np.zeros(shape, dtype=np.float64)
        self.combined = np.zeros(shape, dtype=np.float64)
        self.dones = np.zeros(shape, dtype=bool)
        self.bootstrap_values = np.zeros(n_envs, dtype=np.float64)
        self.t = 0

    @property
    def full(self) -> bool:
        return self.t == self.rollout_len

    def add(self, obs, actions, log_probs, values, extrinsic, intrinsic,
            combined, dones) -> None:
        if self.full:
            raise UsageError("RolloutBuffer.add: buffer already full")
        t = self.t
        self.obs[:, t] = obs
        self.actions[:, t] = actions
        self.log_probs[:, t] = log_probs
        self.values[:, t] = values
        self.extrinsic[:, t] = extrinsic
        self.intrinsic[:, t] = intrinsic
        self.combined[:, t] = combined
        self.dones[:, t] = dones
        self.t += 1

    def set_bootstrap(self, values) -> None:
        self.bootstrap_values[:] = values

    def reset(self) -> None:
        self.t = 0

    def flat_obs(self) -> np.ndarray:
        return self.obs.reshape(-1, VIEW_SIZE, VIEW_SIZE, 3)
