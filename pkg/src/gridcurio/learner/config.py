"""PPO hyperparameter bundle."""

from __future__ import annotations

from dataclasses import dataclass

from ..gridworld.state import ConfigurationError


@dataclass
class PpoConfig:
    gamma: float = 0.99
    gae_lambda: float = 0.95
    clip_epsilon: float = 0.2
    epochs: int = 4
    n_envs: int = 16
    rollout_len: int = 128
    learning_rate: float = 1e-4
    entropy_coef: float = 5e-4
    value_coef: float = 0.5
    max_grad_norm: float = 0.5
    minibatch_count: int = 8

    def __post_init__(self):
        if self.n_envs < 1 or self.rollout_len < 1:
            raise ConfigurationError("ppo: n_envs and rollout_len must be >= 1")
        if (self.n_envs * self.rollout_len) % self.minibatch_count != 0:
            raise ConfigurationError(
                "ppo.minibatch_count: must divide n_envs * rollout_len")
        if not 0 < self.clip_epsilon < 1:
            raise ConfigurationError("ppo.clip_epsilon: must be in (0, 1)")

    @property
    def horizon(self) -> int:
        return self.n_envs * self.rollout_len
