"""Actor-critic network: shared conv trunk, separate policy/value heads.

Input is always the encoded 7x7x3 partial observation, with integer
channels scaled into [0, 1].
"""

from __future__ import annotations

from typing import Tuple

import numpy as np
import torch
import torch.nn as nn

from ..gridworld.constants import N_ACTIONS, VIEW_SIZE
from ..gridworld.state import UsageError
from ..intrinsic.ride import scale_obs


class ActorCriticNet(nn.Module):
    def __init__(self):
        super().__init__()
        self.trunk = nn.Sequential(
            nn.Conv2d(3, 32, 3, stride=2, padding=1), nn.ELU(),
            nn.Conv2d(32, 32, 3, stride=2, padding=1), nn.ELU(),
            nn.Conv2d(32, 32, 3, stride=2, padding=1), nn.ELU(),
            nn.Flatten(),
            nn.Linear(32 * 1 * 1, 256), nn.ELU(),
        )
        self.actor = nn.Linear(256, N_ACTIONS)
        self.critic = nn.Linear(256, 1)

    def forward(self, x: torch.Tensor) -> Tuple[torch.Tensor, torch.Tensor]:
        if x.dim() != 4 or x.shape[1:] != (3, VIEW_SIZE, VIEW_SIZE):
            raise UsageError(f"expected (N, 3, {VIEW_SIZE}, {VIEW_SIZE}) input, "
                             f"got {tuple(x.shape)}")
        z = self.trunk(x)
        return self.actor(z), self.critic(z).squeeze(-1)


def obs_to_tensor(obs_batch: np.ndarray) -> torch.Tensor:
    """Stack of (7, 7, 3) encoded observations -> scaled float tensor."""
    return torch.from_numpy(scale_obs(obs_batch))


def policy_forward(net: ActorCriticNet,
                   obs_batch: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Numpy-facing forward pass: (logits, values) without gradients."""
    with torch.no_grad():
        logits, values = net(obs_to_tensor(obs_batch))
    return logits.numpy(), values.numpy()
