"""Learned-embedding networks for impact-driven intrinsic rewards.

The embedder shares the policy's conv-stack shape but has independent
parameters. One update per rollout minimizes a forward-dynamics loss
(embeddings stop-gradiented, so only the forward model learns from it)
plus an inverse-dynamics cross-entropy that trains the embedder.
"""

from __future__ import annotations

from typing import Sequence, Tuple

import numpy as np
import torch
import torch.nn as nn
import torch.nn.functional as F

from ..gridworld.constants import N_ACTIONS
from ..gridworld.state import UsageError

CHANNEL_SCALE = np.array([10.0, 5.0, 3.0], dtype=np.float32)


def scale_obs(obs: np.ndarray) -> np.ndarray:
    """(..., W, H, 3) integer tensor -> float32 in [0, 1], channels-first."""
    scaled = obs.astype(np.float32) / CHANNEL_SCALE
    return np.moveaxis(scaled, -1, -3)


class ConvEmbedder(nn.Module):
    """3x(conv 32f 3x3 s2 p1) + FC head, matching the policy trunk shape."""

    def __init__(self, input_shape: Tuple[int, int], out_dim: int):
        super().__init__()
        w, h = input_shape
        self.conv = nn.Sequential(
            nn.Conv2d(3, 32, 3, stride=2, padding=1), nn.ELU(),
            nn.Conv2d(32, 32, 3, stride=2, padding=1), nn.ELU(),
            nn.Conv2d(32, 32, 3, stride=2, padding=1), nn.ELU(),
        )
        # scale_obs yields (N, 3, W, H) axis order; mirror it here
        with torch.no_grad():
            n_flat = self.conv(torch.zeros(1, 3, w, h)).numel()
        self.head = nn.Linear(n_flat, out_dim)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        return self.head(self.conv(x).flatten(1))


class RideNets(nn.Module):
    def __init__(self, input_shape: Tuple[int, int], dim: int = 128,
                 lr: float = 1e-4, hidden: int = 256):
        super().__init__()
        self.dim = dim
        self.input_shape = input_shape
        self.phi = ConvEmbedder(input_shape, dim)
        self.forward_model = nn.Sequential(
            nn.Linear(dim + N_ACTIONS, hidden), nn.ELU(), nn.Linear(hidden, dim))
        self.inverse_model = nn.Sequential(
            nn.Linear(2 * dim, hidden), nn.ELU(), nn.Linear(hidden, N_ACTIONS))
        self.optimizer = torch.optim.Adam(self.parameters(), lr=lr)

    @torch.no_grad()
    def embed(self, obs_batch: np.ndarray) -> np.ndarray:
        x = torch.from_numpy(scale_obs(obs_batch))
        return self.phi(x).numpy()

    def losses(self, obs_t: np.ndarray, actions: Sequence[int],
               obs_next: np.ndarray) -> Tuple[torch.Tensor, torch.Tensor]:
        dtype = next(self.phi.parameters()).dtype
        x_t = torch.from_numpy(scale_obs(obs_t)).to(dtype)
        x_next = torch.from_numpy(scale_obs(obs_next)).to(dtype)
        a = torch.as_tensor(np.asarray(actions), dtype=torch.long)
        phi_t = self.phi(x_t)
        phi_next = self.phi(x_next)
        a_onehot = F.one_hot(a, N_ACTIONS).float()
        pred_next = self.forward_model(
            torch.cat([phi_t.detach(), a_onehot], dim=1))
        forward_loss = ((pred_next - phi_next.detach()) ** 2).sum(dim=1).mean()
        logits = self.inverse_model(torch.cat([phi_t, phi_next], dim=1))
        inverse_loss = F.cross_entropy(logits, a)
        return forward_loss, inverse_loss


def ride_update(nets: RideNets, batch) -> Tuple[float, float]:
    """One gradient step on forward + inverse losses (equal weights).

    ``batch`` is a sequence of (obs_enc_t, action, obs_enc_next) triples.
    """
    if len(batch) == 0:
        raise UsageError("ride_update: empty batch")
    obs_t = np.stack([b[0] for b in batch])
    actions = [int(b[1]) for b in batch]
    obs_next = np.stack([b[2] for b in batch])
    forward_loss, inverse_loss = nets.losses(obs_t, actions, obs_next)
    loss = forward_loss + inverse_loss
    nets.optimizer.zero_grad()
    loss.backward()
    nets.optimizer.step()
    return float(forward_loss.item()), float(inverse_loss.item())
