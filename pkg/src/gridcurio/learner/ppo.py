"""Clipped-surrogate PPO update and categorical action sampling."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np
import torch
import torch.nn.functional as F

from .buffer import RolloutBuffer
from .config import PpoConfig
from .network import ActorCriticNet, obs_to_tensor


class NumericError(RuntimeError):
    """Non-finite quantity encountered during optimization."""


def sample_action(logits: np.ndarray, rng: np.random.Generator
                  ) -> Tuple[int, float, float]:
    """Sample one action from softmax(logits); returns (action, log_prob,
    entropy)."""
    logits = np.asarray(logits, dtype=np.float64)
    if not np.all(np.isfinite(logits)):
        raise NumericError("sample_action: non-finite logits")
    z = logits - logits.max()
    probs = np.exp(z)
    probs /= probs.sum()
    action = int(rng.choice(len(probs), p=probs))
    log_probs = z - np.log(np.exp(z).sum())
    entropy = float(-(probs * log_probs).sum())
    return action, float(log_probs[action]), entropy


def sample_actions(logits: np.ndarray, rng: np.random.Generator):
    """Vectorized sampling for a batch of logit rows."""
    logits = np.asarray(logits, dtype=np.float64)
    if not np.all(np.isfinite(logits)):
        raise NumericError("sample_actions: non-finite logits")
    z = logits - logits.max(axis=1, keepdims=True)
    probs = np.exp(z)
    probs /= probs.sum(axis=1, keepdims=True)
    u = rng.random((len(probs), 1))
    actions = (probs.cumsum(axis=1) < u).sum(axis=1)
    actions = np.minimum(actions, probs.shape[1] - 1)
    log_probs_all = z - np.log(np.exp(z).sum(axis=1, keepdims=True))
    log_probs = log_probs_all[np.arange(len(actions)), actions]
    entropy = -(probs * log_probs_all).sum(axis=1)
    return actions, log_probs, entropy


@dataclass
class UpdateStats:
    policy_loss: float
    value_loss: float
    entropy: float
    clip_fraction: float
    approx_kl: float


def ppo_loss(net: ActorCriticNet, obs: torch.Tensor, actions: torch.Tensor,
             old_log_probs: torch.Tensor, advantages: torch.Tensor,
             returns: torch.Tensor, config: PpoConfig):
    """Clipped surrogate + value + entropy loss on one minibatch."""
    logits, values = net(obs)
    log_probs_all = F.log_softmax(logits, dim=1)
    log_probs = log_probs_all.gather(1, actions.unsqueeze(1)).squeeze(1)
    entropy = -(log_probs_all.exp() * log_probs_all).sum(dim=1).mean()

    ratio = torch.exp(log_probs - old_log_probs)
    clipped = torch.clamp(ratio, 1 - config.clip_epsilon, 1 + config.clip_epsilon)
    policy_loss = -torch.min(ratio * advantages, clipped * advantages).mean()
    value_loss = ((values - returns) ** 2).mean()
    loss = (policy_loss + config.value_coef * value_loss
            - config.entropy_coef * entropy)

    with torch.no_grad():
        clip_fraction = ((ratio - 1).abs() > config.clip_epsilon).float().mean()
        approx_kl = (old_log_probs - log_probs).mean()
    return loss, UpdateStats(float(policy_loss.detach()),
                             float(value_loss.detach()),
                             float(entropy.detach()), float(clip_fraction),
                             float(approx_kl))


def normalize_advantages(advantages: np.ndarray) -> np.ndarray:
    return (advantages - advantages.mean()) / (advantages.std() + 1e-8)


def ppo_update(net: ActorCriticNet, optimizer: torch.optim.Optimizer,
               buffer: RolloutBuffer, advantages: np.ndarray,
               returns: np.ndarray, config: PpoConfig,
               rng: np.random.Generator) -> UpdateStats:
    """Run `epochs` passes of shuffled minibatch updates; returns stats
    averaged over all minibatches."""
    n = config.horizon
    obs = obs_to_tensor(buffer.flat_obs())
    actions = torch.from_numpy(buffer.actions.reshape(-1))
    old_log_probs = torch.from_numpy(buffer.log_probs.reshape(-1)).float()
    adv_flat = normalize_advantages(advantages.reshape(-1))
    adv = torch.from_numpy(adv_flat).float()
    ret = torch.from_numpy(returns.reshape(-1)).float()

    mb_size = n // config.minibatch_count
    all_stats = []
    for _ in range(config.epochs):
        perm = rng.permutation(n)
        for start in range(0, n, mb_size):
            idx = torch.from_numpy(perm[start:start + mb_size])
            loss, stats = ppo_loss(net, obs[idx], actions[idx],
                                   old_log_probs[idx], adv[idx], ret[idx],
                                   config)
            if not torch.isfinite(loss):
                raise NumericError(
                    f"ppo_update: non-finite loss (policy={stats.policy_loss}, "
                    f"value={stats.value_loss}, entropy={stats.entropy})")
            optimizer.zero_grad()
            loss.backward()
            torch.nn.utils.clip_grad_norm_(net.parameters(), config.max_grad_norm)
            optimizer.step()
            all_stats.append(stats)

    return UpdateStats(
        policy_loss=float(np.mean([s.policy_loss for s in all_stats])),
        value_loss=float(np.mean([s.value_loss for s in all_stats])),
        entropy=float(np.mean([s.entropy for s in all_stats])),
        clip_fraction=float(np.mean([s.clip_fraction for s in all_stats])),
        approx_kl=float(np.mean([s.approx_kl for s in all_stats])),
    )
