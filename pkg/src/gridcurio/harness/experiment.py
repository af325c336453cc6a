"""Training-loop orchestration for a single (config, seed) run."""

from __future__ import annotations

import time
from collections import deque
from pathlib import Path

import numpy as np
import torch

from ..gridworld.encode import canvas_shape
from ..intrinsic import FrozenRandomProvider, RemoteProvider, RideNets
from ..learner import (
    ActorCriticNet,
    IntrinsicStack,
    RolloutBuffer,
    VecGridEnv,
    collect_rollout,
    compute_gae,
    ppo_update,
    save_checkpoint,
    update_ride,
)
from .config import ExperimentConfig, config_echo
from .metrics import MetricsWriter


def build_provider(config: ExperimentConfig):
    if config.provider is None:
        return None
    if config.provider.kind == "frozen_random":
        return FrozenRandomProvider(config.provider)
    if config.provider.kind == "remote_service":
        return RemoteProvider(config.provider)
    return None  # ride_learned: embeddings come from RideNets


def build_stack(config: ExperimentConfig, seed: int) -> IntrinsicStack:
    ride_nets = None
    if config.intrinsic.method == "ride":
        shape = canvas_shape(config.env) if config.intrinsic.input_view == "full" \
            else (7, 7)
        ride_nets = RideNets(shape, dim=config.ride_dim, lr=config.ride_lr)
    return IntrinsicStack(config.intrinsic, config.env, config.ppo.n_envs,
                          provider=build_provider(config), ride_nets=ride_nets)


def run_experiment(config: ExperimentConfig, seed: int) -> str:
    """Train to total_steps (or sustained convergence when early_stop is
    on), logging metrics and writing a final checkpoint. Returns the
    metrics file path."""
    torch.manual_seed(seed)
    ss = np.random.SeedSequence([seed, config.env.seed])
    env_rng, action_rng, update_rng = (np.random.default_rng(s)
                                       for s in ss.spawn(3))

    out_dir = Path(config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    metrics_path = out_dir / f"metrics_seed{seed}.csv"
    writer = MetricsWriter(metrics_path)

    net = ActorCriticNet()
    optimizer = torch.optim.Adam(net.parameters(), lr=config.ppo.learning_rate)
    stack = build_stack(config, seed)
    vec_env = VecGridEnv(config.env, config.ppo.n_envs, env_rng)
    buffer = RolloutBuffer(config.ppo.n_envs, config.ppo.rollout_len)

    window = deque(maxlen=config.convergence_window)
    lengths = deque(maxlen=config.convergence_window)
    episodes_completed = 0
    global_step = 0
    last_logged = -config.metrics_every
    start = time.monotonic()
    n_updates = config.total_steps // config.ppo.horizon
    convergence_bar = None
    if config.early_stop:
        from ..gridworld.solver import optimal_return_estimate
        convergence_bar = (config.convergence_threshold
                           * optimal_return_estimate(config.env))
    streak = 0

    try:
        for _ in range(n_updates):
            stats = collect_rollout(vec_env, net, stack, buffer, config.ppo,
                                    action_rng)
            forward_loss, inverse_loss = update_ride(
                stack, stats["ride_transitions"])
            advantages, returns = compute_gae(buffer, config.ppo)
            up = ppo_update(net, optimizer, buffer, advantages, returns,
                            config.ppo, update_rng)

            global_step += config.ppo.horizon
            window.extend(stats["episode_returns"])
            lengths.extend(stats["episode_lengths"])
            episodes_completed += len(stats["episode_returns"])

            if global_step - last_logged >= config.metrics_every \
                    or global_step == config.total_steps:
                last_logged = global_step
                mean_return = float(np.mean(window)) if window else 0.0
                writer.write(
                    global_step=global_step,
                    episodes_completed=episodes_completed,
                    mean_return=mean_return,
                    mean_episode_length=(float(np.mean(lengths))
                                         if lengths else 0.0),
                    mean_intrinsic_reward=stats["mean_intrinsic"],
                    forward_loss=forward_loss,
                    inverse_loss=inverse_loss,
                    policy_loss=up.policy_loss,
                    value_loss=up.value_loss,
                    entropy=up.entropy,
                    wall_clock_seconds=round(time.monotonic() - start, 3),
                )
                if convergence_bar is not None:
                    streak = streak + 1 if (window and mean_return
                                            >= convergence_bar) else 0
                    if streak >= config.early_stop_patience:
                        break
    finally:
        writer.close()

    save_checkpoint(out_dir / f"checkpoint_seed{seed}.gckp", net,
                    config_echo(config))
    return str(metrics_path)
