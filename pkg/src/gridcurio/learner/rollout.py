"""Vectorized environment stepping and rollout collection.

Each parallel environment owns its state and episodic counter; intrinsic
rewards are computed online against a fixed embedding snapshot, and the
learned embedder is updated once per rollout (by the caller).
"""

from __future__ import annotations

from typing import List, Optional

import numpy as np

from ..gridworld import (
    EnvConfig,
    encode_full,
    encode_partial,
    render_rgb,
    reset,
    step,
)
from ..gridworld.encode import canvas_shape, pad_to_canvas
from ..intrinsic import (
    EpisodicCounter,
    IntrinsicConfig,
    RideNets,
    combine_reward,
    episodic_divisor,
    observe_and_count,
    ride_update,
)
from .buffer import RolloutBuffer
from .config import PpoConfig
from .network import ActorCriticNet, policy_forward
from .ppo import sample_actions


class IntrinsicStack:
    """Bundles the intrinsic config with its embedding source and the
    per-environment episodic counters."""

    def __init__(self, config: IntrinsicConfig, env_config: EnvConfig,
                 n_envs: int, provider=None, ride_nets: Optional[RideNets] = None):
        self.config = config
        self.env_config = env_config
        self.counters = [EpisodicCounter() for _ in range(n_envs)]
        self.provider = provider
        self.ride_nets = ride_nets
        self.canvas = canvas_shape(env_config)
        if config.method == "ride" and ride_nets is None:
            raise ValueError("ride method requires ride_nets")
        if config.method == "embedding_novelty" and provider is None:
            raise ValueError("embedding_novelty method requires a provider")

    def observation(self, state) -> np.ndarray:
        """The configured view/format of a state for embedding purposes."""
        if self.config.input_view == "full":
            enc = encode_full(state)
            if self.config.input_format == "encoded":
                enc = pad_to_canvas(enc, self.canvas)
        else:
            enc = encode_partial(state)
        if self.config.input_format == "rgb":
            return render_rgb(enc, self.env_config.tile_size)
        return enc

    def embed_batch(self, observations: List[np.ndarray]) -> List[np.ndarray]:
        if self.config.method == "ride":
            return list(self.ride_nets.embed(np.stack(observations)))
        return self.provider.embed_batch(observations)


class VecGridEnv:
    """n independent environment instances with auto-reset."""

    def __init__(self, env_config: EnvConfig, n_envs: int,
                 rng: np.random.Generator):
        self.env_config = env_config
        self.n_envs = n_envs
        self.rng = rng
        self.states = [reset(env_config, self._draw_seed())
                       for _ in range(n_envs)]
        self.episode_returns = np.zeros(n_envs)
        self.episode_lengths = np.zeros(n_envs, dtype=int)

    def _draw_seed(self) -> int:
        return int(self.rng.integers(0, 2 ** 62))

    def obs_partial(self) -> np.ndarray:
        return np.stack([encode_partial(s) for s in self.states])


def collect_rollout(vec_env: VecGridEnv, net: ActorCriticNet,
                    stack: IntrinsicStack, buffer: RolloutBuffer,
                    ppo_config: PpoConfig, rng: np.random.Generator) -> dict:
    """Fill the buffer with n_envs x rollout_len transitions.

    Returns episode statistics and, for the ride method, the intrinsic
    transition triples needed for the embedder update."""
    buffer.reset()
    n = vec_env.n_envs
    method = stack.config.method
    beta = stack.config.beta

    finished_returns: List[float] = []
    finished_lengths: List[int] = []
    ride_transitions = []
    intrinsic_sum = 0.0

    if method != "none":
        prev_inputs = [stack.observation(s) for s in vec_env.states]
        prev_embs = stack.embed_batch(prev_inputs)

    obs = vec_env.obs_partial()
    for _ in range(ppo_config.rollout_len):
        logits, values = policy_forward(net, obs)
        actions, log_probs, _ = sample_actions(logits, rng)

        extrinsic = np.zeros(n)
        intrinsic = np.zeros(n)
        combined = np.zeros(n)
        dones = np.zeros(n, dtype=bool)
        next_states = []
        for e in range(n):
            s_next, r_e, done = step(vec_env.states[e], int(actions[e]))
            next_states.append(s_next)
            extrinsic[e] = r_e
            dones[e] = done
            vec_env.episode_returns[e] += r_e
            vec_env.episode_lengths[e] += 1

        next_partial = [encode_partial(s) for s in next_states]
        if method != "none":
            if stack.config.input_view == "partial" \
                    and stack.config.input_format == "encoded":
                next_inputs = next_partial
            else:
                next_inputs = [stack.observation(s) for s in next_states]
            next_embs = stack.embed_batch(next_inputs)
        for e in range(n):
            count = observe_and_count(stack.counters[e], next_partial[e],
                                      bool(dones[e]))
            if method != "none":
                divisor = episodic_divisor(count, stack.config.episodic_enabled)
                diff = np.asarray(next_embs[e], dtype=np.float64) \
                    - np.asarray(prev_embs[e], dtype=np.float64)
                intrinsic[e] = float(np.linalg.norm(diff)) / divisor
                if method == "ride":
                    ride_transitions.append(
                        (prev_inputs[e], int(actions[e]), next_inputs[e]))
            combined[e] = combine_reward(extrinsic[e], intrinsic[e], beta) \
                if method != "none" else extrinsic[e]
            intrinsic_sum += intrinsic[e]

        buffer.add(obs, actions, log_probs, values, extrinsic, intrinsic,
                   combined, dones)

        next_obs = np.stack(next_partial)
        for e in range(n):
            if dones[e]:
                finished_returns.append(float(vec_env.episode_returns[e]))
                finished_lengths.append(int(vec_env.episode_lengths[e]))
                vec_env.episode_returns[e] = 0.0
                vec_env.episode_lengths[e] = 0
                vec_env.states[e] = reset(vec_env.env_config,
                                          vec_env._draw_seed())
                next_obs[e] = encode_partial(vec_env.states[e])
            else:
                vec_env.states[e] = next_states[e]
        obs = next_obs

        if method != "none":
            for e in range(n):
                if dones[e]:
                    prev_inputs[e] = stack.observation(vec_env.states[e])
                else:
                    prev_inputs[e] = next_inputs[e]
                    prev_embs[e] = next_embs[e]
            reset_idx = [e for e in range(n) if dones[e]]
            if reset_idx:
                fresh = stack.embed_batch([prev_inputs[e] for e in reset_idx])
                for k, e in enumerate(reset_idx):
                    prev_embs[e] = fresh[k]

    _, bootstrap = policy_forward(net, obs)
    # terminal states were auto-reset; their bootstrap is masked by done=1 in GAE
    buffer.set_bootstrap(bootstrap)

    stats = {
        "episode_returns": finished_returns,
        "episode_lengths": finished_lengths,
        "mean_intrinsic": intrinsic_sum / (n * ppo_config.rollout_len),
        "ride_transitions": ride_transitions,
    }
    return stats


def update_ride(stack: IntrinsicStack, transitions) -> tuple:
    if not transitions:
        return float("nan"), float("nan")
    return ride_update(stack.ride_nets, transitions)
