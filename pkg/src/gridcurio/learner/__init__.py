from .buffer import RolloutBuffer
from .checkpoint import load_checkpoint, restore_module, save_checkpoint
from .config import PpoConfig
from .gae import compute_gae
from .network import ActorCriticNet, obs_to_tensor, policy_forward
from .ppo import (
    NumericError,
    UpdateStats,
    normalize_advantages,
    ppo_loss,
    ppo_update,
    sample_action,
    sample_actions,
)
from .rollout import IntrinsicStack, VecGridEnv, collect_rollout, update_ride

__all__ = [
    "RolloutBuffer", "PpoConfig", "compute_gae",
    "ActorCriticNet", "obs_to_tensor", "policy_forward",
    "NumericError", "UpdateStats", "normalize_advantages",
    "ppo_loss", "ppo_update", "sample_action", "sample_actions",
    "IntrinsicStack", "VecGridEnv", "collect_rollout", "update_ride",
    "load_checkpoint", "restore_module", "save_checkpoint",
]
