from .config import IntrinsicConfig
from .episodic import (
    EpisodicCounter,
    episodic_divisor,
    observation_key,
    observe_and_count,
)
from .providers import (
    EmbeddingProviderSpec,
    FrozenRandomProvider,
    RemoteProvider,
    TransportError,
    frozen_embed,
    remote_embed,
)
from .rewards import combine_reward, embedding_novelty_reward, ride_reward
from .ride import RideNets, ride_update, scale_obs

__all__ = [
    "IntrinsicConfig",
    "EpisodicCounter", "episodic_divisor", "observation_key", "observe_and_count",
    "EmbeddingProviderSpec", "FrozenRandomProvider", "RemoteProvider",
    "TransportError", "frozen_embed", "remote_embed",
    "combine_reward", "embedding_novelty_reward", "ride_reward",
    "RideNets", "ride_update", "scale_obs",
]
