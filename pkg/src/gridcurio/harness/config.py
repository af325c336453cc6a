"""Experiment configuration and the flat `key = value` config file format.

Sections are dotted prefixes (``env.``, ``intrinsic.``, ``ppo.``,
``run.``); unknown keys are errors.
"""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

from ..gridworld.state import ConfigurationError, EnvConfig, parse_env_id
from ..intrinsic.config import IntrinsicConfig
from ..intrinsic.providers import EmbeddingProviderSpec
from ..learner.config import PpoConfig

EMBED_URL_ENV_VAR = "GRIDCURIO_EMBED_URL"


@dataclass
class ExperimentConfig:
    env: EnvConfig
    intrinsic: IntrinsicConfig = field(default_factory=IntrinsicConfig)
    ppo: PpoConfig = field(default_factory=PpoConfig)
    provider: Optional[EmbeddingProviderSpec] = None
    total_steps: int = 1_000_000
    seeds: List[int] = field(default_factory=lambda: [0, 1, 2])
    convergence_window: int = 100
    convergence_threshold: float = 0.95
    metrics_every: int = 10_000
    output_dir: str = "runs"
    early_stop: bool = False
    early_stop_patience: int = 5
    ride_dim: int = 128
    ride_lr: float = 1e-4

    def __post_init__(self):
        if self.total_steps % self.ppo.horizon != 0:
            raise ConfigurationError(
                f"run.total_steps: must be a multiple of n_envs * rollout_len "
                f"({self.ppo.horizon})")
        if self.intrinsic.method == "embedding_novelty" and self.provider is None:
            raise ConfigurationError(
                "intrinsic.provider: required for embedding_novelty")


_ENV_KEYS = {"id": str, "max_steps": int, "tile_size": int, "seed": int}
_INTRINSIC_KEYS = {
    "method": str, "beta": float, "episodic_enabled": bool,
    "input_view": str, "input_format": str,
    "provider": str, "provider_dim": int, "provider_seed": int,
    "endpoint": str,
}
_PPO_KEYS = {f.name: f.type for f in dataclasses.fields(PpoConfig)}
_RUN_KEYS = {
    "total_steps": int, "seeds": "int_list", "convergence_window": int,
    "convergence_threshold": float, "metrics_every": int, "output_dir": str,
    "early_stop": bool, "early_stop_patience": int,
    "ride_dim": int, "ride_lr": float,
}


def _coerce(value: str, kind):
    if kind is bool or kind == "bool":
        if value.lower() in ("true", "1", "yes", "on"):
            return True
        if value.lower() in ("false", "0", "no", "off"):
            return False
        raise ValueError(f"not a boolean: {value!r}")
    if kind == "int_list":
        return [int(v) for v in value.split(",") if v.strip()]
    if kind is int or kind == "int":
        return int(value)
    if kind is float or kind == "float":
        return float(value)
    return value


def parse_config_text(text: str, overrides: Optional[dict] = None
                      ) -> ExperimentConfig:
    sections = {"env": {}, "intrinsic": {}, "ppo": {}, "run": {}}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"line {lineno}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        _assign(sections, key, value, f"line {lineno}")
    for key, value in (overrides or {}).items():
        _assign(sections, key, str(value), "override")
    return build_experiment_config(sections)


def _assign(sections: dict, key: str, value: str, where: str) -> None:
    if "." not in key:
        raise ConfigurationError(f"{where}: key {key!r} missing section prefix")
    section, name = key.split(".", 1)
    tables = {"env": _ENV_KEYS, "intrinsic": _INTRINSIC_KEYS,
              "ppo": _PPO_KEYS, "run": _RUN_KEYS}
    if section not in tables:
        raise ConfigurationError(f"{where}: unknown section {section!r}")
    table = tables[section]
    if name not in table:
        raise ConfigurationError(f"{where}: unknown key {key!r}")
    try:
        sections[section][name] = _coerce(value, table[name])
    except ValueError as err:
        raise ConfigurationError(f"{where}: bad value for {key!r}: {err}")


def build_experiment_config(sections: dict) -> ExperimentConfig:
    env_kw = dict(sections["env"])
    env_id = env_kw.pop("id", None)
    if env_id is None:
        raise ConfigurationError("env.id: required")
    env = parse_env_id(env_id, **env_kw)

    intr_kw = dict(sections["intrinsic"])
    provider_kind = intr_kw.pop("provider", None)
    provider_dim = intr_kw.pop("provider_dim", 0)
    provider_seed = intr_kw.pop("provider_seed", 0)
    endpoint = os.environ.get(EMBED_URL_ENV_VAR) or intr_kw.pop("endpoint", "")
    intr_kw.pop("endpoint", None)
    intrinsic = IntrinsicConfig(**intr_kw)

    provider = None
    if provider_kind:
        provider = EmbeddingProviderSpec(
            kind=provider_kind,
            dim=provider_dim or (512 if provider_kind == "remote_service" else 128),
            seed=provider_seed, endpoint=endpoint)

    ppo = PpoConfig(**sections["ppo"])
    return ExperimentConfig(env=env, intrinsic=intrinsic, ppo=ppo,
                            provider=provider, **sections["run"])


def load_config(path, overrides: Optional[dict] = None) -> ExperimentConfig:
    return parse_config_text(Path(path).read_text(), overrides)


def config_echo(config: ExperimentConfig) -> dict:
    """Flat JSON-safe snapshot of a config for checkpoints and metrics."""
    out = {}
    for section, obj in (("env", config.env), ("intrinsic", config.intrinsic),
                         ("ppo", config.ppo)):
        for f in dataclasses.fields(obj):
            out[f"{section}.{f.name}"] = getattr(obj, f.name)
    for name in ("total_steps", "seeds", "convergence_window",
                 "convergence_threshold", "metrics_every", "output_dir",
                 "early_stop", "early_stop_patience", "ride_dim", "ride_lr"):
        out[f"run.{name}"] = getattr(config, name)
    if config.provider:
        out["intrinsic.provider"] = config.provider.kind
        out["intrinsic.provider_dim"] = config.provider.dim
        out["intrinsic.provider_seed"] = config.provider.seed
    return out
