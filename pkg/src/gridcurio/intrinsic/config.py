"""Intrinsic motivation configuration."""

from __future__ import annotations

from dataclasses import dataclass

from ..gridworld.state import ConfigurationError

METHODS = ("ride", "embedding_novelty", "none")
VIEWS = ("partial", "full")
FORMATS = ("encoded", "rgb")


@dataclass
class IntrinsicConfig:
    method: str = "none"
    beta: float = 0.005
    episodic_enabled: bool = True
    input_view: str = "partial"
    input_format: str = ""  # derived from method when left empty

    def __post_init__(self):
        if self.method not in METHODS:
            raise ConfigurationError(f"intrinsic.method: unknown {self.method!r}")
        if not self.input_format:
            self.input_format = "rgb" if self.method == "embedding_novelty" else "encoded"
        if self.input_view not in VIEWS:
            raise ConfigurationError(f"intrinsic.input_view: unknown {self.input_view!r}")
        if self.input_format not in FORMATS:
            raise ConfigurationError(f"intrinsic.input_format: unknown {self.input_format!r}")
        if self.method == "ride" and self.input_format != "encoded":
            raise ConfigurationError("intrinsic: ride requires encoded inputs")
        if self.method == "embedding_novelty" and self.input_format != "rgb":
            raise ConfigurationError("intrinsic: embedding_novelty requires rgb inputs")
        if self.method != "none" and self.beta <= 0:
            raise ConfigurationError("intrinsic.beta: must be > 0")
