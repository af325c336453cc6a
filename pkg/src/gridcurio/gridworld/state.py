"""Grid state and environment configuration types."""

from __future__ import annotations

import copy
import re
from dataclasses import dataclass, field, replace
from typing import Optional, Tuple

import numpy as np

from .constants import Object

Triple = Tuple[int, int, int]  # (object_id, color_id, state_id)


class ConfigurationError(ValueError):
    """Raised when an EnvConfig (or run config) field is invalid."""


class UsageError(RuntimeError):
    """Raised when an operation is called outside its contract."""


MULTIROOM = "MultiRoom"
KEYCORRIDOR = "KeyCorridor"
OBSTRUCTEDMAZE = "ObstructedMaze2Dlh"

FAMILIES = (MULTIROOM, KEYCORRIDOR, OBSTRUCTEDMAZE)


@dataclass
class EnvConfig:
    family: str
    n_rooms: int = 0        # MultiRoom N
    room_size: int = 0      # MultiRoom S / KeyCorridor S
    n_rows: int = 0         # KeyCorridor R
    max_steps: Optional[int] = None
    tile_size: int = 8
    seed: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ConfigurationError(f"family: unknown family {self.family!r}")
        if self.family == MULTIROOM:
            if self.n_rooms < 2:
                raise ConfigurationError("n_rooms: MultiRoom requires n_rooms >= 2")
            if self.room_size < 4:
                raise ConfigurationError("room_size: MultiRoom requires room_size >= 4")
        elif self.family == KEYCORRIDOR:
            if self.room_size < 3:
                raise ConfigurationError("room_size: KeyCorridor requires room_size >= 3")
            if self.n_rows < 1:
                raise ConfigurationError("n_rows: KeyCorridor requires n_rows >= 1")
        if self.tile_size < 1:
            raise ConfigurationError("tile_size: must be >= 1")
        if self.max_steps is None:
            self.max_steps = default_max_steps(self)
        if self.max_steps <= 0:
            raise ConfigurationError("max_steps: must be > 0")


def default_max_steps(config: EnvConfig) -> int:
    if config.family == MULTIROOM:
        return 20 * config.n_rooms
    if config.family == KEYCORRIDOR:
        return 30 * config.room_size ** 2
    return 576


_MULTIROOM_RE = re.compile(r"^MultiRoom-N(\d+)-S(\d+)$")
_KEYCORRIDOR_RE = re.compile(r"^KeyCorridorS(\d+)R(\d+)$")


def parse_env_id(env_id: str, **overrides) -> EnvConfig:
    """Build an EnvConfig from an id string like ``MultiRoom-N7-S4``."""
    m = _MULTIROOM_RE.match(env_id)
    if m:
        return EnvConfig(family=MULTIROOM, n_rooms=int(m.group(1)),
                         room_size=int(m.group(2)), **overrides)
    m = _KEYCORRIDOR_RE.match(env_id)
    if m:
        return EnvConfig(family=KEYCORRIDOR, room_size=int(m.group(1)),
                         n_rows=int(m.group(2)), **overrides)
    if env_id == "ObstructedMaze-2Dlh":
        return EnvConfig(family=OBSTRUCTEDMAZE, **overrides)
    raise ConfigurationError(f"env: unknown environment id {env_id!r}")


def env_id_of(config: EnvConfig) -> str:
    if config.family == MULTIROOM:
        return f"MultiRoom-N{config.n_rooms}-S{config.room_size}"
    if config.family == KEYCORRIDOR:
        return f"KeyCorridorS{config.room_size}R{config.n_rows}"
    return "ObstructedMaze-2Dlh"


@dataclass
class GridState:
    """Complete simulator state. Treated as a value: `step` returns a new one.

    ``cells`` is a (width, height, 3) uint8 array of (object, color, state)
    triples indexed [x, y]; x grows eastward, y southward.
    """

    width: int
    height: int
    cells: np.ndarray
    agent_pos: Tuple[int, int]
    agent_dir: int
    carrying: Optional[Triple]
    step_count: int
    max_steps: int
    family: str
    rng: np.random.Generator = field(repr=False, default=None)
    terminated: bool = False

    def cell(self, x: int, y: int) -> Triple:
        return tuple(int(v) for v in self.cells[x, y])

    def set_cell(self, x: int, y: int, triple: Triple) -> None:
        self.cells[x, y] = triple

    def in_bounds(self, x: int, y: int) -> bool:
        return 0 <= x < self.width and 0 <= y < self.height

    def clone(self) -> "GridState":
        # rng is shared: stepping never draws from it, only reset does
        return replace(self, cells=self.cells.copy())

    def key(self) -> bytes:
        """Stable byte serialization of the dynamic state (hashing/BFS)."""
        carry = self.carrying if self.carrying else (255, 255, 255)
        return (self.cells.tobytes()
                + bytes([self.agent_pos[0], self.agent_pos[1], self.agent_dir])
                + bytes(carry))


def count_objects(state: GridState, object_id: int, state_id: Optional[int] = None) -> int:
    """Scan the grid for cells with a given object (and optionally state) id."""
    match = state.cells[:, :, 0] == int(object_id)
    if state_id is not None:
        match &= state.cells[:, :, 2] == int(state_id)
    return int(np.count_nonzero(match))


def find_objects(state: GridState, object_id: int) -> list:
    xs, ys = np.nonzero(state.cells[:, :, 0] == int(object_id))
    return [(int(x), int(y)) for x, y in zip(xs, ys)]
