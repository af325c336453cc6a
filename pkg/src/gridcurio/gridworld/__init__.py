from .constants import Action, Color, Direction, DoorState, Object, N_ACTIONS, VIEW_SIZE
from .state import (
    ConfigurationError,
    EnvConfig,
    GridState,
    UsageError,
    count_objects,
    env_id_of,
    find_objects,
    parse_env_id,
    KEYCORRIDOR,
    MULTIROOM,
    OBSTRUCTEDMAZE,
)
from .generate import reset
from .engine import front_pos, step
from .encode import encode_full, encode_partial, extract_window, visibility_mask
from .render import render_rgb
from .solver import mean_solver_path_length, optimal_return_estimate, solve

__all__ = [
    "Action", "Color", "Direction", "DoorState", "Object", "N_ACTIONS", "VIEW_SIZE",
    "ConfigurationError", "EnvConfig", "GridState", "UsageError",
    "count_objects", "env_id_of", "find_objects", "parse_env_id",
    "KEYCORRIDOR", "MULTIROOM", "OBSTRUCTEDMAZE",
    "reset", "front_pos", "step",
    "encode_full", "encode_partial", "extract_window", "visibility_mask",
    "render_rgb",
    "mean_solver_path_length", "optimal_return_estimate", "solve",
]
