"""Observation encodings: full-state tensor, egocentric partial view,
and the field-of-view propagation mask.
"""

from __future__ import annotations

import numpy as np

from .constants import Color, DIR_TO_VEC, Object, VIEW_SIZE
from .state import EnvConfig, GridState, KEYCORRIDOR, MULTIROOM

AGENT_COLOR = Color.RED
AGENT_LOCAL = (3, 6)  # agent cell in the egocentric window, facing local-up


def encode_full(state: GridState) -> np.ndarray:
    """Full-state tensor: one (object, color, state) triple per grid cell,
    with the agent overlaid as (AGENT, red, agent_dir)."""
    enc = state.cells.copy()
    ax, ay = state.agent_pos
    enc[ax, ay] = (Object.AGENT, AGENT_COLOR, state.agent_dir)
    return enc


def see_through(triple) -> bool:
    obj = int(triple[0])
    if obj == 0 or obj == 2 or obj == 7:  # unseen, wall, box
        return False
    if obj == 4 and int(triple[2]) != 0:  # closed or locked door
        return False
    return True


def _see_through_grid(window: np.ndarray) -> np.ndarray:
    obj = window[:, :, 0]
    st = window[:, :, 2]
    opaque = (obj == 0) | (obj == 2) | (obj == 7) | ((obj == 4) & (st != 0))
    return ~opaque


def visibility_mask(window: np.ndarray) -> np.ndarray:
    """Outward propagation of visibility from the agent cell at (3, 6).

    For each row from the agent outward, visibility spreads sideways along
    the row and diagonally into the next row, stopping at opaque cells
    (walls, closed/locked doors, boxes, out-of-grid).
    """
    n = VIEW_SIZE
    see = _see_through_grid(window).tolist()
    mask = [[False] * n for _ in range(n)]
    mask[AGENT_LOCAL[0]][AGENT_LOCAL[1]] = True
    for j in range(n - 1, -1, -1):
        for i in range(n):
            if mask[i][j] and see[i][j]:
                if i + 1 < n:
                    mask[i + 1][j] = True
                    if j - 1 >= 0:
                        mask[i + 1][j - 1] = True
                if j - 1 >= 0:
                    mask[i][j - 1] = True
        for i in range(n - 1, -1, -1):
            if mask[i][j] and see[i][j]:
                if i - 1 >= 0:
                    mask[i - 1][j] = True
                    if j - 1 >= 0:
                        mask[i - 1][j - 1] = True
                if j - 1 >= 0:
                    mask[i][j - 1] = True
    return np.array(mask, dtype=bool)


def extract_window(state: GridState) -> np.ndarray:
    """7x7 window in front of the agent, rotated to the agent-local frame
    (agent at (3, 6) facing local-up). Out-of-grid cells are opaque unseen."""
    n = VIEW_SIZE
    dx, dy = DIR_TO_VEC[state.agent_dir]
    rx, ry = DIR_TO_VEC[(state.agent_dir + 1) % 4]  # local-right in world coords
    ax, ay = state.agent_pos

    i = np.arange(n).reshape(n, 1)  # local x (left->right)
    j = np.arange(n).reshape(1, n)  # local y (far->near)
    f = (n - 1) - j                 # cells forward of the agent
    r = i - AGENT_LOCAL[0]          # cells to the agent's right
    wx = ax + f * dx + r * rx
    wy = ay + f * dy + r * ry

    window = np.zeros((n, n, 3), dtype=np.uint8)  # unseen by default
    inside = (wx >= 0) & (wx < state.width) & (wy >= 0) & (wy < state.height)
    window[inside] = state.cells[wx[inside], wy[inside]]
    return window


def encode_partial(state: GridState) -> np.ndarray:
    """Egocentric 7x7 encoding: windowed, occlusion-masked, with the agent
    cell showing the carried object (or empty)."""
    window = extract_window(state)
    mask = visibility_mask(window)
    enc = np.where(mask[:, :, None], window, 0).astype(np.uint8)
    enc[AGENT_LOCAL] = state.carrying if state.carrying else (Object.EMPTY, 0, 0)
    return enc


def canvas_shape(config: EnvConfig):
    """Largest (width, height) a layout of this config can occupy.

    Fixed-size canvases let convolutional consumers of full-state
    encodings use one input shape even though MultiRoom layouts vary."""
    if config.family == MULTIROOM:
        side = (config.n_rooms - 1) * (config.room_size - 1) + config.room_size
        return side, side
    if config.family == KEYCORRIDOR:
        p = config.room_size - 1
        return 3 * p + 1, config.n_rows * p + 1
    return 16, 16


def pad_to_canvas(enc: np.ndarray, shape) -> np.ndarray:
    """Zero-pad (unseen) an encoded tensor to the canvas shape."""
    w, h = shape
    ew, eh, _ = enc.shape
    if (ew, eh) == (w, h):
        return enc
    out = np.zeros((w, h, 3), dtype=np.uint8)
    out[:ew, :eh] = enc
    return out
