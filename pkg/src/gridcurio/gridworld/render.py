"""Deterministic RGB rendering of encoded tensors."""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .constants import COLOR_RGB, Color, DoorState, Object

GRID_LINE = (60, 60, 60)


@lru_cache(maxsize=4096)
def _tile(obj: int, color: int, st: int, t: int) -> np.ndarray:
    tile = np.zeros((t, t, 3), dtype=np.uint8)
    rgb = COLOR_RGB.get(Color(color % 6), (255, 255, 255))
    if obj == Object.UNSEEN:
        pass  # solid black
    elif obj == Object.WALL:
        tile[:, :] = COLOR_RGB[Color.GREY]
    elif obj in (Object.EMPTY, Object.FLOOR):
        tile[0, :] = GRID_LINE
        tile[:, 0] = GRID_LINE
    elif obj == Object.DOOR:
        if st == DoorState.OPEN:
            tile[0, :] = rgb
            tile[-1, :] = rgb
            tile[:, 0] = rgb
            tile[:, -1] = rgb
        else:
            tile[:, :] = rgb
    elif obj == Object.AGENT:
        tile = _agent_tile(st, t)
    else:
        tile[:, :] = rgb
    tile.setflags(write=False)
    return tile


def _agent_tile(direction: int, t: int) -> np.ndarray:
    # isoceles triangle pointing east, then rotated into place
    tile = np.zeros((t, t, 3), dtype=np.uint8)
    cy = (t - 1) / 2.0
    for px in range(t):
        half = (t - 1 - px) / 2.0
        for py in range(t):
            if abs(py - cy) <= half:
                tile[py, px] = COLOR_RGB[Color.RED]
    # image rows are y: rot90(k=-1) turns an east-pointing shape southward
    return np.rot90(tile, k=-direction)


def render_rgb(tensor: np.ndarray, tile_size: int) -> np.ndarray:
    """Paint a (W, H, 3) encoded tensor into a (H*t, W*t, 3) uint8 image."""
    if tile_size < 1:
        raise ValueError("tile_size must be >= 1")
    w, h, _ = tensor.shape
    t = tile_size
    img = np.zeros((h * t, w * t, 3), dtype=np.uint8)
    for x in range(w):
        for y in range(h):
            obj, color, st = (int(v) for v in tensor[x, y])
            img[y * t:(y + 1) * t, x * t:(x + 1) * t] = _tile(obj, color, st, t)
    return img
