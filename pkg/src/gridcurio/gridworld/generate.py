"""Procedural layout generation for the three environment families.

All layouts are solvable by construction: rooms are empty rectangles,
every region the task requires is reachable through doors the agent can
open (directly, or after retrieving the matching key).
"""

from __future__ import annotations

from typing import Tuple

import numpy as np

from .constants import Color, DoorState, Object
from .state import (
    EnvConfig,
    GridState,
    KEYCORRIDOR,
    MULTIROOM,
)

EMPTY = (Object.EMPTY, 0, 0)
WALL = (Object.WALL, Color.GREY, 0)


def reset(config: EnvConfig, episode_seed: int) -> GridState:
    """Generate a fresh solvable layout for the configured family."""
    rng = np.random.default_rng(np.random.SeedSequence([config.seed & (2**64 - 1),
                                                        episode_seed & (2**64 - 1)]))
    if config.family == MULTIROOM:
        state = _gen_multiroom(config, rng)
    elif config.family == KEYCORRIDOR:
        state = _gen_keycorridor(config, rng)
    else:
        state = _gen_obstructed_maze(config, rng)
    state.rng = rng
    return state


def _blank(width: int, height: int, config: EnvConfig) -> GridState:
    cells = np.zeros((width, height, 3), dtype=np.uint8)
    cells[:, :] = EMPTY
    return GridState(width=width, height=height, cells=cells,
                     agent_pos=(0, 0), agent_dir=0, carrying=None,
                     step_count=0, max_steps=config.max_steps,
                     family=config.family)


def _draw_room(state: GridState, x0: int, y0: int, size: int) -> None:
    x1, y1 = x0 + size - 1, y0 + size - 1
    state.cells[x0:x1 + 1, y0] = WALL
    state.cells[x0:x1 + 1, y1] = WALL
    state.cells[x0, y0:y1 + 1] = WALL
    state.cells[x1, y0:y1 + 1] = WALL


def _random_interior(rng, x0: int, y0: int, size: int) -> Tuple[int, int]:
    x = int(rng.integers(x0 + 1, x0 + size - 1))
    y = int(rng.integers(y0 + 1, y0 + size - 1))
    return x, y


def _gen_multiroom(config: EnvConfig, rng) -> GridState:
    n, s = config.n_rooms, config.room_size
    # self-avoiding walk on the room lattice; rooms share the wall between
    # lattice neighbors, so lattice pitch is s - 1
    while True:
        coords = [(0, 0)]
        occupied = {(0, 0)}
        ok = True
        for _ in range(n - 1):
            cx, cy = coords[-1]
            options = [(cx + dx, cy + dy)
                       for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1))
                       if (cx + dx, cy + dy) not in occupied]
            if not options:
                ok = False
                break
            nxt = options[int(rng.integers(len(options)))]
            coords.append(nxt)
            occupied.add(nxt)
        if ok:
            break

    min_x = min(c[0] for c in coords)
    min_y = min(c[1] for c in coords)
    coords = [(c[0] - min_x, c[1] - min_y) for c in coords]
    pitch = s - 1
    width = (max(c[0] for c in coords)) * pitch + s
    height = (max(c[1] for c in coords)) * pitch + s
    state = _blank(width, height, config)

    origins = [(cx * pitch, cy * pitch) for cx, cy in coords]
    for ox, oy in origins:
        _draw_room(state, ox, oy, s)

    for i in range(n - 1):
        (ax, ay), (bx, by) = origins[i], origins[i + 1]
        color = Color(int(rng.integers(6)))
        if ax != bx:  # horizontal neighbors: shared wall is a column
            wx = max(ax, bx)
            wy = ay + 1 + int(rng.integers(s - 2))
            state.set_cell(wx, wy, (Object.DOOR, color, DoorState.CLOSED))
        else:
            wy = max(ay, by)
            wx = ax + 1 + int(rng.integers(s - 2))
            state.set_cell(wx, wy, (Object.DOOR, color, DoorState.CLOSED))

    gx0, gy0 = origins[-1]
    goal = _random_interior(rng, gx0, gy0, s)
    state.set_cell(goal[0], goal[1], (Object.GOAL, Color.GREEN, 0))

    while True:
        pos = _random_interior(rng, origins[0][0], origins[0][1], s)
        if state.cell(*pos)[0] == Object.EMPTY:
            break
    state.agent_pos = pos
    state.agent_dir = int(rng.integers(4))
    return state


def _gen_keycorridor(config: EnvConfig, rng) -> GridState:
    s, rows = config.room_size, config.n_rows
    pitch = s - 1
    width = 3 * pitch + 1
    height = rows * pitch + 1
    state = _blank(width, height, config)
    for col in range(3):
        for row in range(rows):
            _draw_room(state, col * pitch, row * pitch, s)

    # middle column is the corridor: open a passage in each internal wall
    for row in range(1, rows):
        x = pitch + 1 + int(rng.integers(s - 2))
        state.set_cell(x, row * pitch, EMPTY)

    ball_row = int(rng.integers(rows))
    key_row = int(rng.integers(rows))
    lock_color = Color(int(rng.integers(6)))

    for row in range(rows):
        # left room door (closed, unlocked)
        ly = row * pitch + 1 + int(rng.integers(s - 2))
        lcolor = Color(int(rng.integers(6)))
        state.set_cell(pitch, ly, (Object.DOOR, lcolor, DoorState.CLOSED))
        # right room door; the ball room's door is locked
        ry = row * pitch + 1 + int(rng.integers(s - 2))
        if row == ball_row:
            state.set_cell(2 * pitch, ry, (Object.DOOR, lock_color, DoorState.LOCKED))
        else:
            rcolor = Color(int(rng.integers(6)))
            state.set_cell(2 * pitch, ry, (Object.DOOR, rcolor, DoorState.CLOSED))

    ball_color = Color(int(rng.integers(6)))
    bx, by = _random_interior(rng, 2 * pitch, ball_row * pitch, s)
    state.set_cell(bx, by, (Object.BALL, ball_color, 0))
    kx, ky = _random_interior(rng, 0, key_row * pitch, s)
    state.set_cell(kx, ky, (Object.KEY, lock_color, 0))

    while True:
        row = int(rng.integers(rows))
        pos = _random_interior(rng, pitch, row * pitch, s)
        if state.cell(*pos)[0] == Object.EMPTY:
            break
    state.agent_pos = pos
    state.agent_dir = int(rng.integers(4))
    return state


def _gen_obstructed_maze(config: EnvConfig, rng) -> GridState:
    s = 6
    pitch = s - 1
    width = height = 3 * pitch + 1
    state = _blank(width, height, config)
    for col in range(3):
        for row in range(3):
            _draw_room(state, col * pitch, row * pitch, s)

    # active rooms are the middle row; the agent starts in the center
    row_y0 = pitch
    color_ids = rng.permutation(6)[:2]
    left_color, right_color = Color(int(color_ids[0])), Color(int(color_ids[1]))
    ly = row_y0 + 1 + int(rng.integers(s - 2))
    ry = row_y0 + 1 + int(rng.integers(s - 2))
    state.set_cell(pitch, ly, (Object.DOOR, left_color, DoorState.LOCKED))
    state.set_cell(2 * pitch, ry, (Object.DOOR, right_color, DoorState.LOCKED))

    # keys hidden inside boxes in the center room; a box's contents is a
    # key of the box's own color (see engine.toggle)
    # keep the cells facing each locked door free so doors stay approachable
    placed = {(pitch + 1, ly), (2 * pitch - 1, ry)}
    for color in (left_color, right_color):
        while True:
            bx, by = _random_interior(rng, pitch, row_y0, s)
            if (bx, by) not in placed:
                placed.add((bx, by))
                state.set_cell(bx, by, (Object.BOX, color, 0))
                break

    target_col = 0 if rng.integers(2) == 0 else 2
    tx, ty = _random_interior(rng, target_col * pitch, row_y0, s)
    state.set_cell(tx, ty, (Object.BALL, Color.BLUE, 0))

    while True:
        pos = _random_interior(rng, pitch, row_y0, s)
        if state.cell(*pos)[0] == Object.EMPTY:
            break
    state.agent_pos = pos
    state.agent_dir = int(rng.integers(4))
    return state
