"""Step semantics: movement, object manipulation, rewards, termination."""

from __future__ import annotations

from typing import Tuple

from .constants import Action, CARRYABLE, DIR_TO_VEC, DoorState, Object
from .state import GridState, MULTIROOM, UsageError


def front_pos(state: GridState) -> Tuple[int, int]:
    dx, dy = DIR_TO_VEC[state.agent_dir]
    return state.agent_pos[0] + dx, state.agent_pos[1] + dy


def _traversable(triple) -> bool:
    obj, _, st = triple
    if obj in (Object.EMPTY, Object.FLOOR, Object.GOAL, Object.LAVA):
        return True
    if obj == Object.DOOR and st == DoorState.OPEN:
        return True
    return False


def step(state: GridState, action: int) -> Tuple[GridState, float, bool]:
    """Advance one timestep. Returns (new_state, extrinsic_reward, done)."""
    if state.terminated:
        raise UsageError("step() called on a terminated state")
    if not 0 <= action <= 6:
        raise UsageError(f"invalid action {action}")

    s = state.clone()
    s.step_count += 1
    reward = 0.0
    done = False

    fx, fy = front_pos(s)
    front = s.cell(fx, fy) if s.in_bounds(fx, fy) else (Object.WALL, 0, 0)

    if action == Action.TURN_LEFT:
        s.agent_dir = (s.agent_dir - 1) % 4
    elif action == Action.TURN_RIGHT:
        s.agent_dir = (s.agent_dir + 1) % 4
    elif action == Action.FORWARD:
        if _traversable(front):
            s.agent_pos = (fx, fy)
            if front[0] == Object.GOAL and s.family == MULTIROOM:
                reward = _success_reward(s)
                done = True
            elif front[0] == Object.LAVA:
                done = True
    elif action == Action.PICKUP:
        if s.carrying is None and front[0] in CARRYABLE:
            s.carrying = front
            s.set_cell(fx, fy, (Object.EMPTY, 0, 0))
            if front[0] == Object.BALL and s.family != MULTIROOM:
                reward = _success_reward(s)
                done = True
    elif action == Action.DROP:
        if s.carrying is not None and front[0] == Object.EMPTY and s.in_bounds(fx, fy):
            s.set_cell(fx, fy, s.carrying)
            s.carrying = None
    elif action == Action.TOGGLE:
        if front[0] == Object.DOOR:
            obj, color, st = front
            if st == DoorState.OPEN:
                s.set_cell(fx, fy, (obj, color, DoorState.CLOSED))
            elif st == DoorState.CLOSED:
                s.set_cell(fx, fy, (obj, color, DoorState.OPEN))
            elif st == DoorState.LOCKED:
                if s.carrying is not None and s.carrying[0] == Object.KEY \
                        and s.carrying[1] == color:
                    s.set_cell(fx, fy, (obj, color, DoorState.OPEN))
        elif front[0] == Object.BOX:
            # a box hides a key of its own color
            s.set_cell(fx, fy, (Object.KEY, front[1], 0))
    # Action.NOOP: nothing

    if s.step_count >= s.max_steps:
        done = True
    s.terminated = done
    return s, reward, done


def _success_reward(s: GridState) -> float:
    return 1.0 - 0.9 * (s.step_count / s.max_steps)
