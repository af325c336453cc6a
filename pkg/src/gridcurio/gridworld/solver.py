"""Scripted solver used to certify solvability and estimate optimal returns.

Navigation is breadth-first search over (x, y, dir) nodes where closed
doors cost an extra toggle; task-level logic (fetch key, unlock, drop,
pick up target) is scripted per family.
"""

from __future__ import annotations

from collections import deque
from typing import List, Optional, Tuple

from .constants import Action, DIR_TO_VEC, DoorState, Object
from .engine import step
from .state import EnvConfig, GridState, KEYCORRIDOR, MULTIROOM
from .generate import reset


def _passable(state: GridState, x: int, y: int, unlock_colors) -> Optional[bool]:
    """None = blocked; False = walkable; True = walkable after a toggle."""
    if not state.in_bounds(x, y):
        return None
    obj, color, st = state.cell(x, y)
    if obj in (Object.EMPTY, Object.FLOOR, Object.GOAL):
        return False
    if obj == Object.DOOR:
        if st == DoorState.OPEN:
            return False
        if st == DoorState.CLOSED:
            return True
        if st == DoorState.LOCKED and color in unlock_colors:
            return True
    return None


def _bfs(state: GridState, goal_fn, unlock_colors=()) -> Optional[List[int]]:
    """Shortest action sequence to a node satisfying goal_fn(x, y, dir)."""
    start = (state.agent_pos[0], state.agent_pos[1], state.agent_dir)
    parents = {start: None}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        x, y, d = node
        if goal_fn(x, y, d):
            actions = []
            while parents[node] is not None:
                node, acts = parents[node]
                actions = list(acts) + actions
            return actions
        for action, nd in ((Action.TURN_LEFT, (d - 1) % 4),
                           (Action.TURN_RIGHT, (d + 1) % 4)):
            nxt = (x, y, nd)
            if nxt not in parents:
                parents[nxt] = (node, (int(action),))
                queue.append(nxt)
        dx, dy = DIR_TO_VEC[d]
        fx, fy = x + dx, y + dy
        p = _passable(state, fx, fy, unlock_colors)
        if p is not None:
            nxt = (fx, fy, d)
            if nxt not in parents:
                acts = (int(Action.TOGGLE), int(Action.FORWARD)) if p \
                    else (int(Action.FORWARD),)
                parents[nxt] = (node, acts)
                queue.append(nxt)
    return None


def _face(tx: int, ty: int):
    def goal(x, y, d):
        dx, dy = DIR_TO_VEC[d]
        return (x + dx, y + dy) == (tx, ty)
    return goal


def _find(state: GridState, object_id, predicate=None) -> Optional[Tuple[int, int]]:
    for x in range(state.width):
        for y in range(state.height):
            triple = state.cell(x, y)
            if triple[0] == object_id and (predicate is None or predicate(triple)):
                return (x, y)
    return None


def _drop_actions(state: GridState) -> List[int]:
    """Turn toward an adjacent empty cell and drop the carried object."""
    x, y = state.agent_pos
    for turns, nd in (((), state.agent_dir),
                      ((Action.TURN_RIGHT,), (state.agent_dir + 1) % 4),
                      ((Action.TURN_LEFT,), (state.agent_dir - 1) % 4),
                      ((Action.TURN_RIGHT, Action.TURN_RIGHT), (state.agent_dir + 2) % 4)):
        dx, dy = DIR_TO_VEC[nd]
        fx, fy = x + dx, y + dy
        if state.in_bounds(fx, fy) and state.cell(fx, fy)[0] == Object.EMPTY:
            return [int(a) for a in turns] + [int(Action.DROP)]
    return []


def solve(config: EnvConfig, episode_seed: int) -> Optional[List[int]]:
    """Plan an action sequence reaching success; None if planning fails."""
    state = reset(config, episode_seed)
    plan: List[int] = []
    success = False

    def run(actions: Optional[List[int]]) -> bool:
        nonlocal state, success
        if actions is None:
            return False
        for a in actions:
            plan.append(a)
            state, reward, done = step(state, a)
            if done:
                success = reward > 0
                return True
        return True

    if config.family == MULTIROOM:
        gx, gy = _find(state, Object.GOAL)
        if not run(_bfs(state, lambda x, y, d: (x, y) == (gx, gy))):
            return None
        return plan if success else None

    if config.family == KEYCORRIDOR:
        key = _find(state, Object.KEY)
        if key is None or not run(_bfs(state, _face(*key))):
            return None
        run([int(Action.PICKUP)])
        lock = _find(state, Object.DOOR, lambda t: t[2] == DoorState.LOCKED)
        key_color = state.carrying[1]
        if not run(_bfs(state, _face(*lock))):
            return None
        run([int(Action.TOGGLE)])
        run(_drop_actions(state))
        ball = _find(state, Object.BALL)
        if not run(_bfs(state, _face(*ball), unlock_colors=(key_color,))):
            return None
        run([int(Action.PICKUP)])
        return plan if success else None

    # ObstructedMaze-2Dlh
    ball = _find(state, Object.BALL)
    # pick the locked door on the ball's side of the center room
    doors = [(x, y) for x in range(state.width) for y in range(state.height)
             if state.cell(x, y)[0] == Object.DOOR]
    door = min(doors, key=lambda p: abs(p[0] - ball[0]))
    door_color = state.cell(*door)[1]
    box = _find(state, Object.BOX, lambda t: t[1] == door_color)
    if box is None or not run(_bfs(state, _face(*box))):
        return None
    run([int(Action.TOGGLE), int(Action.PICKUP)])
    if not run(_bfs(state, _face(*door))):
        return None
    run([int(Action.TOGGLE)])
    run(_drop_actions(state))
    if not run(_bfs(state, _face(*ball))):
        return None
    run([int(Action.PICKUP)])
    return plan if success else None


def mean_solver_path_length(config: EnvConfig, n_seeds: int = 100,
                            seed0: int = 0) -> float:
    total, solved = 0, 0
    for s in range(seed0, seed0 + n_seeds):
        plan = solve(config, s)
        if plan is not None:
            total += len(plan)
            solved += 1
    if solved == 0:
        raise RuntimeError("solver failed on every seed")
    return total / solved


def optimal_return_estimate(config: EnvConfig, n_seeds: int = 100) -> float:
    """Expected return of a near-optimal policy: the sparse-success reward
    evaluated at the scripted solver's mean path length."""
    l_star = mean_solver_path_length(config, n_seeds)
    return 1.0 - 0.9 * (l_star / config.max_steps)
