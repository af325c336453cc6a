"""Object/color/state id tables and action/direction constants.

The integer ids follow the common MiniGrid-style convention so encoded
tensors are stable across runs and readable by anyone familiar with the
benchmark.
"""

from enum import IntEnum


class Object(IntEnum):
    UNSEEN = 0
    EMPTY = 1
    WALL = 2
    FLOOR = 3
    DOOR = 4
    KEY = 5
    BALL = 6
    BOX = 7
    GOAL = 8
    LAVA = 9
    AGENT = 10


class Color(IntEnum):
    RED = 0
    GREEN = 1
    BLUE = 2
    PURPLE = 3
    YELLOW = 4
    GREY = 5


class DoorState(IntEnum):
    OPEN = 0
    CLOSED = 1
    LOCKED = 2


class Direction(IntEnum):
    EAST = 0
    SOUTH = 1
    WEST = 2
    NORTH = 3


class Action(IntEnum):
    TURN_LEFT = 0
    TURN_RIGHT = 1
    FORWARD = 2
    PICKUP = 3
    DROP = 4
    TOGGLE = 5
    NOOP = 6


# (dx, dy) per direction; y grows southward
DIR_TO_VEC = {
    Direction.EAST: (1, 0),
    Direction.SOUTH: (0, 1),
    Direction.WEST: (-1, 0),
    Direction.NORTH: (0, -1),
}

COLOR_RGB = {
    Color.RED: (255, 0, 0),
    Color.GREEN: (0, 255, 0),
    Color.BLUE: (0, 0, 255),
    Color.PURPLE: (112, 39, 195),
    Color.YELLOW: (255, 255, 0),
    Color.GREY: (100, 100, 100),
}

# Objects the agent may pick up / that block movement when on the floor
CARRYABLE = {Object.KEY, Object.BALL, Object.BOX}

N_ACTIONS = 7
VIEW_SIZE = 7
