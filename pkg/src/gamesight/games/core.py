"""Shared primitives for the five game engines.

Every engine in this package is a pure state machine: operations take a state
and return a new state plus the telemetry drafts the transition produced.
Rejected actions return the input state unchanged and emit nothing.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple


class GridPos(NamedTuple):
    row: int
    col: int

    def step(self, direction: "Direction") -> "GridPos":
        dr, dc = direction.delta
        return GridPos(self.row + dr, self.col + dc)


class Direction(str, Enum):
    UP = "up"
    DOWN = "down"
    LEFT = "left"
    RIGHT = "right"

    @property
    def delta(self) -> tuple[int, int]:
        return _DELTAS[self]


_DELTAS = {
    Direction.UP: (-1, 0),
    Direction.DOWN: (1, 0),
    Direction.LEFT: (0, -1),
    Direction.RIGHT: (0, 1),
}

# Fixed enumeration order; solvers and fuzzers rely on it for determinism.
DIRECTION_ORDER = (Direction.UP, Direction.DOWN, Direction.LEFT, Direction.RIGHT)


class GameId(str, Enum):
    GROUP_SWAP = "group_swap"
    SLIDING_PATH = "sliding_path"
    MEMORY = "memory"
    SHOOTER = "shooter"
    GRAPH = "graph"
    META = "meta"


class Status(str, Enum):
    PLAYING = "playing"
    WON = "won"
    TIME_EXPIRED = "time_expired"
    SURRENDERED = "surrendered"
    SKIPPED = "skipped"
    STUCK = "stuck"
    DEAD = "dead"


TERMINAL_STATUSES = frozenset(
    {Status.WON, Status.SURRENDERED, Status.SKIPPED, Status.STUCK, Status.DEAD}
)


@dataclass(frozen=True)
class EventDraft:
    """A telemetry event before the session layer assigns seq and timestamp."""

    game_id: GameId
    stage_id: str
    event_type: str
    payload: dict


def in_bounds(pos: GridPos, rows: int, cols: int) -> bool:
    return 0 <= pos.row < rows and 0 <= pos.col < cols
