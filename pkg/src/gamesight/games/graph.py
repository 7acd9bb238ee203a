"""Graph traversal game: visit every node exactly once with auto-sliding moves.

A move picks a direction; the cursor advances node by node until the cell
ahead is a visited node, an obstacle, a non-node gap, or the grid edge.
Moves that cannot advance at all are rejected and not counted.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

from ..errors import LevelError, PreconditionError
from .core import DIRECTION_ORDER, Direction, EventDraft, GameId, GridPos, Status, in_bounds


@dataclass(frozen=True)
class GraphLevel:
    stage_id: str
    rows: int
    cols: int
    nodes: frozenset[GridPos]
    obstacles: frozenset[GridPos]
    start: GridPos
    time_limit_s: int | None = None

    def __post_init__(self):
        if self.rows <= 0 or self.cols <= 0:
            raise LevelError(f"{self.stage_id}: grid must be positive")
        if self.start not in self.nodes:
            raise LevelError(f"{self.stage_id}: start must be a node")
        if self.nodes & self.obstacles:
            raise LevelError(f"{self.stage_id}: nodes and obstacles overlap")
        for cell in self.nodes | self.obstacles:
            if not in_bounds(cell, self.rows, self.cols):
                raise LevelError(f"{self.stage_id}: cell {cell} out of bounds")


@dataclass(frozen=True)
class GraphState:
    level: GraphLevel
    visited: tuple[GridPos, ...]
    elapsed_ms: int = 0
    status: Status = Status.PLAYING
    over_time: bool = False

    @property
    def current(self) -> GridPos:
        return self.visited[-1]


def _slide(level: GraphLevel, visited_set: frozenset[GridPos], start: GridPos,
           direction: Direction) -> list[GridPos]:
    """Cells entered when auto-sliding from `start`; empty if the move cannot advance."""
    path: list[GridPos] = []
    pos = start
    while True:
        nxt = pos.step(direction)
        if (
            not in_bounds(nxt, level.rows, level.cols)
            or nxt not in level.nodes
            or nxt in level.obstacles
            or nxt in visited_set
        ):
            break
        path.append(nxt)
        pos = nxt
    return path


def _any_move_possible(level: GraphLevel, visited_set: frozenset[GridPos], current: GridPos) -> bool:
    return any(_slide(level, visited_set, current, d) for d in DIRECTION_ORDER)


def begin(level: GraphLevel) -> GraphState:
    state = GraphState(level=level, visited=(level.start,))
    return _with_outcome(state)


def _with_outcome(state: GraphState) -> GraphState:
    visited_set = frozenset(state.visited)
    if visited_set == state.level.nodes:
        return replace(state, status=Status.WON)
    if not _any_move_possible(state.level, visited_set, state.current):
        return replace(state, status=Status.STUCK)
    return state


@dataclass(frozen=True)
class ApplyResult:
    state: GraphState
    accepted: bool
    reason: str | None = None
    events: tuple[EventDraft, ...] = field(default=())


def move(state: GraphState, direction: Direction) -> ApplyResult:
    if state.status is not Status.PLAYING:
        raise PreconditionError(f"move on terminal state ({state.status.value})")
    visited_set = frozenset(state.visited)
    path = _slide(state.level, visited_set, state.current, direction)
    if not path:
        return ApplyResult(state, False, "zero_advance")

    new = replace(state, visited=state.visited + tuple(path))
    new = _with_outcome(new)
    events = [
        EventDraft(
            GameId.GRAPH,
            state.level.stage_id,
            "move_accepted",
            {
                "direction": direction.value,
                "advanced": len(path),
                "visited": len(new.visited),
            },
        )
    ]
    if new.status is Status.WON:
        events.append(
            EventDraft(GameId.GRAPH, state.level.stage_id, "win", {"visited": len(new.visited)})
        )
    elif new.status is Status.STUCK:
        events.append(
            EventDraft(
                GameId.GRAPH,
                state.level.stage_id,
                "lose",
                {"reason": "stuck", "visited": len(new.visited)},
            )
        )
    return ApplyResult(new, True, None, tuple(events))


def legal_directions(state: GraphState) -> list[Direction]:
    if state.status is not Status.PLAYING:
        return []
    visited_set = frozenset(state.visited)
    return [d for d in DIRECTION_ORDER if _slide(state.level, visited_set, state.current, d)]
