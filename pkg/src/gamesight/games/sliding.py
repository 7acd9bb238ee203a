"""Obstacle-rearrangement path puzzle (sliding blocks).

Blocks of four shapes slide along their permitted axis through free cells.
One move displaces one block by any number of cells in one direction.  The
stage is won when the target block covers the endpoint cell.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum

from ..errors import InputError, LevelError, PreconditionError
from .core import Direction, EventDraft, GameId, GridPos, Status, in_bounds


class BlockShape(str, Enum):
    CELL_1X1 = "cell_1x1"
    VERT_1X2 = "vert_1x2"
    HORIZ_2X1 = "horiz_2x1"
    SQUARE_2X2 = "square_2x2"

    @property
    def offsets(self) -> tuple[tuple[int, int], ...]:
        return _SHAPE_OFFSETS[self]


_SHAPE_OFFSETS = {
    BlockShape.CELL_1X1: ((0, 0),),
    BlockShape.VERT_1X2: ((0, 0), (1, 0)),
    BlockShape.HORIZ_2X1: ((0, 0), (0, 1)),
    BlockShape.SQUARE_2X2: ((0, 0), (0, 1), (1, 0), (1, 1)),
}


class MovementAxis(str, Enum):
    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"
    BOTH = "both"
    FIXED = "fixed"

    def allows(self, direction: Direction) -> bool:
        if self is MovementAxis.FIXED:
            return False
        if self is MovementAxis.BOTH:
            return True
        horizontal = direction in (Direction.LEFT, Direction.RIGHT)
        return horizontal == (self is MovementAxis.HORIZONTAL)


@dataclass(frozen=True)
class Block:
    id: str
    shape: BlockShape
    anchor: GridPos
    movement_axis: MovementAxis

    def cells(self, anchor: GridPos | None = None) -> frozenset[GridPos]:
        a = self.anchor if anchor is None else anchor
        return frozenset(GridPos(a.row + dr, a.col + dc) for dr, dc in self.shape.offsets)


@dataclass(frozen=True)
class SlidingPathLevel:
    stage_id: str
    rows: int
    cols: int
    blocks: tuple[Block, ...]
    target_block_id: str
    endpoint: GridPos
    time_limit_s: int | None = None
    move_limit: int | None = None

    def __post_init__(self):
        if self.rows <= 0 or self.cols <= 0:
            raise LevelError(f"{self.stage_id}: grid must be positive")
        ids = [b.id for b in self.blocks]
        if len(set(ids)) != len(ids):
            raise LevelError(f"{self.stage_id}: duplicate block ids")
        if sum(1 for b in self.blocks if b.id == self.target_block_id) != 1:
            raise LevelError(f"{self.stage_id}: exactly one target block required")
        if not in_bounds(GridPos(*self.endpoint), self.rows, self.cols):
            raise LevelError(f"{self.stage_id}: endpoint out of bounds")
        seen: set[GridPos] = set()
        for b in self.blocks:
            for cell in b.cells():
                if not in_bounds(cell, self.rows, self.cols):
                    raise LevelError(f"{self.stage_id}: block {b.id} out of bounds")
                if cell in seen:
                    raise LevelError(f"{self.stage_id}: blocks overlap at {cell}")
                seen.add(cell)

    def block(self, block_id: str) -> Block:
        for b in self.blocks:
            if b.id == block_id:
                return b
        raise InputError(f"unknown block {block_id!r}")


@dataclass(frozen=True)
class SlidingPathState:
    level: SlidingPathLevel
    anchors: dict[str, GridPos]
    moves_used: int = 0
    elapsed_ms: int = 0
    status: Status = Status.PLAYING
    over_time: bool = False

    def occupied(self, exclude: str | None = None) -> set[GridPos]:
        cells: set[GridPos] = set()
        for b in self.level.blocks:
            if b.id == exclude:
                continue
            cells |= b.cells(self.anchors[b.id])
        return cells


def begin(level: SlidingPathLevel) -> SlidingPathState:
    state = SlidingPathState(level=level, anchors={b.id: b.anchor for b in level.blocks})
    if is_solved(state):  # degenerate layouts may start on the endpoint
        state = replace(state, status=Status.WON)
    return state


def is_solved(state: SlidingPathState) -> bool:
    target = state.level.block(state.level.target_block_id)
    return GridPos(*state.level.endpoint) in target.cells(state.anchors[target.id])


@dataclass(frozen=True)
class ApplyResult:
    state: SlidingPathState
    accepted: bool
    reason: str | None = None
    events: tuple[EventDraft, ...] = field(default=())


def apply(state: SlidingPathState, block_id: str, direction: Direction, cells: int) -> ApplyResult:
    """Slide one block `cells` steps in `direction`; every traversed cell must be free."""
    if state.status is not Status.PLAYING:
        raise PreconditionError(f"move on terminal state ({state.status.value})")
    block = state.level.block(block_id)  # raises InputError on unknown id
    if cells <= 0:
        raise InputError(f"cells must be positive, got {cells}")
    if not block.movement_axis.allows(direction):
        return ApplyResult(state, False, "axis_forbidden")

    occupied = state.occupied(exclude=block_id)
    anchor = state.anchors[block_id]
    dr, dc = direction.delta
    for step in range(1, cells + 1):
        candidate = GridPos(anchor.row + dr * step, anchor.col + dc * step)
        for cell in block.cells(candidate):
            if not in_bounds(cell, state.level.rows, state.level.cols):
                return ApplyResult(state, False, "out_of_bounds")
            if cell in occupied:
                return ApplyResult(state, False, "blocked")

    final = GridPos(anchor.row + dr * cells, anchor.col + dc * cells)
    anchors = dict(state.anchors)
    anchors[block_id] = final
    new = replace(state, anchors=anchors, moves_used=state.moves_used + 1)
    events = [
        EventDraft(
            GameId.SLIDING_PATH,
            state.level.stage_id,
            "move_accepted",
            {
                "block": block_id,
                "direction": direction.value,
                "cells": cells,
                "moves_used": new.moves_used,
            },
        )
    ]
    if is_solved(new):
        new = replace(new, status=Status.WON)
        events.append(
            EventDraft(
                GameId.SLIDING_PATH,
                state.level.stage_id,
                "win",
                {"moves_used": new.moves_used},
            )
        )
    return ApplyResult(new, True, None, tuple(events))


def legal_moves(state: SlidingPathState) -> list[tuple[str, Direction, int]]:
    """All accepted (block, direction, distance) moves in deterministic order."""
    if state.status is not Status.PLAYING:
        return []
    moves = []
    for b in state.level.blocks:
        occupied = state.occupied(exclude=b.id)
        anchor = state.anchors[b.id]
        for direction in (Direction.UP, Direction.DOWN, Direction.LEFT, Direction.RIGHT):
            if not b.movement_axis.allows(direction):
                continue
            dr, dc = direction.delta
            dist = 0
            while True:
                dist += 1
                candidate = GridPos(anchor.row + dr * dist, anchor.col + dc * dist)
                cand_cells = b.cells(candidate)
                if any(not in_bounds(c, state.level.rows, state.level.cols) for c in cand_cells):
                    break
                if cand_cells & occupied:
                    break
                moves.append((b.id, direction, dist))
    return moves
