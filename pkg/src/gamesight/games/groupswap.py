"""Group-swapping puzzle: exchange the board cells of two piece groups.

Pieces move one cell at a time (4-neighborhood) into empty in-bounds cells.
Invalid moves are rejected without mutating state and without counting.
The puzzle is solved when group A occupies exactly the cells group B started
on and vice versa (set equality; pieces within a group are interchangeable).
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

from ..errors import InputError, LevelError, PreconditionError
from .core import EventDraft, GameId, GridPos, Status, in_bounds


@dataclass(frozen=True)
class GroupSwapLevel:
    stage_id: str
    rows: int
    cols: int
    group_a_cells: frozenset[GridPos]
    group_b_cells: frozenset[GridPos]
    move_limit: int
    time_limit_s: int

    def __post_init__(self):
        if self.rows <= 0 or self.cols <= 0:
            raise LevelError(f"{self.stage_id}: grid must be positive, got {self.rows}x{self.cols}")
        if self.move_limit <= 0 or self.time_limit_s <= 0:
            raise LevelError(f"{self.stage_id}: move/time limits must be positive")
        if self.group_a_cells & self.group_b_cells:
            raise LevelError(f"{self.stage_id}: groups overlap")
        if len(self.group_a_cells) != len(self.group_b_cells):
            raise LevelError(f"{self.stage_id}: groups must have equal size")
        if not self.group_a_cells:
            raise LevelError(f"{self.stage_id}: groups must be non-empty")
        for cell in self.group_a_cells | self.group_b_cells:
            if not in_bounds(cell, self.rows, self.cols):
                raise LevelError(f"{self.stage_id}: cell {cell} out of bounds")


def piece_ids(level: GroupSwapLevel) -> list[str]:
    """Stable piece naming: a0..aN sorted by start cell, then b0..bN."""
    ids = [f"a{i}" for i in range(len(level.group_a_cells))]
    ids += [f"b{i}" for i in range(len(level.group_b_cells))]
    return ids


@dataclass(frozen=True)
class GroupSwapState:
    level: GroupSwapLevel
    piece_positions: dict[str, GridPos]
    moves_used: int = 0
    elapsed_ms: int = 0
    status: Status = Status.PLAYING
    over_time: bool = False

    def occupied(self) -> frozenset[GridPos]:
        return frozenset(self.piece_positions.values())

    def group_cells(self, group: str) -> frozenset[GridPos]:
        return frozenset(p for pid, p in self.piece_positions.items() if pid.startswith(group))


def begin(level: GroupSwapLevel) -> GroupSwapState:
    positions: dict[str, GridPos] = {}
    for i, cell in enumerate(sorted(level.group_a_cells)):
        positions[f"a{i}"] = cell
    for i, cell in enumerate(sorted(level.group_b_cells)):
        positions[f"b{i}"] = cell
    return GroupSwapState(level=level, piece_positions=positions)


def is_solved(state: GroupSwapState) -> bool:
    return (
        state.group_cells("a") == state.level.group_b_cells
        and state.group_cells("b") == state.level.group_a_cells
    )


@dataclass(frozen=True)
class ApplyResult:
    state: GroupSwapState
    accepted: bool
    reason: str | None = None
    events: tuple[EventDraft, ...] = field(default=())


def apply(state: GroupSwapState, piece_id: str, target: GridPos) -> ApplyResult:
    """One keyboard step of one piece. Rejections leave the state untouched."""
    if state.status is not Status.PLAYING:
        raise PreconditionError(f"move on terminal state ({state.status.value})")
    if piece_id not in state.piece_positions:
        raise InputError(f"unknown piece {piece_id!r}")
    target = GridPos(*target)
    source = state.piece_positions[piece_id]
    if not in_bounds(target, state.level.rows, state.level.cols):
        return ApplyResult(state, False, "out_of_bounds")
    if abs(target.row - source.row) + abs(target.col - source.col) != 1:
        return ApplyResult(state, False, "not_adjacent")
    if target in state.occupied():
        return ApplyResult(state, False, "occupied")
    if state.moves_used >= state.level.move_limit:
        return ApplyResult(state, False, "move_limit_reached")

    positions = dict(state.piece_positions)
    positions[piece_id] = target
    new = replace(state, piece_positions=positions, moves_used=state.moves_used + 1)
    events = [
        EventDraft(
            GameId.GROUP_SWAP,
            state.level.stage_id,
            "move_accepted",
            {
                "piece": piece_id,
                "from": f"{source.row}:{source.col}",
                "to": f"{target.row}:{target.col}",
                "moves_used": new.moves_used,
            },
        )
    ]
    if is_solved(new):
        new = replace(new, status=Status.WON)
        events.append(
            EventDraft(
                GameId.GROUP_SWAP,
                state.level.stage_id,
                "win",
                {"moves_used": new.moves_used},
            )
        )
    return ApplyResult(new, True, None, tuple(events))


def legal_moves(state: GroupSwapState) -> list[tuple[str, GridPos]]:
    """All accepted (piece, target) pairs, in deterministic lexicographic order."""
    if state.status is not Status.PLAYING or state.moves_used >= state.level.move_limit:
        return []
    occ = state.occupied()
    moves = []
    for piece_id in sorted(state.piece_positions):
        src = state.piece_positions[piece_id]
        for dr, dc in ((-1, 0), (1, 0), (0, -1), (0, 1)):
            tgt = GridPos(src.row + dr, src.col + dc)
            if in_bounds(tgt, state.level.rows, state.level.cols) and tgt not in occ:
                moves.append((piece_id, tgt))
    return moves
