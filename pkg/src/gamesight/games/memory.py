"""Memory matching game: number pairs are exposed briefly, then recalled.

The layout is a seeded uniform shuffle of ``1..pair_count`` duplicated.  A
guess names two distinct unmatched slots; it is correct iff their numbers
match.  The stage is won when every slot is matched.  No skip option exists
for this game (enforced by the session layer).
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np

from ..errors import InputError, LevelError, PreconditionError
from .core import EventDraft, GameId, Status

DEFAULT_EXPOSURE_MS = 5000


class MemoryPhase(str, Enum):
    EXPOSURE = "exposure"
    RECALL = "recall"


@dataclass(frozen=True)
class MemoryLevel:
    stage_id: str
    pair_count: int
    exposure_ms: int = DEFAULT_EXPOSURE_MS

    def __post_init__(self):
        if self.pair_count <= 0:
            raise LevelError(f"{self.stage_id}: pair_count must be positive")
        if self.exposure_ms <= 0:
            raise LevelError(f"{self.stage_id}: exposure_ms must be positive")

    @property
    def card_count(self) -> int:
        return 2 * self.pair_count


@dataclass(frozen=True)
class GuessResult:
    state: "MemoryState"
    correct: bool
    events: tuple[EventDraft, ...] = field(default=())


@dataclass(frozen=True)
class MemoryState:
    level: MemoryLevel
    layout: tuple[int, ...]
    revealed: frozenset[int] = frozenset()
    phase: MemoryPhase = MemoryPhase.EXPOSURE
    guesses_total: int = 0
    guesses_correct: int = 0
    guesses_incorrect: int = 0
    elapsed_ms: int = 0
    status: Status = Status.PLAYING


def begin(level: MemoryLevel, seed: int) -> MemoryState:
    rng = np.random.default_rng(np.random.SeedSequence([int(seed)]))
    numbers = np.repeat(np.arange(1, level.pair_count + 1), 2)
    rng.shuffle(numbers)
    return MemoryState(level=level, layout=tuple(int(n) for n in numbers))


def reveal_elapsed(state: MemoryState) -> MemoryState:
    """Exposure window over: cards flip face-down and guessing opens."""
    if state.phase is not MemoryPhase.EXPOSURE:
        raise PreconditionError("exposure already elapsed")
    return replace(state, phase=MemoryPhase.RECALL, elapsed_ms=state.level.exposure_ms)


def guess(state: MemoryState, slot_a: int, slot_b: int) -> GuessResult:
    if state.status is not Status.PLAYING:
        raise PreconditionError(f"guess on terminal state ({state.status.value})")
    if state.phase is not MemoryPhase.RECALL:
        raise PreconditionError("guess during exposure phase")
    n = state.level.card_count
    if not (0 <= slot_a < n and 0 <= slot_b < n):
        raise InputError(f"slot out of range: {slot_a}, {slot_b}")
    if slot_a == slot_b:
        raise InputError("guess must name two distinct slots")
    if slot_a in state.revealed or slot_b in state.revealed:
        raise InputError("guess on already-matched slot")

    correct = state.layout[slot_a] == state.layout[slot_b]
    revealed = state.revealed | {slot_a, slot_b} if correct else state.revealed
    new = replace(
        state,
        revealed=revealed,
        guesses_total=state.guesses_total + 1,
        guesses_correct=state.guesses_correct + (1 if correct else 0),
        guesses_incorrect=state.guesses_incorrect + (0 if correct else 1),
    )
    events = [
        EventDraft(
            GameId.MEMORY,
            state.level.stage_id,
            "guess",
            {
                "slot_a": slot_a,
                "slot_b": slot_b,
                "correct": correct,
                "guesses_total": new.guesses_total,
            },
        )
    ]
    if len(revealed) == n:
        new = replace(new, status=Status.WON)
        events.append(
            EventDraft(
                GameId.MEMORY,
                state.level.stage_id,
                "win",
                {"guesses_total": new.guesses_total},
            )
        )
    return GuessResult(new, correct, tuple(events))
