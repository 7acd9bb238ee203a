"""Cross-cutting session controls: pause, surrender, skip tokens, tutorials.

Each control transition produces exactly one telemetry draft.  Legality rules:
resume only follows pause; skipping needs a token and a game that permits it
(the memory game never does); the surrender prompt is gated on time-limit
expiry for puzzles and on three failed attempts for the shooter.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from ..errors import PreconditionError, RuleError, WalletError
from .core import EventDraft, GameId, Status

INITIAL_SKIP_TOKENS = 3

# Games whose stages a skip token may bypass.
SKIPPABLE_GAMES = frozenset({GameId.GROUP_SWAP, GameId.SLIDING_PATH, GameId.GRAPH})

SHOOTER_SURRENDER_FAILURES = 3


class ControlKind(str, Enum):
    PAUSE = "pause"
    RESUME = "resume"
    RESTART = "restart"
    SURRENDER = "surrender"
    SKIP = "skip"
    TUTORIAL_VIEW = "tutorial_view"
    TUTORIAL_SKIP = "tutorial_skip"
    MENU_NAV = "menu_nav"
    SIDE_CHALLENGE_ATTEMPT = "side_challenge_attempt"
    SIDE_CHALLENGE_SOLVED = "side_challenge_solved"


@dataclass(frozen=True)
class SessionControlAction:
    kind: ControlKind
    game_id: GameId
    stage_id: str
    timestamp_ms: int
    payload: dict = field(default_factory=dict)


@dataclass
class SkipWallet:
    tokens: int = INITIAL_SKIP_TOKENS
    earned_total: int = 0
    spent_total: int = 0

    def earn(self, n: int = 1) -> None:
        self.tokens += n
        self.earned_total += n

    def spend(self) -> None:
        if self.tokens <= 0:
            raise WalletError("no skip tokens left")
        self.tokens -= 1
        self.spent_total += 1


@dataclass
class StageControl:
    """Control-plane state of one stage: pause clock, failures, terminal status."""

    game_id: GameId
    stage_id: str
    started_ms: int = 0
    status: Status = Status.PLAYING
    paused: bool = False
    active_ms: int = 0
    _segment_start_ms: int = 0
    failures: int = 0
    time_expired: bool = False
    over_time: bool = False

    def __post_init__(self):
        self._segment_start_ms = self.started_ms

    def active_time(self, now_ms: int) -> int:
        """Unpaused gameplay milliseconds up to `now_ms`."""
        if self.paused:
            return self.active_ms
        return self.active_ms + (now_ms - self._segment_start_ms)

    def note_failure(self) -> None:
        self.failures += 1

    def note_time_expired(self, now_ms: int) -> EventDraft:
        """Stage time limit hit: prompt surrender/continue; continuing is over-time."""
        self.time_expired = True
        self.over_time = True
        return EventDraft(self.game_id, self.stage_id, "time_expired",
                          {"active_ms": self.active_time(now_ms)})

    def surrender_offered(self) -> bool:
        if self.game_id is GameId.SHOOTER:
            return self.failures >= SHOOTER_SURRENDER_FAILURES
        return self.time_expired


def apply_control(stage: StageControl, action: SessionControlAction,
                  wallet: SkipWallet) -> EventDraft:
    """Apply one control action; returns the single event the transition records."""
    kind = action.kind
    ts = action.timestamp_ms
    payload = dict(action.payload)

    if kind is ControlKind.PAUSE:
        if stage.paused:
            raise PreconditionError("pause while already paused")
        if stage.status is not Status.PLAYING:
            raise PreconditionError("pause on terminal stage")
        stage.active_ms += ts - stage._segment_start_ms
        stage.paused = True
    elif kind is ControlKind.RESUME:
        if not stage.paused:
            raise PreconditionError("resume without a preceding pause")
        stage.paused = False
        stage._segment_start_ms = ts
    elif kind is ControlKind.RESTART:
        if stage.status is not Status.PLAYING:
            raise PreconditionError("restart on terminal stage")
        payload.setdefault("attempt_failures", stage.failures)
    elif kind is ControlKind.SURRENDER:
        if stage.status is not Status.PLAYING:
            raise PreconditionError("surrender on terminal stage")
        if not stage.surrender_offered():
            raise PreconditionError("surrender not offered yet for this stage")
        stage.status = Status.SURRENDERED
        payload.setdefault("failures", stage.failures)
    elif kind is ControlKind.SKIP:
        if action.game_id not in SKIPPABLE_GAMES:
            raise RuleError(f"skipping is not permitted in {action.game_id.value}")
        if stage.status is not Status.PLAYING:
            raise PreconditionError("skip on terminal stage")
        wallet.spend()  # raises WalletError when empty
        stage.status = Status.SKIPPED
        payload.setdefault("wallet_after", wallet.tokens)
    elif kind is ControlKind.SIDE_CHALLENGE_SOLVED:
        wallet.earn(1)
        payload.setdefault("wallet_after", wallet.tokens)
    elif kind in (ControlKind.TUTORIAL_VIEW, ControlKind.TUTORIAL_SKIP,
                  ControlKind.MENU_NAV, ControlKind.SIDE_CHALLENGE_ATTEMPT):
        pass
    else:  # pragma: no cover - exhaustive enum
        raise PreconditionError(f"unknown control {kind}")

    return EventDraft(action.game_id, action.stage_id, kind.value, payload)
