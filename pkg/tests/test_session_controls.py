import pytest

from gamesight.errors import PreconditionError, RuleError, WalletError
from gamesight.games.core import GameId, Status
from gamesight.games.session import (
    ControlKind,
    SessionControlAction,
    SkipWallet,
    StageControl,
    apply_control,
)


def act(kind, game=GameId.GROUP_SWAP, stage="tutorial", ts=0, payload=None):
    return SessionControlAction(kind=kind, game_id=game, stage_id=stage,
                                timestamp_ms=ts, payload=payload or {})


def test_wallet_starts_with_three_tokens_and_tracks_earnings():
    wallet = SkipWallet()
    assert wallet.tokens == 3
    wallet.earn()
    assert wallet.tokens == 4 and wallet.earned_total == 1
    for _ in range(4):
        wallet.spend()
    assert wallet.tokens == 0
    assert wallet.tokens == 3 + wallet.earned_total - wallet.spent_total
    with pytest.raises(WalletError):
        wallet.spend()


def test_skip_decrements_wallet_and_marks_stage_skipped():
    wallet = SkipWallet()
    stage = StageControl(GameId.GROUP_SWAP, "hard")
    event = apply_control(stage, act(ControlKind.SKIP, stage="hard"), wallet)
    assert wallet.tokens == 2
    assert stage.status is Status.SKIPPED
    assert event.event_type == "skip"
    assert event.payload["wallet_after"] == 2


def test_skip_forbidden_in_memory_game():
    wallet = SkipWallet()
    stage = StageControl(GameId.MEMORY, "1")
    with pytest.raises(RuleError):
        apply_control(stage, act(ControlKind.SKIP, game=GameId.MEMORY, stage="1"), wallet)
    assert wallet.tokens == 3


def test_skip_with_empty_wallet_rejected():
    wallet = SkipWallet(tokens=0)
    stage = StageControl(GameId.GRAPH, "2")
    with pytest.raises(WalletError):
        apply_control(stage, act(ControlKind.SKIP, game=GameId.GRAPH, stage="2"), wallet)
    assert stage.status is Status.PLAYING


def test_side_challenge_solved_earns_token():
    wallet = SkipWallet(tokens=2, earned_total=0, spent_total=1)
    stage = StageControl(GameId.META, "")
    event = apply_control(stage, act(ControlKind.SIDE_CHALLENGE_SOLVED, game=GameId.META,
                                     stage=""), wallet)
    assert wallet.tokens == 3
    assert event.payload["wallet_after"] == 3


def test_pause_resume_excludes_paused_interval_from_active_time():
    wallet = SkipWallet()
    stage = StageControl(GameId.SLIDING_PATH, "2", started_ms=1_000)
    events = []
    events.append(apply_control(stage, act(ControlKind.PAUSE, game=GameId.SLIDING_PATH,
                                           stage="2", ts=11_000), wallet))
    events.append(apply_control(stage, act(ControlKind.RESUME, game=GameId.SLIDING_PATH,
                                           stage="2", ts=31_000), wallet))
    assert [e.event_type for e in events] == ["pause", "resume"]
    # 10s before the pause plus 5s after the resume; the 20s pause is excluded
    assert stage.active_time(36_000) == 15_000


def test_resume_without_pause_and_double_pause_rejected():
    wallet = SkipWallet()
    stage = StageControl(GameId.GROUP_SWAP, "medium")
    with pytest.raises(PreconditionError):
        apply_control(stage, act(ControlKind.RESUME, stage="medium"), wallet)
    apply_control(stage, act(ControlKind.PAUSE, stage="medium", ts=5), wallet)
    with pytest.raises(PreconditionError):
        apply_control(stage, act(ControlKind.PAUSE, stage="medium", ts=6), wallet)


def test_surrender_gating_puzzle_requires_time_expiry():
    wallet = SkipWallet()
    stage = StageControl(GameId.GROUP_SWAP, "hard")
    with pytest.raises(PreconditionError):
        apply_control(stage, act(ControlKind.SURRENDER, stage="hard"), wallet)
    event = stage.note_time_expired(90_000)
    assert event.event_type == "time_expired"
    assert stage.over_time
    apply_control(stage, act(ControlKind.SURRENDER, stage="hard", ts=91_000), wallet)
    assert stage.status is Status.SURRENDERED


def test_surrender_gating_shooter_requires_three_failures():
    wallet = SkipWallet()
    stage = StageControl(GameId.SHOOTER, "1")
    stage.note_failure()
    stage.note_failure()
    with pytest.raises(PreconditionError):
        apply_control(stage, act(ControlKind.SURRENDER, game=GameId.SHOOTER, stage="1"),
                      wallet)
    stage.note_failure()
    apply_control(stage, act(ControlKind.SURRENDER, game=GameId.SHOOTER, stage="1"), wallet)
    assert stage.status is Status.SURRENDERED


def test_every_control_emits_exactly_one_event():
    wallet = SkipWallet()
    stage = StageControl(GameId.GRAPH, "3")
    for kind in (ControlKind.TUTORIAL_VIEW, ControlKind.MENU_NAV, ControlKind.RESTART):
        event = apply_control(stage, act(kind, game=GameId.GRAPH, stage="3"), wallet)
        assert event.event_type == kind.value
