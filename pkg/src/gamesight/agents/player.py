"""Trait-parameterized synthetic player driving the real game engines.

Every stochastic choice draws from a substream keyed by (participant seed,
purpose, game, stage, attempt/decision index).  Keyed streams make two
properties exact rather than approximate:

* the same (profile, seed) pair replays to an identical session log, and
* per-attempt gameplay outcomes are independent of the persistence trait,
  while give-up thresholds fall monotonically as persistence rises, so a
  participant's surrender count can never increase with persistence.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import LevelError
from ..games import graph as gr
from ..games import groupswap as gs
from ..games import memory as mem
from ..games import shooter as sh
from ..games import sliding as sl
from ..games.core import EventDraft, GameId, Status
from ..games.levels import LevelPack
from ..games.session import (
    ControlKind,
    SessionControlAction,
    SkipWallet,
    StageControl,
    apply_control,
)
from ..solvers import (
    groupswap_distance_map,
    sliding_distance_map,
    sliding_key_of_anchors,
    solve_graph,
)
from ..telemetry.events import GameEvent, SessionLog
from .config import DEFAULT_BEHAVIOR, BehaviorConfig, clip01
from .traits import TraitProfile

_MASK64 = (1 << 64) - 1

# purpose codes for keyed substreams
_P_TUTORIAL = 1
_P_MOVES = 2
_P_GIVEUP = 3
_P_PAUSE = 4
_P_MENU = 5
_P_SIDE = 6
_P_SHOOTER_ENV = 7
_P_SHOOTER_POLICY = 8
_P_MEMORY_LAYOUT = 9
_P_THINK = 10
_P_DIFFICULTY = 11
_P_SKIPPREF = 12

_GAME_CODE = {GameId.GROUP_SWAP: 1, GameId.SLIDING_PATH: 2, GameId.MEMORY: 3,
              GameId.SHOOTER: 4, GameId.GRAPH: 5, GameId.META: 6}

_MENU_TARGETS = ("stats", "help", "settings")

_dist_cache: dict = {}


def _cached_groupswap_dist(level):
    if level not in _dist_cache:
        _dist_cache[level] = groupswap_distance_map(level)
    return _dist_cache[level]


def _cached_sliding_dist(level):
    if level not in _dist_cache:
        _dist_cache[level] = sliding_distance_map(level)
    return _dist_cache[level]


@dataclass
class StageOutcome:
    game_id: GameId
    stage_id: str
    status: Status
    attempts: int


class ParticipantSimulator:
    def __init__(self, profile: TraitProfile, pack: LevelPack, seed: int,
                 config: BehaviorConfig = DEFAULT_BEHAVIOR, session_id: str = "p0000",
                 created_at: int = 0):
        self.p = profile
        self.pack = pack
        self.seed = int(seed) & _MASK64
        self.cfg = config
        self.clock = 0
        self.wallet = SkipWallet()
        self.outcomes: list[StageOutcome] = []
        difficulty = self._choose_difficulty()
        self.log = SessionLog(session_id=session_id, created_at=created_at,
                              difficulty=difficulty)

    # -- plumbing ------------------------------------------------------------

    def stream(self, purpose: int, *keys: int) -> np.random.Generator:
        entropy = [self.seed, int(purpose), *[int(k) for k in keys]]
        return np.random.default_rng(np.random.SeedSequence(entropy))

    def emit(self, draft: EventDraft, dt_ms: int = 0) -> None:
        self.clock += max(0, int(dt_ms))
        event = GameEvent(
            session_id=self.log.session_id,
            seq=len(self.log.events),
            timestamp_ms=self.clock,
            game_id=draft.game_id,
            stage_id=draft.stage_id,
            event_type=draft.event_type,
            payload=draft.payload,
        )
        self.log.append(event)

    def control(self, stage: StageControl, kind: ControlKind, payload: dict | None = None,
                dt_ms: int = 0) -> None:
        self.clock += max(0, int(dt_ms))
        action = SessionControlAction(kind=kind, game_id=stage.game_id,
                                      stage_id=stage.stage_id, timestamp_ms=self.clock,
                                      payload=payload or {})
        self.emit(apply_control(stage, action, self.wallet))

    def _choose_difficulty(self) -> str:
        drive = (self.p.thinking + self.p.persistence) / 2
        rng = self.stream(_P_DIFFICULTY)
        u = rng.random()
        p_hard = clip01(0.10 + 0.55 * drive)
        p_easy = clip01(0.45 - 0.45 * drive)
        if u < p_hard:
            return "hard"
        if u > 1.0 - p_easy:
            return "easy"
        return "normal"

    def _think_ms(self, rng: np.random.Generator) -> int:
        slow = 1.5 - 0.8 * self.p.time_management
        base = self.cfg.move_think_ms * slow
        return int(base + rng.integers(0, self.cfg.think_jitter_ms + 1))

    def _error_rate(self) -> float:
        return clip01(self.cfg.puzzle_error_floor
                      + self.cfg.puzzle_error_scale * (1.0 - self.p.thinking))

    # -- cross-cutting stage scaffolding --------------------------------------

    def _tutorial(self, stage: StageControl, game_code: int, stage_idx: int) -> None:
        rng = self.stream(_P_TUTORIAL, game_code, stage_idx)
        engagement = 0.35 * self.p.information_seeking + 0.65 * self.p.help_seeking
        p_view = clip01(self.cfg.tutorial_view_floor + self.cfg.tutorial_view_scale * engagement)
        if rng.random() < p_view:
            self.control(stage, ControlKind.TUTORIAL_VIEW, dt_ms=int(rng.integers(3000, 8000)))
        else:
            self.control(stage, ControlKind.TUTORIAL_SKIP, dt_ms=int(rng.integers(500, 1500)))

    def _maybe_pause(self, stage: StageControl, game_code: int, stage_idx: int) -> None:
        rng = self.stream(_P_PAUSE, game_code, stage_idx)
        p_pause = clip01(self.cfg.pause_rate * (1.0 - self.p.time_management))
        if rng.random() < p_pause:
            self.control(stage, ControlKind.PAUSE)
            dt = int(rng.integers(self.cfg.pause_min_ms, self.cfg.pause_max_ms + 1))
            self.control(stage, ControlKind.RESUME, dt_ms=dt)

    def _giveup(self, stage: StageControl, game_code: int, stage_idx: int,
                decision_idx: int, allow_skip: bool) -> str:
        """'continue', 'skip' or 'surrender'.  Threshold falls with persistence."""
        threshold = min(1.0, self.cfg.giveup_base * (1.0 - self.p.persistence)
                        + self.cfg.giveup_escalation * decision_idx)
        u = self.stream(_P_GIVEUP, game_code, stage_idx, decision_idx).random()
        if u >= threshold:
            return "continue"
        if allow_skip and self.wallet.tokens > 0:
            # one keyed coin per stage decides skip-vs-surrender preference, so a
            # higher-persistence replay (which reaches fewer give-up points with
            # at least as many tokens) can never surrender where this run skipped
            prefer_skip = self.stream(_P_SKIPPREF, game_code,
                                      stage_idx).random() < self.cfg.skip_preference
            if prefer_skip:
                self.control(stage, ControlKind.SKIP, dt_ms=800)
                return "skip"
        self.control(stage, ControlKind.SURRENDER, dt_ms=800)
        return "surrender"

    def _menu(self, target: str, dt_ms: int = 1200) -> None:
        self.emit(EventDraft(GameId.META, "", "menu_nav", {"target": target}), dt_ms=dt_ms)

    def _between_stages(self, opportunity_idx: int) -> None:
        """Menu waypoint: optional browsing plus one side-challenge opportunity."""
        self._menu("stage_select")
        rng = self.stream(_P_MENU, opportunity_idx)
        rate = self.cfg.menu_extra_rate * self.p.information_seeking \
            + self.cfg.menu_help_rate * self.p.help_seeking
        extra = int(rng.poisson(rate))
        for i in range(extra):
            self._menu(_MENU_TARGETS[i % len(_MENU_TARGETS)],
                       dt_ms=int(rng.integers(800, 2500)))
        side_rng = self.stream(_P_SIDE, opportunity_idx)
        logit = (self.cfg.side_logit_persistence * self.p.persistence
                 + self.cfg.side_logit_thinking * self.p.thinking
                 + self.cfg.side_logit_bias)
        p_attempt = 1.0 / (1.0 + math.exp(-logit))
        if side_rng.random() >= p_attempt or not self.pack.side_challenges:
            return
        challenge = self.pack.side_challenges[opportunity_idx % len(self.pack.side_challenges)]
        self._menu("side_challenges", dt_ms=int(side_rng.integers(800, 2000)))
        p_solve = clip01(self.cfg.side_solve_floor + self.cfg.side_solve_scale * self.p.thinking)
        correct = bool(side_rng.random() < p_solve)
        self.emit(EventDraft(GameId.META, "", "side_challenge_attempt",
                             {"challenge": challenge.id, "correct": correct}),
                  dt_ms=int(side_rng.integers(8000, 30000)))
        if correct:
            meta_stage = StageControl(GameId.META, "")
            self.control(meta_stage, ControlKind.SIDE_CHALLENGE_SOLVED,
                         {"challenge": challenge.id}, dt_ms=500)

    # -- puzzle stages (group swap / sliding path) ----------------------------

    def _play_puzzle(self, game_id: GameId, level, stage_idx: int, begin, legal_moves,
                     apply_move, state_key, dist, time_limit_s: int,
                     move_limit: int | None) -> StageOutcome:
        code = _GAME_CODE[game_id]
        stage = StageControl(game_id, level.stage_id, started_ms=self.clock)
        self._tutorial(stage, code, stage_idx)
        pause_pending = True
        error_rate = self._error_rate()
        deadline_ms = time_limit_s * 1000
        extended_ms = int(deadline_ms * (1.0 + self.cfg.overtime_grace_factor))
        decision_idx = 0
        attempt = 0

        while True:
            attempt += 1
            state = begin(level)
            if state_key(state) not in dist:
                raise LevelError(f"{game_id.value}/{level.stage_id}: unsolvable from start")
            mv_rng = self.stream(_P_MOVES, code, stage_idx, attempt)
            think_rng = self.stream(_P_THINK, code, stage_idx, attempt)

            while state.status is Status.PLAYING:
                active = stage.active_time(self.clock)
                if not stage.time_expired and active >= deadline_ms:
                    self.emit(stage.note_time_expired(self.clock))
                    verdict = self._giveup(stage, code, stage_idx, decision_idx, allow_skip=True)
                    decision_idx += 1
                    if verdict != "continue":
                        return self._finish(stage, attempt)
                if stage.time_expired and active >= extended_ms:
                    break  # overtime budget gone: failed attempt
                moves = legal_moves(state)
                if not moves or (move_limit is not None and state.moves_used >= move_limit):
                    break  # dead end or out of moves: failed attempt
                key = state_key(state)
                chosen = None
                if mv_rng.random() >= error_rate and key in dist:
                    want = dist[key] - 1
                    for move in moves:
                        nxt, _, _ = apply_move(state, move, dry=True)
                        if dist.get(state_key(nxt), -2) == want:
                            chosen = move
                            break
                if chosen is None:
                    chosen = moves[int(mv_rng.integers(0, len(moves)))]
                state, accepted, events = apply_move(state, chosen, dry=False)
                dt = self._think_ms(think_rng)
                for ev in events:
                    self.emit(ev, dt_ms=dt)
                    dt = 0
                if pause_pending:
                    pause_pending = False
                    self._maybe_pause(stage, code, stage_idx)

            if state.status is Status.WON:
                stage.status = Status.WON
                return self._finish(stage, attempt)

            stage.note_failure()
            if stage.time_expired:
                verdict = self._giveup(stage, code, stage_idx, decision_idx, allow_skip=True)
                decision_idx += 1
                if verdict != "continue":
                    return self._finish(stage, attempt)
            if attempt >= self.cfg.max_attempts:
                stage.time_expired = True  # pragma: no cover - safety valve
                self.control(stage, ControlKind.SURRENDER, {"forced": True})
                return self._finish(stage, attempt)
            self.control(stage, ControlKind.RESTART, dt_ms=1000)

    def _finish(self, stage: StageControl, attempts: int) -> StageOutcome:
        outcome = StageOutcome(stage.game_id, stage.stage_id, stage.status, attempts)
        self.outcomes.append(outcome)
        return outcome

    def play_groupswap_stage(self, level: gs.GroupSwapLevel, stage_idx: int) -> StageOutcome:
        dist = _cached_groupswap_dist(level)

        def state_key(state):
            return (state.group_cells("a"), state.group_cells("b"))

        def apply_move(state, move, dry: bool):
            piece_id, target = move
            res = gs.apply(state, piece_id, target)
            return res.state, res.accepted, () if dry else res.events

        return self._play_puzzle(GameId.GROUP_SWAP, level, stage_idx, gs.begin,
                                 gs.legal_moves, apply_move, state_key, dist,
                                 level.time_limit_s, level.move_limit)

    def play_sliding_stage(self, level: sl.SlidingPathLevel, stage_idx: int) -> StageOutcome:
        dist = _cached_sliding_dist(level)

        def state_key(state):
            return sliding_key_of_anchors(level, state.anchors)

        def apply_move(state, move, dry: bool):
            block_id, direction, cells = move
            res = sl.apply(state, block_id, direction, cells)
            return res.state, res.accepted, () if dry else res.events

        return self._play_puzzle(GameId.SLIDING_PATH, level, stage_idx, sl.begin,
                                 sl.legal_moves, apply_move, state_key, dist,
                                 level.time_limit_s or 120, level.move_limit)

    # -- memory ----------------------------------------------------------------

    def play_memory_stage(self, level: mem.MemoryLevel, stage_idx: int) -> StageOutcome:
        code = _GAME_CODE[GameId.MEMORY]
        stage = StageControl(GameId.MEMORY, level.stage_id, started_ms=self.clock)
        self._tutorial(stage, code, stage_idx)
        layout_seed = int(self.stream(_P_MEMORY_LAYOUT, stage_idx).integers(0, 2 ** 62))
        state = mem.begin(level, layout_seed)
        rng = self.stream(_P_MOVES, code, stage_idx, 1)
        think_rng = self.stream(_P_THINK, code, stage_idx, 1)

        self.clock += level.exposure_ms  # cards face up
        recall = clip01(self.cfg.memory_recall_floor
                        + self.cfg.memory_recall_scale * self.p.thinking)
        remember = clip01(self.cfg.memory_remember_floor
                          + self.cfg.memory_remember_scale * self.p.thinking)
        known: dict[int, int] = {}
        for slot, number in enumerate(state.layout):
            if rng.random() < recall:
                known[slot] = number
        state = mem.reveal_elapsed(state)
        self._maybe_pause(stage, code, stage_idx)

        while state.status is Status.PLAYING and state.guesses_total < self.cfg.max_memory_guesses:
            unmatched = [i for i in range(level.card_count) if i not in state.revealed]
            pair = self._known_pair(known, unmatched)
            if pair is not None:
                a, b = pair
            else:
                unknown = [i for i in unmatched if i not in known] or unmatched
                a = int(unknown[int(rng.integers(0, len(unknown)))])
                number_a = state.layout[a]
                partner = next((k for k in unmatched
                                if k != a and known.get(k) == number_a), None)
                if partner is not None:
                    b = partner
                else:
                    rest = [i for i in unmatched if i != a]
                    b = int(rest[int(rng.integers(0, len(rest)))])
            result = mem.guess(state, a, b)
            for slot in (a, b):
                if rng.random() < remember:
                    known[slot] = state.layout[slot]
            state = result.state
            dt = int(self.cfg.guess_think_ms * (1.4 - 0.6 * self.p.thinking)
                     + think_rng.integers(0, 800))
            for ev in result.events:
                self.emit(ev, dt_ms=dt)
                dt = 0

        stage.status = Status.WON if state.status is Status.WON else Status.SURRENDERED
        return self._finish(stage, 1)

    @staticmethod
    def _known_pair(known: dict[int, int], unmatched: list[int]) -> tuple[int, int] | None:
        by_number: dict[int, int] = {}
        for slot in unmatched:
            number = known.get(slot)
            if number is None:
                continue
            if number in by_number:
                return by_number[number], slot
            by_number[number] = slot
        return None

    # -- graph -------------------------------------------------------------------

    def play_graph_stage(self, level: gr.GraphLevel, stage_idx: int) -> StageOutcome:
        code = _GAME_CODE[GameId.GRAPH]
        stage = StageControl(GameId.GRAPH, level.stage_id, started_ms=self.clock)
        self._tutorial(stage, code, stage_idx)
        if not solve_graph(level).solvable:
            raise LevelError(f"graph/{level.stage_id}: unsolvable level")
        error_rate = self._error_rate()
        deadline_ms = (level.time_limit_s or 60) * 1000
        extended_ms = int(deadline_ms * (1.0 + self.cfg.overtime_grace_factor))
        decision_idx = 0
        attempt = 0
        pause_pending = True

        while True:
            attempt += 1
            state = gr.begin(level)
            mv_rng = self.stream(_P_MOVES, code, stage_idx, attempt)
            think_rng = self.stream(_P_THINK, code, stage_idx, attempt)
            plan: list = []

            while state.status is Status.PLAYING:
                active = stage.active_time(self.clock)
                if not stage.time_expired and active >= deadline_ms:
                    self.emit(stage.note_time_expired(self.clock))
                    verdict = self._giveup(stage, code, stage_idx, decision_idx, allow_skip=True)
                    decision_idx += 1
                    if verdict != "continue":
                        return self._finish(stage, attempt)
                if stage.time_expired and active >= extended_ms:
                    break
                options = gr.legal_directions(state)
                if not options:
                    break
                if mv_rng.random() < error_rate:
                    direction = options[int(mv_rng.integers(0, len(options)))]
                    plan = []
                else:
                    if not plan:
                        key = (state.current, frozenset(state.visited))
                        result = solve_graph(level, start_key=key)
                        if not result.solvable:
                            direction = options[int(mv_rng.integers(0, len(options)))]
                            plan = []
                        else:
                            plan = list(result.witness)
                    if plan:
                        direction = plan.pop(0)
                    else:
                        direction = options[int(mv_rng.integers(0, len(options)))]
                res = gr.move(state, direction)
                if not res.accepted:
                    plan = []
                    continue
                state = res.state
                dt = self._think_ms(think_rng)
                for ev in res.events:
                    self.emit(ev, dt_ms=dt)
                    dt = 0
                if pause_pending:
                    pause_pending = False
                    self._maybe_pause(stage, code, stage_idx)

            if state.status is Status.WON:
                stage.status = Status.WON
                return self._finish(stage, attempt)
            stage.note_failure()
            if stage.time_expired:
                verdict = self._giveup(stage, code, stage_idx, decision_idx, allow_skip=True)
                decision_idx += 1
                if verdict != "continue":
                    return self._finish(stage, attempt)
            if attempt >= self.cfg.max_attempts:
                stage.time_expired = True  # pragma: no cover - safety valve
                self.control(stage, ControlKind.SURRENDER, {"forced": True})
                return self._finish(stage, attempt)
            self.control(stage, ControlKind.RESTART, dt_ms=1000)

    # -- shooter -------------------------------------------------------------------

    def play_shooter_stage(self, level: sh.ShooterLevel, stage_idx: int) -> StageOutcome:
        code = _GAME_CODE[GameId.SHOOTER]
        stage = StageControl(GameId.SHOOTER, level.stage_id, started_ms=self.clock)
        self._tutorial(stage, code, stage_idx)
        self._maybe_pause(stage, code, stage_idx)
        cfg = self.cfg
        decision_idx = 0
        attempt = 0

        while True:
            attempt += 1
            env_rng = self.stream(_P_SHOOTER_ENV, stage_idx, attempt)
            pol_rng = self.stream(_P_SHOOTER_POLICY, stage_idx, attempt)
            skill = clip01(cfg.shooter_skill_base
                           + cfg.shooter_skill_tm * self.p.time_management
                           - cfg.shooter_skill_thinking * self.p.thinking
                           + cfg.shooter_adapt_boost * self.p.adaptability
                           * min(stage.failures, 5))
            dodge_p = clip01(cfg.dodge_floor + cfg.dodge_scale * skill)
            collect_p = clip01(cfg.collect_floor + cfg.collect_scale * skill)
            aim_p = clip01(cfg.aim_floor + cfg.aim_scale * skill)
            fire_p = clip01(cfg.fire_base + cfg.fire_panic * (1.0 - self.p.thinking))
            state = sh.begin(level, restarts=attempt - 1)
            handled: set[int] = set()
            planned_move: sh.ShooterInput | None = None

            while state.status is Status.PLAYING:
                player_input = sh.ShooterInput.NONE
                if planned_move is not None:
                    player_input = planned_move
                    planned_move = None
                else:
                    threats = [e for e in (*state.enemies, *state.asteroids)
                               if e.col == state.player_col]
                    threat = min(threats, key=lambda e: -e.row) if threats else None
                    if threat is not None and threat.id not in handled:
                        handled.add(threat.id)
                        if pol_rng.random() < dodge_p:
                            planned_move = self._safer_lane(state, pol_rng)
                        elif pol_rng.random() < aim_p:
                            player_input = sh.ShooterInput.FIRE
                    elif threat is not None and pol_rng.random() < aim_p:
                        player_input = sh.ShooterInput.FIRE
                    else:
                        goodies = [g for g in (*state.gold, *state.power_ups)
                                   if abs(g.col - state.player_col) == 1]
                        if goodies and pol_rng.random() < collect_p:
                            target = goodies[0]
                            planned_move = (sh.ShooterInput.LEFT
                                            if target.col < state.player_col
                                            else sh.ShooterInput.RIGHT)
                        elif pol_rng.random() < fire_p:
                            player_input = sh.ShooterInput.FIRE
                state, events = sh.tick(state, player_input, env_rng)
                self.clock += sh.TICK_MS
                for ev in events:
                    self.emit(ev)

            if state.status is Status.WON:
                stage.status = Status.WON
                return self._finish(stage, attempt)
            stage.note_failure()
            if stage.surrender_offered():
                verdict = self._giveup(stage, code, stage_idx, decision_idx, allow_skip=False)
                decision_idx += 1
                if verdict != "continue":
                    return self._finish(stage, attempt)
            if attempt >= self.cfg.max_attempts:
                stage.failures = max(stage.failures, 3)  # pragma: no cover - safety valve
                self.control(stage, ControlKind.SURRENDER, {"forced": True})
                return self._finish(stage, attempt)
            self.control(stage, ControlKind.RESTART, dt_ms=1500)

    @staticmethod
    def _safer_lane(state: sh.ShooterState, rng: np.random.Generator) -> sh.ShooterInput:
        def danger(col: int) -> int:
            col %= state.level.lanes
            return sum(1 for e in (*state.enemies, *state.asteroids) if e.col == col)

        left = danger(state.player_col - 1)
        right = danger(state.player_col + 1)
        if left < right:
            return sh.ShooterInput.LEFT
        if right < left:
            return sh.ShooterInput.RIGHT
        return sh.ShooterInput.LEFT if rng.random() < 0.5 else sh.ShooterInput.RIGHT

    # -- whole session ----------------------------------------------------------

    def run(self) -> SessionLog:
        opportunity = 0
        self._between_stages(opportunity)
        for i, level in enumerate(self.pack.group_swap):
            self.play_groupswap_stage(level, i)
        opportunity += 1
        self._between_stages(opportunity)
        for i, level in enumerate(self.pack.sliding_path):
            self.play_sliding_stage(level, i)
        opportunity += 1
        self._between_stages(opportunity)
        for i, level in enumerate(self.pack.memory):
            self.play_memory_stage(level, i)
        opportunity += 1
        self._between_stages(opportunity)
        for i, level in enumerate(self.pack.shooter):
            self.play_shooter_stage(level, i)
        opportunity += 1
        self._between_stages(opportunity)
        for i, level in enumerate(self.pack.graph):
            self.play_graph_stage(level, i)
        for extra in range(opportunity + 1, self.cfg.side_challenge_opportunities):
            self._between_stages(extra)
        self.emit(EventDraft(GameId.META, "", "consent_choice", {"choice": "send"}), dt_ms=2000)
        self.log.finalize("send")
        return self.log


def simulate_participant(profile: TraitProfile, pack: LevelPack, seed: int,
                         config: BehaviorConfig = DEFAULT_BEHAVIOR,
                         session_id: str = "p0000", created_at: int = 0) -> SessionLog:
    """Play every stage of the pack; returns the finalized session log."""
    sim = ParticipantSimulator(profile, pack, seed, config, session_id, created_at)
    return sim.run()
