"""Galaxy shooter: survive 120 seconds of falling enemies, asteroids and pickups.

The game runs on a fixed logical tick (50 ms) with lane-discretized movement,
which makes the real-time genre deterministic and bot-playable: given the same
start state, input sequence and RNG stream, every tick is bitwise reproducible.

Tick order (fixed): input -> projectile motion -> projectile hits -> entity
descent -> projectile hits again (catches pass-through) -> player contact ->
bottom exits -> spawns -> status check.  Horizontal movement wraps around the
field; each wrap counts as a boundary exit on the side the player left.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import NamedTuple

import numpy as np

from ..errors import LevelError, PreconditionError
from .core import EventDraft, GameId, Status

TICK_MS = 50

# Score awards per destroyed/collected entity kind.
SCORE_VALUES = {
    "enemy_offensive": 10,
    "enemy_defensive": 15,
    "enemy_score": 50,
    "asteroid": 5,
    "gold": 20,
}

ENEMY_KINDS = ("enemy_offensive", "enemy_defensive", "enemy_score")


class ShooterInput(str, Enum):
    NONE = "none"
    LEFT = "left"
    RIGHT = "right"
    FIRE = "fire"


class Entity(NamedTuple):
    id: int
    kind: str
    row: int
    col: int
    hp: int


class Projectile(NamedTuple):
    row: int
    col: int


@dataclass(frozen=True)
class SpawnTable:
    """Per-tick spawn probabilities; zero everywhere gives an empty level."""

    enemy: float = 0.0
    asteroid: float = 0.0
    gold: float = 0.0
    power_up: float = 0.0
    # Relative weights for offensive/defensive/score when an enemy spawns.
    enemy_mix: tuple[float, float, float] = (0.6, 0.25, 0.15)


@dataclass(frozen=True)
class ChallengeGoals:
    enemies_destroyed: int = 10
    asteroids_destroyed: int = 8
    gold_collected: int = 5
    score: int = 300


@dataclass(frozen=True)
class ShooterLevel:
    stage_id: str
    lanes: int = 7
    rows: int = 10
    duration_ms: int = 120_000
    lives: int = 3
    max_lives: int = 5
    fall_period: int = 8
    spawn: SpawnTable = field(default_factory=SpawnTable)
    challenges: ChallengeGoals = field(default_factory=ChallengeGoals)

    def __post_init__(self):
        if self.lanes < 2 or self.rows < 3:
            raise LevelError(f"{self.stage_id}: field too small")
        if self.lives <= 0 or self.duration_ms <= 0 or self.fall_period <= 0:
            raise LevelError(f"{self.stage_id}: lives/duration/fall_period must be positive")


CHALLENGE_NAMES = (
    "life_survival",
    "enemy_elimination",
    "asteroid_destruction",
    "gold_collection",
    "no_weapon",
    "score_achievement",
)


@dataclass(frozen=True)
class ShooterState:
    level: ShooterLevel
    tick: int = 0
    elapsed_ms: int = 0
    lives: int = 0
    score: int = 0
    player_col: int = 0
    enemies: tuple[Entity, ...] = ()
    asteroids: tuple[Entity, ...] = ()
    power_ups: tuple[Entity, ...] = ()
    gold: tuple[Entity, ...] = ()
    projectiles: tuple[Projectile, ...] = ()
    next_entity_id: int = 0
    status: Status = Status.PLAYING
    # Appendix-style behavioral counters, attempt-local.
    shots_fired: int = 0
    enemies_generated: int = 0
    enemies_destroyed: int = 0
    enemy_collisions: int = 0
    asteroids_generated: int = 0
    asteroids_destroyed: int = 0
    asteroid_collisions: int = 0
    gold_generated: int = 0
    gold_collected: int = 0
    gold_lost: int = 0
    gold_exploded: int = 0
    powerups_generated: int = 0
    powerups_collected: int = 0
    moves_left: int = 0
    moves_right: int = 0
    boundary_exits_left: int = 0
    boundary_exits_right: int = 0
    restarts: int = 0
    challenge_flags: tuple[bool, bool, bool, bool, bool, bool] = (False,) * 6

    @property
    def player_row(self) -> int:
        return self.level.rows - 1


def begin(level: ShooterLevel, restarts: int = 0) -> ShooterState:
    return ShooterState(level=level, lives=level.lives, player_col=level.lanes // 2,
                        restarts=restarts)


def _challenge_flags(s: "ShooterState", won: bool, lost_any_life: bool) -> tuple[bool, ...]:
    goals = s.level.challenges
    prev = s.challenge_flags
    return (
        prev[0] or (won and not lost_any_life),
        prev[1] or s.enemies_destroyed >= goals.enemies_destroyed,
        prev[2] or s.asteroids_destroyed >= goals.asteroids_destroyed,
        prev[3] or s.gold_collected >= goals.gold_collected,
        prev[4] or (won and s.shots_fired == 0),
        prev[5] or s.score >= goals.score,
    )


def tick(state: ShooterState, player_input: ShooterInput,
         rng: np.random.Generator) -> tuple[ShooterState, tuple[EventDraft, ...]]:
    """Advance one 50 ms logical tick."""
    if state.status is not Status.PLAYING:
        raise PreconditionError(f"tick on terminal state ({state.status.value})")

    lvl = state.level
    stage = lvl.stage_id
    events: list[EventDraft] = []

    t = state.tick + 1
    elapsed = state.elapsed_ms + TICK_MS
    lives = state.lives
    score = state.score
    col = state.player_col
    shots = state.shots_fired
    moves_left = state.moves_left
    moves_right = state.moves_right
    exits_left = state.boundary_exits_left
    exits_right = state.boundary_exits_right
    counters = {
        "enemies_generated": state.enemies_generated,
        "enemies_destroyed": state.enemies_destroyed,
        "enemy_collisions": state.enemy_collisions,
        "asteroids_generated": state.asteroids_generated,
        "asteroids_destroyed": state.asteroids_destroyed,
        "asteroid_collisions": state.asteroid_collisions,
        "gold_generated": state.gold_generated,
        "gold_collected": state.gold_collected,
        "gold_lost": state.gold_lost,
        "gold_exploded": state.gold_exploded,
        "powerups_generated": state.powerups_generated,
        "powerups_collected": state.powerups_collected,
    }
    next_id = state.next_entity_id
    projectiles = list(state.projectiles)
    enemies = list(state.enemies)
    asteroids = list(state.asteroids)
    power_ups = list(state.power_ups)
    gold = list(state.gold)

    # 1. input
    if player_input is ShooterInput.LEFT or player_input is ShooterInput.RIGHT:
        wrapped = ""
        if player_input is ShooterInput.LEFT:
            moves_left += 1
            col -= 1
            if col < 0:
                col = lvl.lanes - 1
                exits_left += 1
                wrapped = "left"
        else:
            moves_right += 1
            col += 1
            if col >= lvl.lanes:
                col = 0
                exits_right += 1
                wrapped = "right"
        payload = {"direction": player_input.value, "col": col}
        if wrapped:
            payload["boundary_exit"] = wrapped
        events.append(EventDraft(GameId.SHOOTER, stage, "move_accepted", payload))
    elif player_input is ShooterInput.FIRE:
        shots += 1
        projectiles.append(Projectile(state.player_row - 1, col))
        events.append(EventDraft(GameId.SHOOTER, stage, "shot", {"col": col, "shots_fired": shots}))

    # 2. projectile motion
    projectiles = [Projectile(p.row - 1, p.col) for p in projectiles if p.row - 1 >= 0]

    def resolve_hits() -> None:
        nonlocal projectiles, enemies, asteroids, gold, score
        if not projectiles:
            return
        remaining: list[Projectile] = []
        for p in projectiles:
            hit = False
            for i, e in enumerate(enemies):
                if e.row == p.row and e.col == p.col:
                    hit = True
                    if e.hp > 1:
                        enemies[i] = e._replace(hp=e.hp - 1)
                    else:
                        enemies.pop(i)
                        counters["enemies_destroyed"] += 1
                        score += SCORE_VALUES[e.kind]
                        events.append(EventDraft(
                            GameId.SHOOTER, stage, "collision",
                            {"kind": "enemy", "with": "projectile", "enemy_kind": e.kind,
                             "entity": e.id}))
                    break
            if not hit:
                for i, a in enumerate(asteroids):
                    if a.row == p.row and a.col == p.col:
                        hit = True
                        asteroids.pop(i)
                        counters["asteroids_destroyed"] += 1
                        score += SCORE_VALUES["asteroid"]
                        events.append(EventDraft(
                            GameId.SHOOTER, stage, "collision",
                            {"kind": "asteroid", "with": "projectile", "entity": a.id}))
                        break
            if not hit:
                for i, g in enumerate(gold):
                    if g.row == p.row and g.col == p.col:
                        hit = True
                        gold.pop(i)
                        counters["gold_exploded"] += 1
                        events.append(EventDraft(
                            GameId.SHOOTER, stage, "collision",
                            {"kind": "gold", "with": "projectile", "entity": g.id}))
                        break
            if not hit:
                remaining.append(p)
        projectiles = remaining

    # 3. hits after projectile motion
    resolve_hits()

    # 4. entity descent (power-ups fall too)
    if t % lvl.fall_period == 0:
        enemies = [e._replace(row=e.row + 1) for e in enemies]
        asteroids = [a._replace(row=a.row + 1) for a in asteroids]
        power_ups = [u._replace(row=u.row + 1) for u in power_ups]
        gold = [g._replace(row=g.row + 1) for g in gold]
        # 5. hits again so entities cannot fall through a projectile
        resolve_hits()

    # 6. player contact
    player_row = lvl.rows - 1

    def at_player(e: Entity) -> bool:
        return e.row == player_row and e.col == col

    kept = []
    for e in enemies:
        if at_player(e):
            lives = max(0, lives - 1)
            counters["enemy_collisions"] += 1
            events.append(EventDraft(
                GameId.SHOOTER, stage, "collision",
                {"kind": "enemy", "with": "player", "enemy_kind": e.kind, "entity": e.id,
                 "lives": lives}))
        else:
            kept.append(e)
    enemies = kept
    kept = []
    for a in asteroids:
        if at_player(a):
            lives = max(0, lives - 1)
            counters["asteroid_collisions"] += 1
            events.append(EventDraft(
                GameId.SHOOTER, stage, "collision",
                {"kind": "asteroid", "with": "player", "entity": a.id, "lives": lives}))
        else:
            kept.append(a)
    asteroids = kept
    kept = []
    for g in gold:
        if at_player(g):
            counters["gold_collected"] += 1
            score += SCORE_VALUES["gold"]
            events.append(EventDraft(
                GameId.SHOOTER, stage, "collect", {"kind": "gold", "entity": g.id}))
        else:
            kept.append(g)
    gold = kept
    kept = []
    for u in power_ups:
        if at_player(u):
            counters["powerups_collected"] += 1
            lives = min(lives + 1, lvl.max_lives)
            events.append(EventDraft(
                GameId.SHOOTER, stage, "collect",
                {"kind": "power_up", "entity": u.id, "lives": lives}))
        else:
            kept.append(u)
    power_ups = kept

    # 7. bottom exits: gold slipping past the player counts as lost
    kept = []
    for g in gold:
        if g.row > player_row:
            counters["gold_lost"] += 1
            events.append(EventDraft(
                GameId.SHOOTER, stage, "collision", {"kind": "gold", "with": "bottom",
                                                     "entity": g.id}))
        else:
            kept.append(g)
    gold = kept
    enemies = [e for e in enemies if e.row <= player_row]
    asteroids = [a for a in asteroids if a.row <= player_row]
    power_ups = [u for u in power_ups if u.row <= player_row]

    # 8. spawns (fixed kind order keeps the RNG stream stable)
    spawn = lvl.spawn
    for kind, rate in (("enemy", spawn.enemy), ("asteroid", spawn.asteroid),
                       ("gold", spawn.gold), ("power_up", spawn.power_up)):
        if rate <= 0.0:
            continue
        if rng.random() >= rate:
            continue
        lane = int(rng.integers(0, lvl.lanes))
        if kind == "enemy":
            mix = np.asarray(spawn.enemy_mix, dtype=float)
            subkind = ENEMY_KINDS[int(rng.choice(3, p=mix / mix.sum()))]
            hp = 2 if subkind == "enemy_defensive" else 1
            enemies.append(Entity(next_id, subkind, 0, lane, hp))
            counters["enemies_generated"] += 1
            events.append(EventDraft(GameId.SHOOTER, stage, "spawn",
                                     {"kind": subkind, "entity": next_id, "col": lane}))
        elif kind == "asteroid":
            asteroids.append(Entity(next_id, "asteroid", 0, lane, 1))
            counters["asteroids_generated"] += 1
            events.append(EventDraft(GameId.SHOOTER, stage, "spawn",
                                     {"kind": "asteroid", "entity": next_id, "col": lane}))
        elif kind == "gold":
            gold.append(Entity(next_id, "gold", 0, lane, 1))
            counters["gold_generated"] += 1
            events.append(EventDraft(GameId.SHOOTER, stage, "spawn",
                                     {"kind": "gold", "entity": next_id, "col": lane}))
        else:
            power_ups.append(Entity(next_id, "power_up", 0, lane, 1))
            counters["powerups_generated"] += 1
            events.append(EventDraft(GameId.SHOOTER, stage, "spawn",
                                     {"kind": "power_up", "entity": next_id, "col": lane}))
        next_id += 1

    # 9. status
    status = Status.PLAYING
    new = replace(
        state,
        tick=t,
        elapsed_ms=elapsed,
        lives=lives,
        score=score,
        player_col=col,
        enemies=tuple(enemies),
        asteroids=tuple(asteroids),
        power_ups=tuple(power_ups),
        gold=tuple(gold),
        projectiles=tuple(projectiles),
        next_entity_id=next_id,
        shots_fired=shots,
        moves_left=moves_left,
        moves_right=moves_right,
        boundary_exits_left=exits_left,
        boundary_exits_right=exits_right,
        status=status,
        **counters,
    )

    lost_any_life = lives < lvl.lives
    if lives <= 0:
        flags = _challenge_flags(new, won=False, lost_any_life=True)
        new = replace(new, status=Status.DEAD, challenge_flags=flags)
        events.append(EventDraft(
            GameId.SHOOTER, stage, "lose",
            {"reason": "lives", "elapsed_ms": elapsed, "score": score,
             **{f"challenge_{n}": f for n, f in zip(CHALLENGE_NAMES, flags)}}))
    elif elapsed >= lvl.duration_ms:
        flags = _challenge_flags(new, won=True, lost_any_life=lost_any_life)
        new = replace(new, status=Status.WON, challenge_flags=flags)
        events.append(EventDraft(
            GameId.SHOOTER, stage, "win",
            {"elapsed_ms": elapsed, "score": score,
             **{f"challenge_{n}": f for n, f in zip(CHALLENGE_NAMES, flags)}}))
    else:
        new = replace(new, challenge_flags=_challenge_flags(new, won=False,
                                                            lost_any_life=lost_any_life))

    return new, tuple(events)
