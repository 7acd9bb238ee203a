"""Level pack: one JSON document per game, versioned with a schema id.

The default pack ships as package data under ``gamesight/data/levels`` and is
validated by the solvers module (every puzzle solvable, every move limit at
least the computed optimum).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from ..errors import IntegrityError, LevelError
from .core import GameId, GridPos
from .graph import GraphLevel
from .groupswap import GroupSwapLevel
from .memory import MemoryLevel
from .shooter import ChallengeGoals, ShooterLevel, SpawnTable
from .sliding import Block, BlockShape, MovementAxis, SlidingPathLevel

SCHEMA_ID = "gamesight.levels/1"

PACK_FILES = {
    GameId.GROUP_SWAP: "group_swap.json",
    GameId.SLIDING_PATH: "sliding_path.json",
    GameId.MEMORY: "memory.json",
    GameId.SHOOTER: "shooter.json",
    GameId.GRAPH: "graph.json",
}
SIDE_CHALLENGE_FILE = "side_challenges.json"


@dataclass(frozen=True)
class SideChallenge:
    id: str
    prompt: str
    answer: str
    reward_tokens: int = 1


@dataclass(frozen=True)
class LevelPack:
    group_swap: tuple[GroupSwapLevel, ...]
    sliding_path: tuple[SlidingPathLevel, ...]
    memory: tuple[MemoryLevel, ...]
    shooter: tuple[ShooterLevel, ...]
    graph: tuple[GraphLevel, ...]
    side_challenges: tuple[SideChallenge, ...] = field(default=())

    def levels_for(self, game_id: GameId):
        return {
            GameId.GROUP_SWAP: self.group_swap,
            GameId.SLIDING_PATH: self.sliding_path,
            GameId.MEMORY: self.memory,
            GameId.SHOOTER: self.shooter,
            GameId.GRAPH: self.graph,
        }[game_id]


def _pos(value) -> GridPos:
    r, c = value
    return GridPos(int(r), int(c))


def _check_header(doc: dict, game_id: str, path: str) -> None:
    if doc.get("schema_id") != SCHEMA_ID:
        raise IntegrityError(f"{path}: unsupported schema_id {doc.get('schema_id')!r}")
    if doc.get("game_id") != game_id:
        raise IntegrityError(f"{path}: game_id mismatch ({doc.get('game_id')!r})")


def _group_swap_from(doc: dict, path: str) -> tuple[GroupSwapLevel, ...]:
    _check_header(doc, "group_swap", path)
    out = []
    for lv in doc["levels"]:
        out.append(GroupSwapLevel(
            stage_id=str(lv["stage_id"]),
            rows=int(lv["rows"]),
            cols=int(lv["cols"]),
            group_a_cells=frozenset(_pos(p) for p in lv["group_a_cells"]),
            group_b_cells=frozenset(_pos(p) for p in lv["group_b_cells"]),
            move_limit=int(lv["move_limit"]),
            time_limit_s=int(lv["time_limit_s"]),
        ))
    return tuple(out)


def _sliding_from(doc: dict, path: str) -> tuple[SlidingPathLevel, ...]:
    _check_header(doc, "sliding_path", path)
    out = []
    for lv in doc["levels"]:
        blocks = tuple(
            Block(
                id=str(b["id"]),
                shape=BlockShape(b["shape"]),
                anchor=_pos(b["anchor"]),
                movement_axis=MovementAxis(b["movement_axis"]),
            )
            for b in lv["blocks"]
        )
        out.append(SlidingPathLevel(
            stage_id=str(lv["stage_id"]),
            rows=int(lv["rows"]),
            cols=int(lv["cols"]),
            blocks=blocks,
            target_block_id=str(lv["target_block_id"]),
            endpoint=_pos(lv["endpoint"]),
            time_limit_s=int(lv["time_limit_s"]) if lv.get("time_limit_s") is not None else None,
            move_limit=int(lv["move_limit"]) if lv.get("move_limit") is not None else None,
        ))
    return tuple(out)


def _memory_from(doc: dict, path: str) -> tuple[MemoryLevel, ...]:
    _check_header(doc, "memory", path)
    out = tuple(
        MemoryLevel(stage_id=str(lv["stage_id"]), pair_count=int(lv["pair_count"]),
                    exposure_ms=int(lv.get("exposure_ms", 5000)))
        for lv in doc["levels"]
    )
    counts = [lv.pair_count for lv in out]
    if counts != sorted(counts) or len(set(counts)) != len(counts):
        raise LevelError("memory pair_count must be strictly increasing across stages")
    return out


def _shooter_from(doc: dict, path: str) -> tuple[ShooterLevel, ...]:
    _check_header(doc, "shooter", path)
    out = []
    for lv in doc["levels"]:
        spawn = lv.get("spawn", {})
        goals = lv.get("challenges", {})
        out.append(ShooterLevel(
            stage_id=str(lv["stage_id"]),
            lanes=int(lv.get("lanes", 7)),
            rows=int(lv.get("rows", 10)),
            duration_ms=int(lv.get("duration_ms", 120_000)),
            lives=int(lv.get("lives", 3)),
            max_lives=int(lv.get("max_lives", 5)),
            fall_period=int(lv.get("fall_period", 8)),
            spawn=SpawnTable(
                enemy=float(spawn.get("enemy", 0.0)),
                asteroid=float(spawn.get("asteroid", 0.0)),
                gold=float(spawn.get("gold", 0.0)),
                power_up=float(spawn.get("power_up", 0.0)),
                enemy_mix=tuple(spawn.get("enemy_mix", (0.6, 0.25, 0.15))),
            ),
            challenges=ChallengeGoals(
                enemies_destroyed=int(goals.get("enemies_destroyed", 10)),
                asteroids_destroyed=int(goals.get("asteroids_destroyed", 8)),
                gold_collected=int(goals.get("gold_collected", 5)),
                score=int(goals.get("score", 300)),
            ),
        ))
    return tuple(out)


def _graph_from(doc: dict, path: str) -> tuple[GraphLevel, ...]:
    _check_header(doc, "graph", path)
    return tuple(
        GraphLevel(
            stage_id=str(lv["stage_id"]),
            rows=int(lv["rows"]),
            cols=int(lv["cols"]),
            nodes=frozenset(_pos(p) for p in lv["nodes"]),
            obstacles=frozenset(_pos(p) for p in lv["obstacles"]),
            start=_pos(lv["start"]),
            time_limit_s=int(lv["time_limit_s"]) if lv.get("time_limit_s") is not None else None,
        )
        for lv in doc["levels"]
    )


def _side_challenges_from(doc: dict, path: str) -> tuple[SideChallenge, ...]:
    _check_header(doc, "meta", path)
    return tuple(
        SideChallenge(id=str(c["id"]), prompt=str(c["prompt"]), answer=str(c["answer"]),
                      reward_tokens=int(c.get("reward_tokens", 1)))
        for c in doc["challenges"]
    )


_PARSERS = {
    GameId.GROUP_SWAP: _group_swap_from,
    GameId.SLIDING_PATH: _sliding_from,
    GameId.MEMORY: _memory_from,
    GameId.SHOOTER: _shooter_from,
    GameId.GRAPH: _graph_from,
}


def load_pack(directory: str | Path) -> LevelPack:
    directory = Path(directory)
    parsed = {}
    for game_id, filename in PACK_FILES.items():
        path = directory / filename
        if not path.exists():
            raise IntegrityError(f"level pack incomplete: missing {filename}")
        doc = json.loads(path.read_text())
        parsed[game_id] = _PARSERS[game_id](doc, str(path))
    sc_path = directory / SIDE_CHALLENGE_FILE
    challenges = ()
    if sc_path.exists():
        challenges = _side_challenges_from(json.loads(sc_path.read_text()), str(sc_path))
    return LevelPack(
        group_swap=parsed[GameId.GROUP_SWAP],
        sliding_path=parsed[GameId.SLIDING_PATH],
        memory=parsed[GameId.MEMORY],
        shooter=parsed[GameId.SHOOTER],
        graph=parsed[GameId.GRAPH],
        side_challenges=challenges,
    )


def default_pack_dir() -> Path:
    return Path(str(resources.files("gamesight").joinpath("data/levels")))


def load_default_pack() -> LevelPack:
    return load_pack(default_pack_dir())


def game_document(directory: str | Path, game_id: GameId) -> dict:
    """Raw JSON document for one game, as served by the get_levels endpoint."""
    if game_id is GameId.META:
        path = Path(directory) / SIDE_CHALLENGE_FILE
    else:
        path = Path(directory) / PACK_FILES[game_id]
    if not path.exists():
        raise IntegrityError(f"no level document for {game_id.value}")
    return json.loads(path.read_text())
