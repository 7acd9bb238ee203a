#!/usr/bin/env python3
"""Conformance replay: re-run a recorded client session through the
authoritative engines and verify identical terminal stage states.

Input: a bundle JSON written by the client test harness:

    {
      "events":   [ wire events, in client emission order ],
      "outcomes": [ {gameId, stageId, status}, ... ],
      "shooter_attempts": [ {attempt, status, tick, score, counters}, ... ],
      "stored_events": [ events parsed from the server store file ]
    }

Puzzle and memory stages replay move-for-move.  Shooter attempts replay by
reconstructing the per-tick input and spawn timelines from the recorded
events (the client stamps a `tick` key on its shooter payloads), injecting
the recorded spawns into the engine state, and comparing terminal counters.
Exits non-zero with a message on the first divergence.
"""
import dataclasses
import json
import sys
from collections import defaultdict

from gamesight.games import graph as gr
from gamesight.games import groupswap as gs
from gamesight.games import memory as mem
from gamesight.games import shooter as sh
from gamesight.games import sliding as sl
from gamesight.games.core import Direction, GridPos, Status
from gamesight.games.levels import load_default_pack


def fail(message: str) -> None:
    print(f"REPLAY MISMATCH: {message}", file=sys.stderr)
    sys.exit(1)


def pos_of(text: str) -> GridPos:
    row, col = text.split(":")
    return GridPos(int(row), int(col))


def split_attempts(events):
    attempts = [[]]
    for event in events:
        if event["event_type"] == "restart":
            attempts.append([])
        else:
            attempts[-1].append(event)
    return attempts


def replay_groupswap(level, stage_events):
    for attempt in split_attempts(stage_events):
        state = gs.begin(level)
        for event in attempt:
            if event["event_type"] != "move_accepted":
                continue
            payload = event["payload"]
            piece = next((p for p, pos in state.piece_positions.items()
                          if pos == pos_of(payload["from"])), None)
            if piece is None:
                fail(f"group_swap {level.stage_id}: no piece at {payload['from']}")
            result = gs.apply(state, piece, pos_of(payload["to"]))
            if not result.accepted:
                fail(f"group_swap {level.stage_id}: engine rejected recorded move "
                     f"{payload} ({result.reason})")
            state = result.state
            if state.moves_used != payload["moves_used"]:
                fail(f"group_swap {level.stage_id}: move counter diverged")
        won_recorded = any(e["event_type"] == "win" for e in attempt)
        if (state.status is Status.WON) != won_recorded:
            fail(f"group_swap {level.stage_id}: win state diverged")


def replay_sliding(level, stage_events):
    for attempt in split_attempts(stage_events):
        state = sl.begin(level)
        for event in attempt:
            if event["event_type"] != "move_accepted":
                continue
            payload = event["payload"]
            result = sl.apply(state, payload["block"], Direction(payload["direction"]),
                              int(payload["cells"]))
            if not result.accepted:
                fail(f"sliding {level.stage_id}: engine rejected recorded move "
                     f"{payload} ({result.reason})")
            state = result.state
        won_recorded = any(e["event_type"] == "win" for e in attempt)
        if (state.status is Status.WON) != won_recorded:
            fail(f"sliding {level.stage_id}: win state diverged")


def replay_graph(level, stage_events):
    for attempt in split_attempts(stage_events):
        state = gr.begin(level)
        for event in attempt:
            if event["event_type"] != "move_accepted":
                continue
            result = gr.move(state, Direction(event["payload"]["direction"]))
            if not result.accepted:
                fail(f"graph {level.stage_id}: engine rejected recorded direction "
                     f"{event['payload']}")
            state = result.state
            if len(state.visited) != event["payload"]["visited"]:
                fail(f"graph {level.stage_id}: visited count diverged")
        won_recorded = any(e["event_type"] == "win" for e in attempt)
        if (state.status is Status.WON) != won_recorded:
            fail(f"graph {level.stage_id}: terminal state diverged")


def replay_memory(level, stage_events):
    for attempt in split_attempts(stage_events):
        guesses = [e for e in attempt if e["event_type"] == "guess"]
        if not guesses:
            continue
        # the correct guesses determine the pair structure, which is all the
        # rules depend on; synthesize a layout from them
        layout = [0] * (2 * level.pair_count)
        number = 0
        for event in guesses:
            if event["payload"]["correct"]:
                number += 1
                layout[event["payload"]["slot_a"]] = number
                layout[event["payload"]["slot_b"]] = number
        if number != level.pair_count:
            fail(f"memory {level.stage_id}: recorded guesses do not cover all pairs")
        state = mem.MemoryState(level=level, layout=tuple(layout),
                                phase=mem.MemoryPhase.RECALL)
        for event in guesses:
            payload = event["payload"]
            result = mem.guess(state, int(payload["slot_a"]), int(payload["slot_b"]))
            if result.correct != payload["correct"]:
                fail(f"memory {level.stage_id}: guess correctness diverged at "
                     f"seq {event['seq']}")
            state = result.state
        won_recorded = any(e["event_type"] == "win" for e in attempt)
        if (state.status is Status.WON) != won_recorded:
            fail(f"memory {level.stage_id}: terminal state diverged")


class _NeverSpawn:
    """Generator stand-in: spawn rolls always miss, so the engine spawns
    nothing and the recorded spawn timeline can be injected instead."""

    def random(self):
        return 1.0


_KIND_LISTS = {"asteroid": "asteroids", "gold": "gold", "power_up": "power_ups"}


def _inject_spawns(state, spawns):
    changes = {}
    for kind, col, entity_id in spawns:
        hp = 2 if kind == "enemy_defensive" else 1
        entity = sh.Entity(int(entity_id), kind, 0, int(col), hp)
        if kind.startswith("enemy"):
            changes.setdefault("enemies", list(state.enemies)).append(entity)
            changes["enemies_generated"] = changes.get(
                "enemies_generated", state.enemies_generated) + 1
        else:
            field = _KIND_LISTS[kind]
            changes.setdefault(field, list(getattr(state, field))).append(entity)
            counter = {"asteroids": "asteroids_generated", "gold": "gold_generated",
                       "power_ups": "powerups_generated"}[field]
            changes[counter] = changes.get(counter, getattr(state, counter)) + 1
    for key in ("enemies", "asteroids", "gold", "power_ups"):
        if key in changes:
            changes[key] = tuple(changes[key])
    return dataclasses.replace(state, **changes)


_COUNTER_FIELDS = (
    "shots_fired", "enemies_generated", "enemies_destroyed", "enemy_collisions",
    "asteroids_generated", "asteroids_destroyed", "asteroid_collisions",
    "gold_generated", "gold_collected", "gold_lost", "gold_exploded",
    "powerups_generated", "powerups_collected", "moves_left", "moves_right",
    "boundary_exits_left", "boundary_exits_right",
)


def replay_shooter(level, stage_events, summaries):
    attempts = split_attempts(stage_events)
    gameplay_attempts = [a for a in attempts
                         if any(e["event_type"] in ("move_accepted", "shot", "spawn",
                                                    "win", "lose", "collision",
                                                    "collect")
                                for e in a)]
    if len(gameplay_attempts) != len(summaries):
        fail(f"shooter: {len(gameplay_attempts)} recorded attempts vs "
             f"{len(summaries)} client summaries")
    for attempt_events, summary in zip(gameplay_attempts, summaries):
        inputs = {}
        spawns = defaultdict(list)
        last_tick = 0
        for event in attempt_events:
            payload = event["payload"]
            tick = int(payload.get("tick", 0))
            last_tick = max(last_tick, tick)
            if event["event_type"] == "move_accepted":
                inputs[tick] = sh.ShooterInput(payload["direction"])
            elif event["event_type"] == "shot":
                inputs[tick] = sh.ShooterInput.FIRE
            elif event["event_type"] == "spawn":
                spawns[tick].append((payload["kind"], payload["col"],
                                     payload["entity"]))
        state = sh.begin(level)
        rng = _NeverSpawn()
        for tick in range(1, int(summary["tick"]) + 1):
            if state.status is not Status.PLAYING:
                fail(f"shooter attempt {summary['attempt']}: engine terminated at "
                     f"tick {tick - 1}, client at {summary['tick']}")
            state, _ = sh.tick(state, inputs.get(tick, sh.ShooterInput.NONE), rng)
            if tick in spawns:
                state = _inject_spawns(state, spawns[tick])
        if state.status.value != summary["status"]:
            fail(f"shooter attempt {summary['attempt']}: status "
                 f"{state.status.value} vs client {summary['status']}")
        if state.score != summary["score"]:
            fail(f"shooter attempt {summary['attempt']}: score {state.score} vs "
                 f"client {summary['score']}")
        for field in _COUNTER_FIELDS:
            if getattr(state, field) != summary["counters"][field]:
                fail(f"shooter attempt {summary['attempt']}: counter {field} "
                     f"{getattr(state, field)} vs {summary['counters'][field]}")


def main(path: str) -> None:
    bundle = json.loads(open(path).read())
    events = bundle["events"]
    stored = bundle["stored_events"]

    # server-stored events must equal the client emissions in order and content
    if len(stored) != len(events):
        fail(f"store holds {len(stored)} events, client emitted {len(events)}")
    for mine, theirs in zip(events, stored):
        for key in ("seq", "timestamp_ms", "game_id", "stage_id", "event_type"):
            if mine[key] != theirs[key]:
                fail(f"event {mine['seq']}: {key} differs ({mine[key]!r} vs "
                     f"{theirs[key]!r})")
        if dict(mine["payload"]) != dict(theirs["payload"]):
            fail(f"event {mine['seq']}: payload differs")
    if [e["seq"] for e in events] != list(range(len(events))):
        fail("client event sequence has gaps")

    pack = load_default_pack()
    by_stage = defaultdict(list)
    for event in events:
        by_stage[(event["game_id"], event["stage_id"])].append(event)

    for level in pack.group_swap:
        replay_groupswap(level, by_stage.get(("group_swap", level.stage_id), []))
    for level in pack.sliding_path:
        replay_sliding(level, by_stage.get(("sliding_path", level.stage_id), []))
    for level in pack.graph:
        replay_graph(level, by_stage.get(("graph", level.stage_id), []))
    for level in pack.memory:
        replay_memory(level, by_stage.get(("memory", level.stage_id), []))
    for level in pack.shooter:
        replay_shooter(level, by_stage.get(("shooter", level.stage_id), []),
                       bundle.get("shooter_attempts", []))

    # recorded outcomes must match the event log's terminal markers
    for outcome in bundle["outcomes"]:
        stage_events = by_stage.get((outcome["gameId"], outcome["stageId"]), [])
        terminal = {"won": "win", "skipped": "skip", "surrendered": "surrender"}
        marker = terminal.get(outcome["status"])
        if marker and not any(e["event_type"] == marker for e in stage_events):
            fail(f"{outcome['gameId']}/{outcome['stageId']}: outcome "
                 f"{outcome['status']} has no matching {marker} event")

    print(f"replay ok: {len(events)} events, {len(bundle['outcomes'])} stages, "
          f"{len(bundle.get('shooter_attempts', []))} shooter attempts")


if __name__ == "__main__":
    main(sys.argv[1])
