"""Drive the five game engines by hand.

Each engine is a pure state machine: moves either return a new state plus the
telemetry drafts they produced, or reject without side effects.
"""
import numpy as np

from gamesight.games import graph as gr
from gamesight.games import groupswap as gs
from gamesight.games import memory as mem
from gamesight.games import shooter as sh
from gamesight.games import sliding as sl
from gamesight.games.core import Direction, GridPos, Status
from gamesight.games.levels import load_default_pack

pack = load_default_pack()

# --- group swap: move a piece, watch a rejection leave the state untouched
level = pack.group_swap[0]
state = gs.begin(level)
print("group swap tutorial:", dict(state.piece_positions))
step = gs.apply(state, "a0", GridPos(1, 0))
print("  a0 down ->", step.accepted, dict(step.state.piece_positions))
rejected = gs.apply(step.state, "a0", GridPos(1, 2))
print("  a0 teleport ->", rejected.accepted, rejected.reason,
      "(moves_used stays", rejected.state.moves_used, ")")

# --- sliding path: slide the target across the board
level = pack.sliding_path[0]
state = sl.begin(level)
state = sl.apply(state, "t", Direction.RIGHT, 2).state
state = sl.apply(state, "t", Direction.DOWN, 2).state
print("sliding stage 1 solved:", state.status is Status.WON, "in", state.moves_used,
      "moves")

# --- memory: the exposure gives the layout away; matching needs two slots
level = pack.memory[0]
state = mem.reveal_elapsed(mem.begin(level, seed=7))
print("memory layout:", state.layout)
a = 0
b = next(i for i in range(1, level.card_count) if state.layout[i] == state.layout[0])
result = mem.guess(state, a, b)
print("  guessing", (a, b), "->", result.correct)

# --- graph traversal: auto-slide until something blocks
level = pack.graph[1]
state = gr.begin(level)
for direction in (Direction.RIGHT, Direction.DOWN, Direction.LEFT):
    state = gr.move(state, direction).state
print("graph stage 2:", state.status.value, "visited", len(state.visited), "nodes")

# --- shooter: deterministic ticks from a seeded stream
level = pack.shooter[0]
rng = np.random.default_rng(np.random.SeedSequence([42]))
state = sh.begin(level)
for i in range(400):
    if state.status is not Status.PLAYING:
        break
    move = sh.ShooterInput.FIRE if i % 9 == 0 else sh.ShooterInput.NONE
    state, events = sh.tick(state, move, rng)
print(f"shooter after {state.tick} ticks: lives={state.lives} score={state.score} "
      f"shots={state.shots_fired} enemies destroyed={state.enemies_destroyed}")
