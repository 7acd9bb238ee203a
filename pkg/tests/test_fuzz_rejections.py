"""Property: rejected moves never mutate state and never emit events.

Random interleavings of legal and illegal inputs must leave each engine in
exactly the state produced by the accepted subsequence alone.
"""
import numpy as np
from hypothesis import given, settings, strategies as st

from gamesight.games import graph as gr
from gamesight.games import groupswap as gs
from gamesight.games import sliding as sl
from gamesight.games.core import Direction, GridPos, Status


def gs_level():
    return gs.GroupSwapLevel(stage_id="f", rows=2, cols=3,
                             group_a_cells=frozenset({GridPos(0, 0)}),
                             group_b_cells=frozenset({GridPos(0, 2)}),
                             move_limit=30, time_limit_s=60)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(10, 60))
def test_groupswap_rejections_are_pure(seed, steps):
    rng = np.random.default_rng(seed)
    state = gs.begin(gs_level())
    accepted_moves = []
    for _ in range(steps):
        if state.status is not Status.PLAYING:
            break
        piece = ("a0", "b0")[int(rng.integers(2))]
        target = GridPos(int(rng.integers(-1, 3)), int(rng.integers(-1, 4)))
        before = state
        result = gs.apply(state, piece, target)
        if result.accepted:
            accepted_moves.append((piece, target))
            state = result.state
        else:
            assert result.state is before
            assert result.events == ()
    replay = gs.begin(gs_level())
    for piece, target in accepted_moves:
        replay = gs.apply(replay, piece, target).state
    assert replay == state


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(10, 50))
def test_sliding_rejections_are_pure(seed, steps):
    level = sl.SlidingPathLevel(
        stage_id="f", rows=3, cols=4,
        blocks=(sl.Block("t", sl.BlockShape.CELL_1X1, GridPos(0, 0), sl.MovementAxis.BOTH),
                sl.Block("h", sl.BlockShape.HORIZ_2X1, GridPos(2, 1),
                         sl.MovementAxis.HORIZONTAL),
                sl.Block("v", sl.BlockShape.VERT_1X2, GridPos(0, 3),
                         sl.MovementAxis.VERTICAL)),
        target_block_id="t", endpoint=GridPos(2, 0))
    rng = np.random.default_rng(seed)
    directions = list(Direction)
    state = sl.begin(level)
    accepted = []
    for _ in range(steps):
        if state.status is not Status.PLAYING:
            break
        move = (("t", "h", "v")[int(rng.integers(3))],
                directions[int(rng.integers(4))], int(rng.integers(1, 4)))
        before = state
        result = sl.apply(state, *move)
        if result.accepted:
            accepted.append(move)
            state = result.state
        else:
            assert result.state is before
            assert result.events == ()
    replay = sl.begin(level)
    for move in accepted:
        replay = sl.apply(replay, *move).state
    assert replay == state


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.lists(st.integers(0, 3), min_size=5, max_size=25))
def test_graph_rejections_are_pure(seed, moves):
    nodes = frozenset(GridPos(r, c) for r in range(3) for c in range(3)) - {GridPos(1, 1)}
    level = gr.GraphLevel(stage_id="f", rows=3, cols=3, nodes=nodes,
                          obstacles=frozenset({GridPos(1, 1)}), start=GridPos(0, 0))
    directions = list(Direction)
    state = gr.begin(level)
    accepted = []
    for index in moves:
        if state.status is not Status.PLAYING:
            break
        before = state
        result = gr.move(state, directions[index])
        if result.accepted:
            accepted.append(directions[index])
            state = result.state
        else:
            assert result.state is before
            assert result.events == ()
    replay = gr.begin(level)
    for direction in accepted:
        replay = gr.move(replay, direction).state
    assert replay == state
