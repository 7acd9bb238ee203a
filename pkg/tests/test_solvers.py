import pytest

from gamesight.errors import CapacityError
from gamesight.games import graph as gr
from gamesight.games import groupswap as gs
from gamesight.games import sliding as sl
from gamesight.games.core import Direction, GridPos
from gamesight.solvers import (
    groupswap_distance_map,
    groupswap_start_key,
    iddfs_graph,
    iddfs_groupswap,
    iddfs_sliding,
    sliding_distance_map,
    sliding_start_key,
    solve_graph,
    solve_groupswap,
    solve_sliding,
    validate_level_pack,
)


def gs_level(rows, cols, a_cells, b_cells):
    return gs.GroupSwapLevel(stage_id="x", rows=rows, cols=cols,
                             group_a_cells=frozenset(GridPos(*c) for c in a_cells),
                             group_b_cells=frozenset(GridPos(*c) for c in b_cells),
                             move_limit=99, time_limit_s=60)


def test_already_solved_configuration_is_zero_moves():
    # solving from the exchanged configuration (the goal itself) costs nothing
    level = gs_level(2, 2, [(0, 0)], [(0, 1)])
    solved_key = (level.group_b_cells, level.group_a_cells)
    res = solve_groupswap(level, start_key=solved_key)
    assert res.solvable and res.optimal_moves == 0 and res.witness == ()


def test_line_instances_unsolvable_both_routes():
    # pieces cannot pass each other on a 1-D line, so swaps are impossible
    for cols, a, b in ((3, (0, 0), (0, 2)), (4, (0, 0), (0, 3))):
        level = gs_level(1, cols, [a], [b])
        bfs = solve_groupswap(level)
        idd = iddfs_groupswap(level)
        assert bfs.solvable is False and bfs.optimal_moves is None
        assert idd.solvable is False


def test_no_empty_cells_means_no_legal_moves_and_unsolvable():
    level = gs_level(1, 2, [(0, 0)], [(0, 1)])
    res = solve_groupswap(level)
    assert res.solvable is False
    assert res.states_expanded == 1


def test_groupswap_bfs_equals_iddfs_on_2d_instances():
    instances = [
        gs_level(2, 2, [(0, 0)], [(0, 1)]),
        gs_level(2, 3, [(0, 0)], [(0, 2)]),
        gs_level(2, 3, [(0, 0), (1, 0)], [(0, 2), (1, 2)]),
        gs_level(3, 3, [(0, 0)], [(2, 2)]),
    ]
    for level in instances:
        bfs = solve_groupswap(level)
        idd = iddfs_groupswap(level)
        assert bfs.solvable == idd.solvable
        assert bfs.optimal_moves == idd.optimal_moves


def test_groupswap_witness_length_equals_optimum_and_replays(default_pack):
    for level in default_pack.group_swap:
        res = solve_groupswap(level)
        assert len(res.witness) == res.optimal_moves
        state = gs.begin(level)
        for src, tgt in res.witness:
            piece = next(p for p, pos in state.piece_positions.items() if pos == src)
            step = gs.apply(state, piece, tgt)
            assert step.accepted
            state = step.state
        assert state.moves_used == res.optimal_moves


def test_states_expanded_deterministic_across_runs():
    level = gs_level(2, 3, [(0, 0)], [(0, 2)])
    runs = [solve_groupswap(level) for _ in range(3)]
    assert len({r.states_expanded for r in runs}) == 1
    assert len({r.witness for r in runs}) == 1


def test_capacity_error_carries_cap():
    level = gs_level(3, 4, [(0, 0), (1, 0), (2, 0)], [(0, 3), (1, 3), (2, 3)])
    with pytest.raises(CapacityError) as err:
        solve_groupswap(level, cap=10)
    assert err.value.cap == 10


def test_distance_map_matches_bfs_optimum(default_pack):
    for level in default_pack.group_swap[:2]:
        dist = groupswap_distance_map(level)
        assert dist[groupswap_start_key(level)] == solve_groupswap(level).optimal_moves


# -- sliding ------------------------------------------------------------------

def sliding_level(blocks, rows=3, cols=3, endpoint=(2, 2), target="t"):
    return sl.SlidingPathLevel(stage_id="x", rows=rows, cols=cols, blocks=tuple(blocks),
                               target_block_id=target, endpoint=GridPos(*endpoint))


def test_target_adjacent_to_endpoint_one_move():
    level = sliding_level([sl.Block("t", sl.BlockShape.CELL_1X1, GridPos(2, 1),
                                    sl.MovementAxis.BOTH)])
    res = solve_sliding(level)
    assert res.solvable and res.optimal_moves == 1
    assert res.witness == (("t", Direction.RIGHT, 1),)


def test_endpoint_permanently_blocked_is_unsolvable():
    level = sliding_level([
        sl.Block("t", sl.BlockShape.CELL_1X1, GridPos(0, 0), sl.MovementAxis.BOTH),
        sl.Block("wall", sl.BlockShape.CELL_1X1, GridPos(2, 2), sl.MovementAxis.FIXED)])
    assert solve_sliding(level).solvable is False
    assert iddfs_sliding(level).solvable is False


def test_sliding_bfs_equals_iddfs_on_shipped_levels(default_pack):
    for level in default_pack.sliding_path:
        bfs = solve_sliding(level)
        idd = iddfs_sliding(level)
        assert bfs.optimal_moves == idd.optimal_moves
        assert len(bfs.witness) == bfs.optimal_moves


def test_sliding_distance_map_covers_start(default_pack):
    level = default_pack.sliding_path[0]
    dist = sliding_distance_map(level)
    assert dist[sliding_start_key(level)] == solve_sliding(level).optimal_moves


# -- graph --------------------------------------------------------------------

def graph_level(rows, cols, nodes, start, obstacles=()):
    return gr.GraphLevel(stage_id="x", rows=rows, cols=cols,
                         nodes=frozenset(GridPos(*n) for n in nodes),
                         obstacles=frozenset(GridPos(*o) for o in obstacles),
                         start=GridPos(*start))


def test_graph_line_one_move_witness():
    level = graph_level(1, 3, [(0, 0), (0, 1), (0, 2)], (0, 0))
    res = solve_graph(level)
    assert res.solvable and res.optimal_moves == 1
    assert res.witness == (Direction.RIGHT,)


def test_graph_square_three_moves():
    level = graph_level(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)], (0, 0))
    res = solve_graph(level)
    idd = iddfs_graph(level)
    assert res.optimal_moves == 3 == idd.optimal_moves


def test_graph_plus_shape_from_center_unsolvable():
    plus = [(1, 1), (0, 1), (2, 1), (1, 0), (1, 2)]
    level = graph_level(3, 3, plus, (1, 1))
    assert solve_graph(level).solvable is False
    assert iddfs_graph(level).solvable is False


def test_graph_witness_replays_through_engine(default_pack):
    from gamesight.games.core import Status
    for level in default_pack.graph:
        res = solve_graph(level)
        state = gr.begin(level)
        for direction in res.witness:
            step = gr.move(state, direction)
            assert step.accepted
            state = step.state
        assert state.status is Status.WON


# -- validation -----------------------------------------------------------------

def test_default_pack_validates(default_pack):
    report = validate_level_pack(default_pack)
    assert report.ok
    assert not report.failures()
    optima = {(r.game_id, r.stage_id): r.optimal_moves for r in report.levels}
    assert optima[("group_swap", "tutorial")] == 6


def test_move_limit_below_optimum_fails_validation(default_pack):
    import dataclasses
    bad_level = dataclasses.replace(default_pack.group_swap[0], move_limit=1)
    bad_pack = dataclasses.replace(default_pack, group_swap=(bad_level,))
    report = validate_level_pack(bad_pack)
    assert not report.ok
    failure = report.failures()[0]
    assert "move_limit 1 < optimum" in failure.detail
    assert failure.stage_id == "tutorial"


def test_empty_pack_validates_trivially(default_pack):
    import dataclasses
    empty = dataclasses.replace(default_pack, group_swap=(), sliding_path=(), memory=(),
                                shooter=(), graph=())
    report = validate_level_pack(empty)
    assert report.ok
    assert report.levels == ()
