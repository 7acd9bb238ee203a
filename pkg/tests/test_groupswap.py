import itertools

import pytest

from gamesight.errors import PreconditionError
from gamesight.games import groupswap as gs
from gamesight.games.core import GridPos, Status
from gamesight.solvers import solve_groupswap


def level_1x3():
    return gs.GroupSwapLevel(stage_id="t", rows=1, cols=3,
                             group_a_cells=frozenset({GridPos(0, 0)}),
                             group_b_cells=frozenset({GridPos(0, 2)}),
                             move_limit=10, time_limit_s=60)


def test_single_legal_move_accepted_and_counted():
    state = gs.begin(level_1x3())
    res = gs.apply(state, "a0", GridPos(0, 1))
    assert res.accepted
    assert res.state.moves_used == 1
    assert res.state.piece_positions["a0"] == GridPos(0, 1)
    assert [e.event_type for e in res.events] == ["move_accepted"]


def test_move_to_occupied_cell_rejected_without_mutation():
    level = gs.GroupSwapLevel(stage_id="t", rows=1, cols=2,
                              group_a_cells=frozenset({GridPos(0, 0)}),
                              group_b_cells=frozenset({GridPos(0, 1)}),
                              move_limit=5, time_limit_s=60)
    state = gs.begin(level)
    res = gs.apply(state, "a0", GridPos(0, 1))
    assert not res.accepted
    assert res.reason == "occupied"
    assert res.state is state
    assert res.state.moves_used == 0
    assert res.events == ()


def test_non_adjacent_and_out_of_bounds_rejected():
    state = gs.begin(level_1x3())
    assert gs.apply(state, "a0", GridPos(0, 2)).reason == "not_adjacent"
    far = gs.GroupSwapLevel(stage_id="t", rows=3, cols=3,
                            group_a_cells=frozenset({GridPos(0, 0)}),
                            group_b_cells=frozenset({GridPos(2, 2)}),
                            move_limit=20, time_limit_s=60)
    st = gs.begin(far)
    assert gs.apply(st, "a0", GridPos(2, 0)).reason == "not_adjacent"
    assert gs.apply(st, "a0", GridPos(0, -1)).reason == "out_of_bounds"


def test_move_on_terminal_state_raises():
    state = gs.begin(level_1x3())
    terminal = gs.GroupSwapState(level=state.level, piece_positions=state.piece_positions,
                                 status=Status.SURRENDERED)
    with pytest.raises(PreconditionError):
        gs.apply(terminal, "a0", GridPos(0, 1))


def test_is_solved_initial_false_and_swapped_true():
    level = level_1x3()
    state = gs.begin(level)
    assert not gs.is_solved(state)
    swapped = gs.GroupSwapState(level=level,
                                piece_positions={"a0": GridPos(0, 2), "b0": GridPos(0, 0)})
    assert gs.is_solved(swapped)


def test_is_solved_by_exhaustive_enumeration_1x4():
    # every placement of one a-piece and one b-piece on a 1x4 grid: solved iff
    # the occupied cells are exactly the opposite group's start cells
    level = gs.GroupSwapLevel(stage_id="t", rows=1, cols=4,
                              group_a_cells=frozenset({GridPos(0, 0)}),
                              group_b_cells=frozenset({GridPos(0, 3)}),
                              move_limit=10, time_limit_s=60)
    cells = [GridPos(0, c) for c in range(4)]
    for a_pos, b_pos in itertools.permutations(cells, 2):
        state = gs.GroupSwapState(level=level, piece_positions={"a0": a_pos, "b0": b_pos})
        expected = a_pos == GridPos(0, 3) and b_pos == GridPos(0, 0)
        assert gs.is_solved(state) == expected


def test_tutorial_solution_replay_reaches_won_in_optimal_moves(default_pack):
    level = default_pack.group_swap[0]
    result = solve_groupswap(level)
    assert result.solvable
    state = gs.begin(level)
    for src, tgt in result.witness:
        piece = next(p for p, pos in state.piece_positions.items() if pos == src)
        res = gs.apply(state, piece, tgt)
        assert res.accepted
        state = res.state
    assert state.status is Status.WON
    assert state.moves_used == result.optimal_moves


def test_win_emits_win_event():
    level = gs.GroupSwapLevel(stage_id="t", rows=2, cols=2,
                              group_a_cells=frozenset({GridPos(0, 0)}),
                              group_b_cells=frozenset({GridPos(0, 1)}),
                              move_limit=10, time_limit_s=60)
    result = solve_groupswap(level)
    state = gs.begin(level)
    events = []
    for src, tgt in result.witness:
        piece = next(p for p, pos in state.piece_positions.items() if pos == src)
        res = gs.apply(state, piece, tgt)
        state = res.state
        events.extend(res.events)
    assert state.status is Status.WON
    assert events[-1].event_type == "win"
