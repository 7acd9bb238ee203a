"""Level-pack validation: every puzzle solvable, every move limit sufficient."""
from __future__ import annotations

from dataclasses import dataclass

from ..games.core import GameId
from ..games.levels import LevelPack
from .search import DEFAULT_STATE_CAP, solve_graph, solve_groupswap, solve_sliding


@dataclass(frozen=True)
class LevelReport:
    game_id: str
    stage_id: str
    solvable: bool
    optimal_moves: int | None
    move_limit: int | None
    states_expanded: int
    ok: bool
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    levels: tuple[LevelReport, ...]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.levels)

    def failures(self) -> tuple[LevelReport, ...]:
        return tuple(r for r in self.levels if not r.ok)

    def to_rows(self) -> list[dict]:
        return [
            {
                "game_id": r.game_id,
                "stage_id": r.stage_id,
                "solvable": r.solvable,
                "optimal_moves": r.optimal_moves,
                "move_limit": r.move_limit,
                "states_expanded": r.states_expanded,
                "ok": r.ok,
                "detail": r.detail,
            }
            for r in self.levels
        ]

    def render(self) -> str:
        header = f"{'game':<14}{'stage':<10}{'solvable':<10}{'optimum':<9}{'limit':<7}ok"
        lines = [header, "-" * len(header)]
        for r in self.levels:
            opt = "-" if r.optimal_moves is None else str(r.optimal_moves)
            lim = "-" if r.move_limit is None else str(r.move_limit)
            mark = "ok" if r.ok else f"FAIL ({r.detail})"
            lines.append(f"{r.game_id:<14}{r.stage_id:<10}{str(r.solvable).lower():<10}"
                         f"{opt:<9}{lim:<7}{mark}")
        return "\n".join(lines)


def _puzzle_report(game_id: str, stage_id: str, result, move_limit: int | None) -> LevelReport:
    if not result.solvable:
        return LevelReport(game_id, stage_id, False, None, move_limit,
                           result.states_expanded, False, "unsolvable")
    if move_limit is not None and move_limit < result.optimal_moves:
        return LevelReport(game_id, stage_id, True, result.optimal_moves, move_limit,
                           result.states_expanded, False,
                           f"move_limit {move_limit} < optimum {result.optimal_moves}")
    return LevelReport(game_id, stage_id, True, result.optimal_moves, move_limit,
                       result.states_expanded, True, "")


def validate_level_pack(pack: LevelPack, cap: int = DEFAULT_STATE_CAP) -> ValidationReport:
    reports: list[LevelReport] = []
    for level in pack.group_swap:
        result = solve_groupswap(level, cap)
        reports.append(_puzzle_report(GameId.GROUP_SWAP.value, level.stage_id, result,
                                      level.move_limit))
    for level in pack.sliding_path:
        result = solve_sliding(level, cap)
        reports.append(_puzzle_report(GameId.SLIDING_PATH.value, level.stage_id, result,
                                      level.move_limit))
    for level in pack.graph:
        result = solve_graph(level, cap)
        reports.append(_puzzle_report(GameId.GRAPH.value, level.stage_id, result, None))
    for level in pack.memory:
        # structural invariants are enforced at parse time; record the stage as checked
        reports.append(LevelReport(GameId.MEMORY.value, level.stage_id, True, None, None,
                                   0, True, ""))
    for level in pack.shooter:
        reports.append(LevelReport(GameId.SHOOTER.value, level.stage_id, True, None, None,
                                   0, True, ""))
    return ValidationReport(tuple(reports))
