"""Search oracles and level-pack validation."""

from .search import (
    DEFAULT_STATE_CAP,
    SolveResult,
    groupswap_distance_map,
    groupswap_goal_key,
    groupswap_start_key,
    iddfs_graph,
    iddfs_groupswap,
    iddfs_sliding,
    sliding_distance_map,
    sliding_key_of_anchors,
    sliding_start_key,
    solve_graph,
    solve_groupswap,
    solve_sliding,
)
from .validate import LevelReport, ValidationReport, validate_level_pack

__all__ = [
    "DEFAULT_STATE_CAP",
    "SolveResult",
    "groupswap_distance_map",
    "groupswap_goal_key",
    "groupswap_start_key",
    "iddfs_graph",
    "iddfs_groupswap",
    "iddfs_sliding",
    "sliding_distance_map",
    "sliding_key_of_anchors",
    "sliding_start_key",
    "solve_graph",
    "solve_groupswap",
    "solve_sliding",
    "LevelReport",
    "ValidationReport",
    "validate_level_pack",
]
