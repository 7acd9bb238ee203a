"""Solve every shipped level two independent ways and validate the pack."""
from gamesight.games.levels import load_default_pack
from gamesight.solvers import (
    iddfs_groupswap,
    solve_graph,
    solve_groupswap,
    solve_sliding,
    validate_level_pack,
)

pack = load_default_pack()

level = pack.group_swap[1]
bfs = solve_groupswap(level)
idd = iddfs_groupswap(level)
print(f"group swap '{level.stage_id}': BFS optimum {bfs.optimal_moves} "
      f"({bfs.states_expanded} states), iterative deepening agrees: "
      f"{idd.optimal_moves == bfs.optimal_moves}")
print("  witness:", " ".join(f"{tuple(s)}->{tuple(t)}" for s, t in bfs.witness[:4]), "...")

for level in pack.sliding_path:
    print(f"sliding '{level.stage_id}': optimum {solve_sliding(level).optimal_moves} "
          f"moves (limit {level.move_limit})")

for level in pack.graph:
    res = solve_graph(level)
    print(f"graph '{level.stage_id}': optimum {res.optimal_moves} slides, "
          f"witness {[d.value for d in res.witness]}")

print()
print(validate_level_pack(pack).render())
