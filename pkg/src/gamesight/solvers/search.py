"""Exhaustive-search oracles for the three puzzle games.

Each puzzle gets two independent routes to the optimal accepted-move count:
a breadth-first search with its own move generator, and an iterative-deepening
depth-first search (with transposition pruning) whose move generation is
written separately.  Witnesses replay through the game engines, closing the
triangle between solver and rules.
"""
from __future__ import annotations

import sys
from collections import deque
from math import comb
from dataclasses import dataclass

from ..errors import CapacityError
from ..games.core import DIRECTION_ORDER, Direction, GridPos
from ..games.graph import GraphLevel
from ..games.groupswap import GroupSwapLevel
from ..games.sliding import SlidingPathLevel

DEFAULT_STATE_CAP = 5_000_000

_STEPS = ((-1, 0), (1, 0), (0, -1), (0, 1))


@dataclass(frozen=True)
class SolveResult:
    solvable: bool
    optimal_moves: int | None
    witness: tuple
    states_expanded: int


# ---------------------------------------------------------------------------
# group swap
# ---------------------------------------------------------------------------

GsKey = tuple[frozenset, frozenset]


def groupswap_start_key(level: GroupSwapLevel) -> GsKey:
    return (level.group_a_cells, level.group_b_cells)


def groupswap_goal_key(level: GroupSwapLevel) -> GsKey:
    return (level.group_b_cells, level.group_a_cells)


def _gs_moves(key: GsKey, rows: int, cols: int):
    """(src, tgt) single-cell steps in lexicographic (src, direction) order."""
    a, b = key
    occ = a | b
    for src in sorted(occ):
        for dr, dc in _STEPS:
            tgt = GridPos(src.row + dr, src.col + dc)
            if 0 <= tgt.row < rows and 0 <= tgt.col < cols and tgt not in occ:
                yield src, tgt


def _gs_apply(key: GsKey, move: tuple[GridPos, GridPos]) -> GsKey:
    a, b = key
    src, tgt = move
    if src in a:
        return (a - {src} | {tgt}, b)
    return (a, b - {src} | {tgt})


def solve_groupswap(level: GroupSwapLevel, cap: int = DEFAULT_STATE_CAP,
                    start_key: GsKey | None = None) -> SolveResult:
    start = start_key if start_key is not None else groupswap_start_key(level)
    goal = groupswap_goal_key(level)
    if start == goal:
        return SolveResult(True, 0, (), 0)
    parents: dict[GsKey, tuple[GsKey, tuple[GridPos, GridPos]] | None] = {start: None}
    queue = deque([start])
    expanded = 0
    while queue:
        key = queue.popleft()
        expanded += 1
        if expanded > cap:
            raise CapacityError(cap)
        for move in _gs_moves(key, level.rows, level.cols):
            nxt = _gs_apply(key, move)
            if nxt in parents:
                continue
            parents[nxt] = (key, move)
            if nxt == goal:
                return SolveResult(True, *_unwind(parents, nxt), expanded)
            queue.append(nxt)
    return SolveResult(False, None, (), expanded)


def groupswap_distance_map(level: GroupSwapLevel,
                           cap: int = DEFAULT_STATE_CAP) -> dict[GsKey, int]:
    """Moves-to-goal for every configuration reachable from the goal.

    Single-cell steps are reversible, so a BFS from the goal yields exact
    remaining distances usable as a perfect-play policy table.
    """
    goal = groupswap_goal_key(level)
    dist = {goal: 0}
    queue = deque([goal])
    expanded = 0
    while queue:
        key = queue.popleft()
        expanded += 1
        if expanded > cap:
            raise CapacityError(cap)
        for move in _gs_moves(key, level.rows, level.cols):
            nxt = _gs_apply(key, move)
            if nxt not in dist:
                dist[nxt] = dist[key] + 1
                queue.append(nxt)
    return dist


def iddfs_groupswap(level: GroupSwapLevel, cap: int = DEFAULT_STATE_CAP) -> SolveResult:
    """Iterative-deepening cross-check with independently written successors."""
    rows, cols = level.rows, level.cols
    start = groupswap_start_key(level)
    goal = groupswap_goal_key(level)

    def successors(key: GsKey):
        a, b = key
        occupied = frozenset(a) | b
        for group_is_a, cells in ((True, a), (False, b)):
            for cell in sorted(cells):
                for dr, dc in _STEPS:
                    nxt = GridPos(cell.row + dr, cell.col + dc)
                    if not (0 <= nxt.row < rows and 0 <= nxt.col < cols):
                        continue
                    if nxt in occupied:
                        continue
                    if group_is_a:
                        yield (cell, nxt), (a - {cell} | {nxt}, b)
                    else:
                        yield (cell, nxt), (a, b - {cell} | {nxt})

    goal_a, goal_b = goal

    def admissible(key: GsKey) -> int:
        # sum of min Manhattan distances to the target cell set, per group;
        # one move advances one piece one cell, so this never overestimates
        a, b = key
        total = 0
        for cells, targets in ((a, goal_a), (b, goal_b)):
            for cell in cells:
                total += min(abs(cell.row - t.row) + abs(cell.col - t.col) for t in targets)
        return total

    cells = level.rows * level.cols
    na, nb = len(level.group_a_cells), len(level.group_b_cells)
    bound = comb(cells, na) * comb(cells - na, nb)
    return _iddfs(start, lambda k: k == goal, successors, cap, admissible, bound)


# ---------------------------------------------------------------------------
# sliding path
# ---------------------------------------------------------------------------

SlKey = tuple[GridPos, ...]


def sliding_start_key(level: SlidingPathLevel) -> SlKey:
    return tuple(b.anchor for b in level.blocks)


def sliding_key_of_anchors(level: SlidingPathLevel, anchors: dict[str, GridPos]) -> SlKey:
    return tuple(anchors[b.id] for b in level.blocks)


def _sl_cells(level: SlidingPathLevel, idx: int, anchor: GridPos):
    for dr, dc in level.blocks[idx].shape.offsets:
        yield GridPos(anchor.row + dr, anchor.col + dc)


def _sl_is_goal(level: SlidingPathLevel, key: SlKey) -> bool:
    target_idx = next(i for i, b in enumerate(level.blocks) if b.id == level.target_block_id)
    return GridPos(*level.endpoint) in set(_sl_cells(level, target_idx, key[target_idx]))


def _sl_moves(level: SlidingPathLevel, key: SlKey):
    """(block_idx, direction, distance) moves in deterministic order."""
    occupied_by: dict[GridPos, int] = {}
    for i, anchor in enumerate(key):
        for cell in _sl_cells(level, i, anchor):
            occupied_by[cell] = i
    for i, block in enumerate(level.blocks):
        for direction in DIRECTION_ORDER:
            if not block.movement_axis.allows(direction):
                continue
            dr, dc = direction.delta
            dist = 0
            while True:
                dist += 1
                anchor = GridPos(key[i].row + dr * dist, key[i].col + dc * dist)
                blocked = False
                for cell in _sl_cells(level, i, anchor):
                    if not (0 <= cell.row < level.rows and 0 <= cell.col < level.cols):
                        blocked = True
                        break
                    owner = occupied_by.get(cell)
                    if owner is not None and owner != i:
                        blocked = True
                        break
                if blocked:
                    break
                yield i, direction, dist, key[:i] + (anchor,) + key[i + 1:]


def solve_sliding(level: SlidingPathLevel, cap: int = DEFAULT_STATE_CAP) -> SolveResult:
    start = sliding_start_key(level)
    if _sl_is_goal(level, start):
        return SolveResult(True, 0, (), 0)
    parents: dict[SlKey, tuple[SlKey, tuple] | None] = {start: None}
    queue = deque([start])
    expanded = 0
    while queue:
        key = queue.popleft()
        expanded += 1
        if expanded > cap:
            raise CapacityError(cap)
        for i, direction, dist, nxt in _sl_moves(level, key):
            if nxt in parents:
                continue
            move = (level.blocks[i].id, direction, dist)
            parents[nxt] = (key, move)
            if _sl_is_goal(level, nxt):
                return SolveResult(True, *_unwind(parents, nxt), expanded)
            queue.append(nxt)
    return SolveResult(False, None, (), expanded)


def sliding_distance_map(level: SlidingPathLevel,
                         cap: int = DEFAULT_STATE_CAP) -> dict[SlKey, int]:
    """Moves-to-goal over the component reachable from the start.

    Slides are reversible, so a forward sweep plus a multi-source BFS from the
    goal states gives exact distances.
    """
    start = sliding_start_key(level)
    component = {start}
    queue = deque([start])
    expanded = 0
    goals = []
    while queue:
        key = queue.popleft()
        expanded += 1
        if expanded > cap:
            raise CapacityError(cap)
        if _sl_is_goal(level, key):
            goals.append(key)
        for *_, nxt in _sl_moves(level, key):
            if nxt not in component:
                component.add(nxt)
                queue.append(nxt)
    dist = {g: 0 for g in goals}
    queue = deque(goals)
    while queue:
        key = queue.popleft()
        for *_, nxt in _sl_moves(level, key):
            if nxt in component and nxt not in dist:
                dist[nxt] = dist[key] + 1
                queue.append(nxt)
    return dist


def iddfs_sliding(level: SlidingPathLevel, cap: int = DEFAULT_STATE_CAP) -> SolveResult:
    rows, cols = level.rows, level.cols
    shapes = [b.shape.offsets for b in level.blocks]
    axes = [b.movement_axis for b in level.blocks]
    target_idx = next(i for i, b in enumerate(level.blocks) if b.id == level.target_block_id)
    endpoint = GridPos(*level.endpoint)

    def is_goal(key: SlKey) -> bool:
        a = key[target_idx]
        return any(endpoint == (a.row + dr, a.col + dc) for dr, dc in shapes[target_idx])

    def successors(key: SlKey):
        cells = set()
        for i, anchor in enumerate(key):
            for dr, dc in shapes[i]:
                cells.add((anchor.row + dr, anchor.col + dc))
        for i in range(len(key)):
            own = {(key[i].row + dr, key[i].col + dc) for dr, dc in shapes[i]}
            others = cells - own
            for direction in DIRECTION_ORDER:
                if not axes[i].allows(direction):
                    continue
                dr, dc = direction.delta
                step = 0
                while True:
                    step += 1
                    anchor = GridPos(key[i].row + dr * step, key[i].col + dc * step)
                    spots = {(anchor.row + odr, anchor.col + odc) for odr, odc in shapes[i]}
                    if any(not (0 <= r < rows and 0 <= c < cols) for r, c in spots):
                        break
                    if spots & others:
                        break
                    yield (level.blocks[i].id, direction, step), key[:i] + (anchor,) + key[i + 1:]

    covering = [GridPos(endpoint.row - dr, endpoint.col - dc) for dr, dc in shapes[target_idx]]

    def admissible(key: SlKey) -> int:
        # a slide covers one axis per move, so the target block needs at least
        # one move per differing axis to its nearest endpoint-covering anchor
        a = key[target_idx]
        return min((a.row != g.row) + (a.col != g.col) for g in covering)

    bound = 1
    for offs in shapes:
        h = max(dr for dr, _ in offs) + 1
        w = max(dc for _, dc in offs) + 1
        bound *= max(1, (rows - h + 1) * (cols - w + 1))
    return _iddfs(sliding_start_key(level), is_goal, successors, cap, admissible, bound)


# ---------------------------------------------------------------------------
# graph traversal
# ---------------------------------------------------------------------------

GrKey = tuple[GridPos, frozenset]


def _gr_slide(level: GraphLevel, current: GridPos, visited: frozenset,
              direction: Direction) -> GridPos | None:
    dr, dc = direction.delta
    pos = current
    moved = False
    while True:
        nxt = GridPos(pos.row + dr, pos.col + dc)
        if (not (0 <= nxt.row < level.rows and 0 <= nxt.col < level.cols)
                or nxt not in level.nodes or nxt in level.obstacles or nxt in visited):
            break
        visited = visited | {nxt}
        pos = nxt
        moved = True
    return pos if moved else None


def solve_graph(level: GraphLevel, cap: int = DEFAULT_STATE_CAP,
                start_key: GrKey | None = None) -> SolveResult:
    start = start_key if start_key is not None else (level.start, frozenset({level.start}))
    if start[1] == level.nodes:
        return SolveResult(True, 0, (), 0)
    parents: dict[GrKey, tuple[GrKey, Direction] | None] = {start: None}
    queue = deque([start])
    expanded = 0
    while queue:
        key = queue.popleft()
        expanded += 1
        if expanded > cap:
            raise CapacityError(cap)
        current, visited = key
        for direction in DIRECTION_ORDER:
            landed = _gr_slide(level, current, visited, direction)
            if landed is None:
                continue
            path_cells = _cells_between(current, landed)
            nxt = (landed, visited | frozenset(path_cells))
            if nxt in parents:
                continue
            parents[nxt] = (key, direction)
            if nxt[1] == level.nodes:
                return SolveResult(True, *_unwind(parents, nxt), expanded)
            queue.append(nxt)
    return SolveResult(False, None, (), expanded)


def _cells_between(a: GridPos, b: GridPos) -> list[GridPos]:
    """Cells strictly after `a` up to and including `b` along a straight line."""
    dr = (b.row > a.row) - (b.row < a.row)
    dc = (b.col > a.col) - (b.col < a.col)
    cells = []
    pos = a
    while pos != b:
        pos = GridPos(pos.row + dr, pos.col + dc)
        cells.append(pos)
    return cells


def iddfs_graph(level: GraphLevel, cap: int = DEFAULT_STATE_CAP) -> SolveResult:
    nodes = level.nodes
    obstacles = level.obstacles
    rows, cols = level.rows, level.cols

    def successors(key: GrKey):
        current, visited = key
        for direction in DIRECTION_ORDER:
            dr, dc = direction.delta
            r, c = current
            gained = []
            while True:
                r2, c2 = r + dr, c + dc
                cell = GridPos(r2, c2)
                if not (0 <= r2 < rows and 0 <= c2 < cols):
                    break
                if cell not in nodes or cell in obstacles or cell in visited:
                    break
                gained.append(cell)
                r, c = r2, c2
            if gained:
                yield direction, (GridPos(r, c), visited | frozenset(gained))

    start = (level.start, frozenset({level.start}))
    longest_slide = max(rows, cols) - 1 or 1

    def admissible(key: GrKey) -> int:
        # every move visits at least one and at most longest_slide new nodes
        return -(-(len(nodes) - len(key[1])) // longest_slide)

    # every move visits at least one new node, so |nodes| - 1 moves suffice
    return _iddfs(start, lambda k: k[1] == nodes, successors, cap, admissible,
                  max(0, len(nodes) - 1))


# ---------------------------------------------------------------------------
# shared machinery
# ---------------------------------------------------------------------------

def _unwind(parents: dict, key) -> tuple[int, tuple]:
    moves = []
    while parents[key] is not None:
        key, move = parents[key]
        moves.append(move)
    moves.reverse()
    return len(moves), tuple(moves)


def _iddfs(start, is_goal, successors, cap: int, heuristic=None,
           max_useful_depth: int | None = None) -> SolveResult:
    """Depth-first iterative deepening with transposition pruning.

    Failure memoization is keyed on remaining budget and records only
    unconstrained failures, which keeps the first successful depth equal to
    the true optimum.  An optional admissible heuristic tightens the cutoff
    without affecting it.  Unsolvable instances terminate when an iteration
    completes without hitting the depth cutoff, or when the depth exceeds
    `max_useful_depth` (an upper bound on the state count: a shortest solution
    never repeats a state, so no longer witness can exist).
    """
    expanded = 0
    depth = 0
    old_limit = sys.getrecursionlimit()
    try:
        while True:
            if max_useful_depth is not None and depth > max_useful_depth:
                return SolveResult(False, None, (), expanded)
            sys.setrecursionlimit(max(old_limit, depth * 4 + 1000))
            memo: dict = {}
            path: list = []
            cutoff = False

            def dfs(key, remaining: int) -> bool:
                nonlocal expanded, cutoff
                expanded += 1
                if expanded > cap:
                    raise CapacityError(cap)
                if is_goal(key):
                    return True
                if remaining == 0 or (heuristic is not None and heuristic(key) > remaining):
                    cutoff = True
                    return False
                if memo.get(key, -1) >= remaining:
                    return False
                for move, nxt in successors(key):
                    path.append(move)
                    if dfs(nxt, remaining - 1):
                        return True
                    path.pop()
                memo[key] = remaining
                return False

            if dfs(start, depth):
                return SolveResult(True, depth, tuple(path), expanded)
            if not cutoff:
                return SolveResult(False, None, (), expanded)
            depth += 1
    finally:
        sys.setrecursionlimit(old_limit)
