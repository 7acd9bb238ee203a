/**
 * Client-side rule evaluation for the deterministic games.
 *
 * These mirror the server engine rules exactly: rejected moves change nothing
 * and emit nothing; accepted moves produce the same event payloads the
 * authoritative engine would, so a recorded session replays 1:1 server-side.
 */
import {
  DELTAS,
  Direction,
  EventDraft,
  GraphLevel,
  GroupSwapLevel,
  MemoryLevel,
  Pos,
  SlidingBlock,
  SlidingLevel,
  posKey,
} from "../types.js";

export interface MoveOutcome {
  accepted: boolean;
  reason?: string;
  events: EventDraft[];
}

const inBounds = (p: Pos, rows: number, cols: number): boolean =>
  p[0] >= 0 && p[0] < rows && p[1] >= 0 && p[1] < cols;

// -- group swap ---------------------------------------------------------------

export class GroupSwapGame {
  readonly level: GroupSwapLevel;
  pieces = new Map<string, Pos>();
  movesUsed = 0;
  won = false;

  constructor(level: GroupSwapLevel) {
    this.level = level;
    const sortedA = [...level.group_a_cells].sort(comparePos);
    const sortedB = [...level.group_b_cells].sort(comparePos);
    sortedA.forEach((cell, i) => this.pieces.set(`a${i}`, cell));
    sortedB.forEach((cell, i) => this.pieces.set(`b${i}`, cell));
  }

  pieceAt(pos: Pos): string | undefined {
    for (const [id, p] of this.pieces) if (posKey(p) === posKey(pos)) return id;
    return undefined;
  }

  private occupied(): Set<string> {
    return new Set([...this.pieces.values()].map(posKey));
  }

  isSolved(): boolean {
    const aCells = new Set(
      [...this.pieces].filter(([id]) => id.startsWith("a")).map(([, p]) => posKey(p)),
    );
    const bCells = new Set(
      [...this.pieces].filter(([id]) => id.startsWith("b")).map(([, p]) => posKey(p)),
    );
    const targetsA = new Set(this.level.group_b_cells.map(posKey));
    const targetsB = new Set(this.level.group_a_cells.map(posKey));
    return setsEqual(aCells, targetsA) && setsEqual(bCells, targetsB);
  }

  apply(pieceId: string, target: Pos): MoveOutcome {
    if (this.won) return { accepted: false, reason: "terminal", events: [] };
    const source = this.pieces.get(pieceId);
    if (!source) return { accepted: false, reason: "unknown_piece", events: [] };
    if (!inBounds(target, this.level.rows, this.level.cols))
      return { accepted: false, reason: "out_of_bounds", events: [] };
    const distance =
      Math.abs(target[0] - source[0]) + Math.abs(target[1] - source[1]);
    if (distance !== 1) return { accepted: false, reason: "not_adjacent", events: [] };
    if (this.occupied().has(posKey(target)))
      return { accepted: false, reason: "occupied", events: [] };
    if (this.movesUsed >= this.level.move_limit)
      return { accepted: false, reason: "move_limit_reached", events: [] };

    this.pieces.set(pieceId, target);
    this.movesUsed += 1;
    const events: EventDraft[] = [
      {
        game_id: "group_swap",
        stage_id: this.level.stage_id,
        event_type: "move_accepted",
        payload: {
          piece: pieceId,
          from: posKey(source),
          to: posKey(target),
          moves_used: this.movesUsed,
        },
      },
    ];
    if (this.isSolved()) {
      this.won = true;
      events.push({
        game_id: "group_swap",
        stage_id: this.level.stage_id,
        event_type: "win",
        payload: { moves_used: this.movesUsed },
      });
    }
    return { accepted: true, events };
  }

  legalTargets(pieceId: string): Pos[] {
    const source = this.pieces.get(pieceId);
    if (!source || this.won) return [];
    const occ = this.occupied();
    return (Object.values(DELTAS) as Pos[])
      .map(([dr, dc]): Pos => [source[0] + dr, source[1] + dc])
      .filter(
        (p) => inBounds(p, this.level.rows, this.level.cols) && !occ.has(posKey(p)),
      );
  }
}

const comparePos = (a: Pos, b: Pos): number => a[0] - b[0] || a[1] - b[1];

const setsEqual = (a: Set<string>, b: Set<string>): boolean =>
  a.size === b.size && [...a].every((x) => b.has(x));

// -- sliding path ---------------------------------------------------------------

const SHAPE_OFFSETS: Record<string, Pos[]> = {
  cell_1x1: [[0, 0]],
  vert_1x2: [[0, 0], [1, 0]],
  horiz_2x1: [[0, 0], [0, 1]],
  square_2x2: [[0, 0], [0, 1], [1, 0], [1, 1]],
};

const axisAllows = (axis: string, direction: Direction): boolean => {
  if (axis === "fixed") return false;
  if (axis === "both") return true;
  const horizontal = direction === "left" || direction === "right";
  return horizontal === (axis === "horizontal");
};

export class SlidingGame {
  readonly level: SlidingLevel;
  anchors = new Map<string, Pos>();
  movesUsed = 0;
  won = false;

  constructor(level: SlidingLevel) {
    this.level = level;
    for (const block of level.blocks) this.anchors.set(block.id, block.anchor);
    if (this.isSolved()) this.won = true;
  }

  private block(id: string): SlidingBlock | undefined {
    return this.level.blocks.find((b) => b.id === id);
  }

  cells(blockId: string, anchor?: Pos): Pos[] {
    const block = this.block(blockId)!;
    const a = anchor ?? this.anchors.get(blockId)!;
    return SHAPE_OFFSETS[block.shape].map(([dr, dc]): Pos => [a[0] + dr, a[1] + dc]);
  }

  private occupiedExcept(blockId: string): Set<string> {
    const out = new Set<string>();
    for (const block of this.level.blocks) {
      if (block.id === blockId) continue;
      for (const cell of this.cells(block.id)) out.add(posKey(cell));
    }
    return out;
  }

  isSolved(): boolean {
    return this.cells(this.level.target_block_id).some(
      (c) => posKey(c) === posKey(this.level.endpoint),
    );
  }

  apply(blockId: string, direction: Direction, distance: number): MoveOutcome {
    if (this.won) return { accepted: false, reason: "terminal", events: [] };
    const block = this.block(blockId);
    if (!block || distance < 1)
      return { accepted: false, reason: "bad_input", events: [] };
    if (!axisAllows(block.movement_axis, direction))
      return { accepted: false, reason: "axis_forbidden", events: [] };
    const occ = this.occupiedExcept(blockId);
    const [dr, dc] = DELTAS[direction];
    const anchor = this.anchors.get(blockId)!;
    for (let step = 1; step <= distance; step++) {
      const candidate: Pos = [anchor[0] + dr * step, anchor[1] + dc * step];
      for (const cell of this.cells(blockId, candidate)) {
        if (!inBounds(cell, this.level.rows, this.level.cols))
          return { accepted: false, reason: "out_of_bounds", events: [] };
        if (occ.has(posKey(cell)))
          return { accepted: false, reason: "blocked", events: [] };
      }
    }
    this.anchors.set(blockId, [anchor[0] + dr * distance, anchor[1] + dc * distance]);
    this.movesUsed += 1;
    const events: EventDraft[] = [
      {
        game_id: "sliding_path",
        stage_id: this.level.stage_id,
        event_type: "move_accepted",
        payload: {
          block: blockId,
          direction,
          cells: distance,
          moves_used: this.movesUsed,
        },
      },
    ];
    if (this.isSolved()) {
      this.won = true;
      events.push({
        game_id: "sliding_path",
        stage_id: this.level.stage_id,
        event_type: "win",
        payload: { moves_used: this.movesUsed },
      });
    }
    return { accepted: true, events };
  }
}

// -- memory ------------------------------------------------------------------------

export class MemoryGame {
  readonly level: MemoryLevel;
  readonly layout: number[];
  revealed = new Set<number>();
  phase: "exposure" | "recall" = "exposure";
  guessesTotal = 0;
  guessesCorrect = 0;
  guessesIncorrect = 0;
  won = false;

  constructor(level: MemoryLevel, rand: () => number) {
    this.level = level;
    const numbers: number[] = [];
    for (let n = 1; n <= level.pair_count; n++) numbers.push(n, n);
    for (let i = numbers.length - 1; i > 0; i--) {
      const j = Math.floor(rand() * (i + 1));
      [numbers[i], numbers[j]] = [numbers[j], numbers[i]];
    }
    this.layout = numbers;
  }

  reveal(): void {
    this.phase = "recall";
  }

  guess(slotA: number, slotB: number): MoveOutcome & { correct?: boolean } {
    const n = this.layout.length;
    if (this.won || this.phase !== "recall")
      return { accepted: false, reason: "phase", events: [] };
    if (
      slotA === slotB ||
      slotA < 0 || slotA >= n || slotB < 0 || slotB >= n ||
      this.revealed.has(slotA) || this.revealed.has(slotB)
    )
      return { accepted: false, reason: "bad_slots", events: [] };
    const correct = this.layout[slotA] === this.layout[slotB];
    this.guessesTotal += 1;
    if (correct) {
      this.guessesCorrect += 1;
      this.revealed.add(slotA).add(slotB);
    } else {
      this.guessesIncorrect += 1;
    }
    const events: EventDraft[] = [
      {
        game_id: "memory",
        stage_id: this.level.stage_id,
        event_type: "guess",
        payload: {
          slot_a: slotA,
          slot_b: slotB,
          correct,
          guesses_total: this.guessesTotal,
        },
      },
    ];
    if (this.revealed.size === n) {
      this.won = true;
      events.push({
        game_id: "memory",
        stage_id: this.level.stage_id,
        event_type: "win",
        payload: { guesses_total: this.guessesTotal },
      });
    }
    return { accepted: true, correct, events };
  }
}

// -- graph traversal -----------------------------------------------------------------

export class GraphGame {
  readonly level: GraphLevel;
  visited: Pos[] = [];
  status: "playing" | "won" | "stuck" = "playing";

  private nodeSet: Set<string>;
  private obstacleSet: Set<string>;
  private visitedSet = new Set<string>();

  constructor(level: GraphLevel) {
    this.level = level;
    this.nodeSet = new Set(level.nodes.map(posKey));
    this.obstacleSet = new Set(level.obstacles.map(posKey));
    this.visited.push(level.start);
    this.visitedSet.add(posKey(level.start));
    this.updateStatus();
  }

  get current(): Pos {
    return this.visited[this.visited.length - 1];
  }

  private slide(from: Pos, direction: Direction): Pos[] {
    const [dr, dc] = DELTAS[direction];
    const path: Pos[] = [];
    let pos = from;
    for (;;) {
      const next: Pos = [pos[0] + dr, pos[1] + dc];
      const key = posKey(next);
      if (
        !inBounds(next, this.level.rows, this.level.cols) ||
        !this.nodeSet.has(key) ||
        this.obstacleSet.has(key) ||
        this.visitedSet.has(key)
      )
        break;
      path.push(next);
      pos = next;
    }
    return path;
  }

  legalDirections(): Direction[] {
    if (this.status !== "playing") return [];
    return (Object.keys(DELTAS) as Direction[]).filter(
      (d) => this.slide(this.current, d).length > 0,
    );
  }

  private updateStatus(): "playing" | "won" | "stuck" {
    if (this.visitedSet.size === this.nodeSet.size) this.status = "won";
    else if (
      (Object.keys(DELTAS) as Direction[]).every(
        (d) => this.slide(this.current, d).length === 0,
      )
    )
      this.status = "stuck";
    return this.status;
  }

  move(direction: Direction): MoveOutcome {
    if (this.status !== "playing")
      return { accepted: false, reason: "terminal", events: [] };
    const path = this.slide(this.current, direction);
    if (path.length === 0)
      return { accepted: false, reason: "zero_advance", events: [] };
    for (const cell of path) {
      this.visited.push(cell);
      this.visitedSet.add(posKey(cell));
    }
    const status = this.updateStatus();
    const events: EventDraft[] = [
      {
        game_id: "graph",
        stage_id: this.level.stage_id,
        event_type: "move_accepted",
        payload: { direction, advanced: path.length, visited: this.visited.length },
      },
    ];
    if (status === "won")
      events.push({
        game_id: "graph",
        stage_id: this.level.stage_id,
        event_type: "win",
        payload: { visited: this.visited.length },
      });
    else if (status === "stuck")
      events.push({
        game_id: "graph",
        stage_id: this.level.stage_id,
        event_type: "lose",
        payload: { reason: "stuck", visited: this.visited.length },
      });
    return { accepted: true, events };
  }
}
