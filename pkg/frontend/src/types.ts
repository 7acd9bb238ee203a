/** Wire-format types shared with the telemetry service. */

export type GameId =
  | "group_swap"
  | "sliding_path"
  | "memory"
  | "shooter"
  | "graph"
  | "meta";

export interface WireEvent {
  seq: number;
  timestamp_ms: number;
  game_id: GameId;
  stage_id: string;
  event_type: string;
  payload: Record<string, number | string | boolean>;
}

/** Event content before the buffer assigns seq and timestamp. */
export interface EventDraft {
  game_id: GameId;
  stage_id: string;
  event_type: string;
  payload: Record<string, number | string | boolean>;
}

export type Pos = readonly [number, number]; // row, col

export const posKey = (p: Pos): string => `${p[0]}:${p[1]}`;

export type Direction = "up" | "down" | "left" | "right";

export const DELTAS: Record<Direction, Pos> = {
  up: [-1, 0],
  down: [1, 0],
  left: [0, -1],
  right: [0, 1],
};

// -- level-pack documents (GET /levels/<game>) -------------------------------

export interface GroupSwapLevel {
  stage_id: string;
  rows: number;
  cols: number;
  group_a_cells: Pos[];
  group_b_cells: Pos[];
  move_limit: number;
  time_limit_s: number;
}

export type BlockShape = "cell_1x1" | "vert_1x2" | "horiz_2x1" | "square_2x2";
export type MovementAxis = "horizontal" | "vertical" | "both" | "fixed";

export interface SlidingBlock {
  id: string;
  shape: BlockShape;
  anchor: Pos;
  movement_axis: MovementAxis;
}

export interface SlidingLevel {
  stage_id: string;
  rows: number;
  cols: number;
  blocks: SlidingBlock[];
  target_block_id: string;
  endpoint: Pos;
  move_limit?: number | null;
  time_limit_s?: number | null;
}

export interface MemoryLevel {
  stage_id: string;
  pair_count: number;
  exposure_ms: number;
}

export interface GraphLevel {
  stage_id: string;
  rows: number;
  cols: number;
  nodes: Pos[];
  obstacles: Pos[];
  start: Pos;
  time_limit_s?: number | null;
}

export interface ShooterLevel {
  stage_id: string;
  lanes: number;
  rows: number;
  duration_ms: number;
  lives: number;
  max_lives: number;
  fall_period: number;
  spawn: {
    enemy: number;
    asteroid: number;
    gold: number;
    power_up: number;
    enemy_mix: [number, number, number];
  };
  challenges: {
    enemies_destroyed: number;
    asteroids_destroyed: number;
    gold_collected: number;
    score: number;
  };
}

export interface SideChallenge {
  id: string;
  prompt: string;
  answer: string;
  reward_tokens?: number;
}

export interface LevelPack {
  group_swap: GroupSwapLevel[];
  sliding_path: SlidingLevel[];
  memory: MemoryLevel[];
  graph: GraphLevel[];
  shooter: ShooterLevel[];
  side_challenges: SideChallenge[];
}

export type StageStatus = "playing" | "won" | "surrendered" | "skipped" | "dead";

/** Deterministic 32-bit RNG for client-side shuffles and spawns. */
export function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function hashSeed(text: string): number {
  let h = 2166136261 >>> 0; // FNV-1a
  for (let i = 0; i < text.length; i++) {
    h ^= text.charCodeAt(i);
    h = Math.imul(h, 16777619) >>> 0;
  }
  return h >>> 0;
}
