/**
 * Client-side shooter, a faithful port of the authoritative engine's fixed
 * 50 ms tick: input -> projectile motion -> hits -> descent (-> hits again)
 * -> player contact -> bottom exits -> spawns -> status check.
 *
 * Event payloads match the server engine's, with one client extra: a `tick`
 * key on gameplay events, which lets the conformance replay tool reconstruct
 * the input and spawn timeline from the recorded log alone.
 */
import { EventDraft, ShooterLevel } from "../types.js";

export const TICK_MS = 50;

export type ShooterInput = "none" | "left" | "right" | "fire";

const SCORE_VALUES: Record<string, number> = {
  enemy_offensive: 10,
  enemy_defensive: 15,
  enemy_score: 50,
  asteroid: 5,
  gold: 20,
};

const ENEMY_KINDS = ["enemy_offensive", "enemy_defensive", "enemy_score"] as const;

export const CHALLENGE_NAMES = [
  "life_survival",
  "enemy_elimination",
  "asteroid_destruction",
  "gold_collection",
  "no_weapon",
  "score_achievement",
] as const;

interface Entity {
  id: number;
  kind: string;
  row: number;
  col: number;
  hp: number;
}

export interface ShooterCounters {
  shots_fired: number;
  enemies_generated: number;
  enemies_destroyed: number;
  enemy_collisions: number;
  asteroids_generated: number;
  asteroids_destroyed: number;
  asteroid_collisions: number;
  gold_generated: number;
  gold_collected: number;
  gold_lost: number;
  gold_exploded: number;
  powerups_generated: number;
  powerups_collected: number;
  moves_left: number;
  moves_right: number;
  boundary_exits_left: number;
  boundary_exits_right: number;
}

export class ShooterGame {
  readonly level: ShooterLevel;
  tick = 0;
  elapsedMs = 0;
  lives: number;
  score = 0;
  playerCol: number;
  status: "playing" | "won" | "dead" = "playing";
  counters: ShooterCounters = {
    shots_fired: 0,
    enemies_generated: 0,
    enemies_destroyed: 0,
    enemy_collisions: 0,
    asteroids_generated: 0,
    asteroids_destroyed: 0,
    asteroid_collisions: 0,
    gold_generated: 0,
    gold_collected: 0,
    gold_lost: 0,
    gold_exploded: 0,
    powerups_generated: 0,
    powerups_collected: 0,
    moves_left: 0,
    moves_right: 0,
    boundary_exits_left: 0,
    boundary_exits_right: 0,
  };
  challengeFlags: boolean[] = [false, false, false, false, false, false];

  enemies: Entity[] = [];
  asteroids: Entity[] = [];
  powerUps: Entity[] = [];
  gold: Entity[] = [];
  projectiles: { row: number; col: number }[] = [];
  private nextEntityId = 0;
  private rand: () => number;

  constructor(level: ShooterLevel, rand: () => number) {
    this.level = level;
    this.lives = level.lives;
    this.playerCol = Math.floor(level.lanes / 2);
    this.rand = rand;
  }

  get playerRow(): number {
    return this.level.rows - 1;
  }

  private draft(eventType: string,
                payload: Record<string, number | string | boolean>): EventDraft {
    return {
      game_id: "shooter",
      stage_id: this.level.stage_id,
      event_type: eventType,
      payload: { ...payload, tick: this.tick },
    };
  }

  private resolveHits(events: EventDraft[]): void {
    const remaining: { row: number; col: number }[] = [];
    for (const p of this.projectiles) {
      let hit = false;
      for (let i = 0; i < this.enemies.length; i++) {
        const e = this.enemies[i];
        if (e.row === p.row && e.col === p.col) {
          hit = true;
          if (e.hp > 1) {
            this.enemies[i] = { ...e, hp: e.hp - 1 };
          } else {
            this.enemies.splice(i, 1);
            this.counters.enemies_destroyed += 1;
            this.score += SCORE_VALUES[e.kind];
            events.push(this.draft("collision", {
              kind: "enemy", with: "projectile", enemy_kind: e.kind, entity: e.id,
            }));
          }
          break;
        }
      }
      if (!hit) {
        for (let i = 0; i < this.asteroids.length; i++) {
          const a = this.asteroids[i];
          if (a.row === p.row && a.col === p.col) {
            hit = true;
            this.asteroids.splice(i, 1);
            this.counters.asteroids_destroyed += 1;
            this.score += SCORE_VALUES.asteroid;
            events.push(this.draft("collision", {
              kind: "asteroid", with: "projectile", entity: a.id,
            }));
            break;
          }
        }
      }
      if (!hit) {
        for (let i = 0; i < this.gold.length; i++) {
          const g = this.gold[i];
          if (g.row === p.row && g.col === p.col) {
            hit = true;
            this.gold.splice(i, 1);
            this.counters.gold_exploded += 1;
            events.push(this.draft("collision", {
              kind: "gold", with: "projectile", entity: g.id,
            }));
            break;
          }
        }
      }
      if (!hit) remaining.push(p);
    }
    this.projectiles = remaining;
  }

  private updateChallengeFlags(won: boolean, lostAnyLife: boolean): void {
    const goals = this.level.challenges;
    const c = this.counters;
    const prev = this.challengeFlags;
    this.challengeFlags = [
      prev[0] || (won && !lostAnyLife),
      prev[1] || c.enemies_destroyed >= goals.enemies_destroyed,
      prev[2] || c.asteroids_destroyed >= goals.asteroids_destroyed,
      prev[3] || c.gold_collected >= goals.gold_collected,
      prev[4] || (won && c.shots_fired === 0),
      prev[5] || this.score >= goals.score,
    ];
  }

  private challengePayload(): Record<string, boolean> {
    const out: Record<string, boolean> = {};
    CHALLENGE_NAMES.forEach((name, i) => {
      out[`challenge_${name}`] = this.challengeFlags[i];
    });
    return out;
  }

  /** Injected spawn hook for deterministic tests; defaults to the RNG table. */
  spawnOverride: ((tick: number) => { kind: string; lane: number }[]) | null = null;

  step(input: ShooterInput): EventDraft[] {
    if (this.status !== "playing") throw new Error("tick on terminal state");
    const events: EventDraft[] = [];
    const lvl = this.level;
    this.tick += 1;
    this.elapsedMs += TICK_MS;

    // 1. input
    if (input === "left" || input === "right") {
      let wrapped = "";
      if (input === "left") {
        this.counters.moves_left += 1;
        this.playerCol -= 1;
        if (this.playerCol < 0) {
          this.playerCol = lvl.lanes - 1;
          this.counters.boundary_exits_left += 1;
          wrapped = "left";
        }
      } else {
        this.counters.moves_right += 1;
        this.playerCol += 1;
        if (this.playerCol >= lvl.lanes) {
          this.playerCol = 0;
          this.counters.boundary_exits_right += 1;
          wrapped = "right";
        }
      }
      const payload: Record<string, number | string> = {
        direction: input, col: this.playerCol,
      };
      if (wrapped) payload.boundary_exit = wrapped;
      events.push(this.draft("move_accepted", payload));
    } else if (input === "fire") {
      this.counters.shots_fired += 1;
      this.projectiles.push({ row: this.playerRow - 1, col: this.playerCol });
      events.push(this.draft("shot", {
        col: this.playerCol, shots_fired: this.counters.shots_fired,
      }));
    }

    // 2-3. projectile motion and hits
    this.projectiles = this.projectiles
      .map((p) => ({ row: p.row - 1, col: p.col }))
      .filter((p) => p.row >= 0);
    this.resolveHits(events);

    // 4-5. descent plus a second hit pass
    if (this.tick % lvl.fall_period === 0) {
      for (const list of [this.enemies, this.asteroids, this.powerUps, this.gold])
        for (const e of list) e.row += 1;
      this.resolveHits(events);
    }

    // 6. player contact
    const atPlayer = (e: Entity) =>
      e.row === this.playerRow && e.col === this.playerCol;
    this.enemies = this.enemies.filter((e) => {
      if (!atPlayer(e)) return true;
      this.lives = Math.max(0, this.lives - 1);
      this.counters.enemy_collisions += 1;
      events.push(this.draft("collision", {
        kind: "enemy", with: "player", enemy_kind: e.kind, entity: e.id,
        lives: this.lives,
      }));
      return false;
    });
    this.asteroids = this.asteroids.filter((a) => {
      if (!atPlayer(a)) return true;
      this.lives = Math.max(0, this.lives - 1);
      this.counters.asteroid_collisions += 1;
      events.push(this.draft("collision", {
        kind: "asteroid", with: "player", entity: a.id, lives: this.lives,
      }));
      return false;
    });
    this.gold = this.gold.filter((g) => {
      if (!atPlayer(g)) return true;
      this.counters.gold_collected += 1;
      this.score += SCORE_VALUES.gold;
      events.push(this.draft("collect", { kind: "gold", entity: g.id }));
      return false;
    });
    this.powerUps = this.powerUps.filter((u) => {
      if (!atPlayer(u)) return true;
      this.counters.powerups_collected += 1;
      this.lives = Math.min(this.lives + 1, lvl.max_lives);
      events.push(this.draft("collect", {
        kind: "power_up", entity: u.id, lives: this.lives,
      }));
      return false;
    });

    // 7. bottom exits
    this.gold = this.gold.filter((g) => {
      if (g.row <= this.playerRow) return true;
      this.counters.gold_lost += 1;
      events.push(this.draft("collision", {
        kind: "gold", with: "bottom", entity: g.id,
      }));
      return false;
    });
    this.enemies = this.enemies.filter((e) => e.row <= this.playerRow);
    this.asteroids = this.asteroids.filter((a) => a.row <= this.playerRow);
    this.powerUps = this.powerUps.filter((u) => u.row <= this.playerRow);

    // 8. spawns
    const spawns: { kind: string; lane: number }[] = [];
    if (this.spawnOverride) {
      spawns.push(...this.spawnOverride(this.tick));
    } else {
      const table: [string, number][] = [
        ["enemy", lvl.spawn.enemy],
        ["asteroid", lvl.spawn.asteroid],
        ["gold", lvl.spawn.gold],
        ["power_up", lvl.spawn.power_up],
      ];
      for (const [kind, rate] of table) {
        if (rate <= 0 || this.rand() >= rate) continue;
        const lane = Math.floor(this.rand() * lvl.lanes);
        if (kind === "enemy") {
          const mix = lvl.spawn.enemy_mix;
          const total = mix[0] + mix[1] + mix[2];
          const roll = this.rand() * total;
          const subkind =
            roll < mix[0] ? ENEMY_KINDS[0]
              : roll < mix[0] + mix[1] ? ENEMY_KINDS[1] : ENEMY_KINDS[2];
          spawns.push({ kind: subkind, lane });
        } else {
          spawns.push({ kind, lane });
        }
      }
    }
    for (const { kind, lane } of spawns) {
      const entity: Entity = {
        id: this.nextEntityId,
        kind,
        row: 0,
        col: lane,
        hp: kind === "enemy_defensive" ? 2 : 1,
      };
      if (kind.startsWith("enemy")) {
        this.enemies.push(entity);
        this.counters.enemies_generated += 1;
      } else if (kind === "asteroid") {
        this.asteroids.push(entity);
        this.counters.asteroids_generated += 1;
      } else if (kind === "gold") {
        this.gold.push(entity);
        this.counters.gold_generated += 1;
      } else {
        this.powerUps.push(entity);
        this.counters.powerups_generated += 1;
      }
      events.push(this.draft("spawn", { kind, entity: entity.id, col: lane }));
      this.nextEntityId += 1;
    }

    // 9. status
    const lostAnyLife = this.lives < lvl.lives;
    if (this.lives <= 0) {
      this.updateChallengeFlags(false, true);
      this.status = "dead";
      events.push(this.draft("lose", {
        reason: "lives", elapsed_ms: this.elapsedMs, score: this.score,
        ...this.challengePayload(),
      }));
    } else if (this.elapsedMs >= lvl.duration_ms) {
      this.updateChallengeFlags(true, lostAnyLife);
      this.status = "won";
      events.push(this.draft("win", {
        elapsed_ms: this.elapsedMs, score: this.score, ...this.challengePayload(),
      }));
    } else {
      this.updateChallengeFlags(false, lostAnyLife);
    }
    return events;
  }
}
