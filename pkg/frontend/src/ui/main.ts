/**
 * Minimal DOM shell: a stage list, a canvas for the shooter, keyboard input,
 * and the consent / tracking-code screen.  All rules live in the engine
 * modules; this file only renders state and forwards interactions.
 */
import { GraphGame, GroupSwapGame, MemoryGame, SlidingGame } from "../engine/puzzles.js";
import { ShooterGame, TICK_MS } from "../engine/shooter.js";
import { ApiClient } from "../session/api.js";
import { ClientSession, StageHandle } from "../session/runner.js";
import { playScriptedSession } from "../session/scripted.js";
import { Direction, Pos } from "../types.js";

type AnyGame = GroupSwapGame | SlidingGame | MemoryGame | GraphGame | ShooterGame;

const $ = (id: string): HTMLElement => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el;
};

function banner(text: string, kind: "info" | "error" = "info"): void {
  const el = $("banner");
  el.textContent = text;
  el.className = kind;
}

class App {
  session: ClientSession;
  stage: StageHandle | null = null;
  game: AnyGame | null = null;
  selectedPiece: string | null = null;
  shooterTimer: number | null = null;
  stageStartWall = 0;

  constructor(baseUrl: string) {
    this.session = new ClientSession(new ApiClient(baseUrl));
  }

  async start(): Promise<void> {
    await this.session.start();
    banner(`session ${this.session.sessionId} started`);
    this.renderStageList();
    // flush the buffer in the background; failures only show a banner
    window.setInterval(async () => {
      if (this.session.buffer.pendingCount > 0) {
        const ok = await this.session.buffer.flush();
        banner(ok ? "" : "offline: events buffered, gameplay continues",
               ok ? "info" : "error");
      }
    }, 1000);
    window.setInterval(() => this.session.advance(250), 250);
  }

  renderStageList(): void {
    const list = $("stages");
    list.innerHTML = "";
    const pack = this.session.pack;
    const entries: [string, string, () => void][] = [];
    pack.group_swap.forEach((lv, i) =>
      entries.push(["group_swap", lv.stage_id, () => this.openPuzzle("group_swap", i)]));
    pack.sliding_path.forEach((lv, i) =>
      entries.push(["sliding_path", lv.stage_id, () => this.openPuzzle("sliding_path", i)]));
    pack.memory.forEach((lv, i) =>
      entries.push(["memory", lv.stage_id, () => this.openMemory(i)]));
    pack.shooter.forEach((lv, i) =>
      entries.push(["shooter", lv.stage_id, () => this.openShooter(i)]));
    pack.graph.forEach((lv, i) =>
      entries.push(["graph", lv.stage_id, () => this.openGraph(i)]));
    for (const [game, stageId, open] of entries) {
      const done = this.session.outcomes.find(
        (o) => o.gameId === game && o.stageId === stageId);
      const button = document.createElement("button");
      button.textContent = `${game} / ${stageId}${done ? ` (${done.status})` : ""}`;
      button.disabled = Boolean(done);
      button.onclick = () => {
        this.session.menuNav("stage_select");
        open();
      };
      list.appendChild(button);
    }
    const finish = document.createElement("button");
    finish.textContent = "finish session";
    finish.onclick = () => this.finish();
    list.appendChild(finish);
    $("wallet").textContent = `skip tokens: ${this.session.tokens}`;
  }

  openPuzzle(kind: "group_swap" | "sliding_path", index: number): void {
    const stageId = kind === "group_swap"
      ? this.session.pack.group_swap[index].stage_id
      : this.session.pack.sliding_path[index].stage_id;
    this.stage = this.session.openStage(kind, stageId);
    const view = window.confirm("View the tutorial for this stage?");
    this.session.tutorial(this.stage, view, view ? 4000 : 800);
    this.game = kind === "group_swap"
      ? this.session.groupSwap(index)
      : this.session.sliding(index);
    this.stageStartWall = Date.now();
    this.renderBoard();
  }

  openMemory(index: number): void {
    const level = this.session.pack.memory[index];
    this.stage = this.session.openStage("memory", level.stage_id);
    this.session.tutorial(this.stage, true, 2500);
    const game = this.session.memory(index);
    this.game = game;
    this.renderBoard();
    window.setTimeout(() => {
      game.reveal();
      this.session.advance(level.exposure_ms);
      this.renderBoard();
    }, level.exposure_ms);
  }

  openGraph(index: number): void {
    this.stage = this.session.openStage(
      "graph", this.session.pack.graph[index].stage_id);
    this.session.tutorial(this.stage, true, 2500);
    this.game = this.session.graph(index);
    this.renderBoard();
  }

  openShooter(index: number): void {
    this.stage = this.session.openStage(
      "shooter", this.session.pack.shooter[index].stage_id);
    this.session.tutorial(this.stage, true, 4000);
    const game = this.session.shooter(index, this.stage.failures + 1);
    this.game = game;
    this.shooterTimer = window.setInterval(() => {
      if (game.status !== "playing") {
        window.clearInterval(this.shooterTimer!);
        this.onShooterEnd(game);
        return;
      }
      this.session.shooterTick(game, this.pendingInput);
      this.pendingInput = "none";
      this.renderBoard();
    }, TICK_MS);
  }

  pendingInput: "none" | "left" | "right" | "fire" = "none";

  onShooterEnd(game: ShooterGame): void {
    if (!this.stage) return;
    if (game.status === "won") {
      this.session.closeStage(this.stage, "won");
      this.stage = null;
    } else {
      this.session.noteFailure(this.stage);
      if (this.session.surrenderOffered(this.stage)
          && window.confirm("Three failed runs. Surrender this stage?")) {
        this.session.surrender(this.stage);
        this.session.closeStage(this.stage);
        this.stage = null;
      } else {
        this.session.restart(this.stage);
        const index = 0;
        const next = this.session.shooter(index, this.stage.failures + 1);
        this.game = next;
        this.openShooterLoop(next);
      }
    }
    this.renderStageList();
  }

  openShooterLoop(game: ShooterGame): void {
    this.shooterTimer = window.setInterval(() => {
      if (game.status !== "playing") {
        window.clearInterval(this.shooterTimer!);
        this.onShooterEnd(game);
        return;
      }
      this.session.shooterTick(game, this.pendingInput);
      this.pendingInput = "none";
      this.renderBoard();
    }, TICK_MS);
  }

  handleKey(key: string): void {
    const direction = ({
      ArrowUp: "up", ArrowDown: "down", ArrowLeft: "left", ArrowRight: "right",
    } as Record<string, Direction>)[key];
    if (this.game instanceof ShooterGame) {
      if (key === " ") this.pendingInput = "fire";
      else if (direction === "left" || direction === "right")
        this.pendingInput = direction;
      return;
    }
    if (!direction || !this.stage || !this.game) return;
    const wallMs = Date.now() - this.stageStartWall;
    if (this.game instanceof GraphGame) {
      const outcome = this.game.move(direction);
      if (!this.session.applyOutcome(outcome, wallMs > 0 ? 900 : 0)) {
        banner("that way is blocked", "error");
      }
      this.afterMove();
    } else if (this.game instanceof GroupSwapGame && this.selectedPiece) {
      const source = this.game.pieces.get(this.selectedPiece)!;
      const delta = { up: [-1, 0], down: [1, 0], left: [0, -1], right: [0, 1] }[direction];
      const target: Pos = [source[0] + delta[0], source[1] + delta[1]];
      const outcome = this.game.apply(this.selectedPiece, target);
      if (!this.session.applyOutcome(outcome, 900)) {
        banner(`move rejected: ${outcome.reason}`, "error");
      }
      this.afterMove();
    }
  }

  afterMove(): void {
    if (!this.stage || !this.game) return;
    const won = this.game instanceof GraphGame
      ? this.game.status === "won"
      : "won" in this.game && (this.game as { won: boolean }).won;
    if (won) {
      this.session.closeStage(this.stage, "won");
      this.stage = null;
      this.game = null;
      this.renderStageList();
    } else {
      this.renderBoard();
    }
  }

  async finish(): Promise<void> {
    const send = window.confirm(
      "Send your anonymized gameplay data? OK to send, Cancel to withhold.");
    try {
      const result = await this.session.finish(send ? "send" : "withhold");
      if (result.tracking_code) {
        $("code").textContent = `your tracking code: ${result.tracking_code}`;
      } else {
        $("code").textContent = "data withheld and deleted - thank you for playing";
      }
    } catch (error) {
      banner(`finalize failed, your data is still buffered - retry: ${error}`, "error");
    }
  }

  renderBoard(): void {
    const board = $("board");
    const game = this.game;
    if (!game) {
      board.textContent = "";
      return;
    }
    if (game instanceof ShooterGame) {
      const canvas = $("canvas") as HTMLCanvasElement;
      const ctx = canvas.getContext("2d")!;
      const cell = 28;
      ctx.clearRect(0, 0, canvas.width, canvas.height);
      ctx.strokeStyle = "#888";
      ctx.strokeRect(0, 0, game.level.lanes * cell, game.level.rows * cell);
      const draw = (col: number, row: number, color: string) => {
        ctx.fillStyle = color;
        ctx.fillRect(col * cell + 2, row * cell + 2, cell - 4, cell - 4);
      };
      for (const e of game.enemies) draw(e.col, e.row, "#c0392b");
      for (const a of game.asteroids) draw(a.col, a.row, "#7f8c8d");
      for (const g of game.gold) draw(g.col, g.row, "#f1c40f");
      for (const u of game.powerUps) draw(u.col, u.row, "#27ae60");
      for (const p of game.projectiles) draw(p.col, p.row, "#ecf0f1");
      draw(game.playerCol, game.playerRow, "#2980b9");
      $("hud").textContent =
        `lives ${game.lives} | score ${game.score} | ` +
        `${Math.floor(game.elapsedMs / 1000)}s / ${game.level.duration_ms / 1000}s`;
      return;
    }
    board.textContent = JSON.stringify(describe(game), null, 1);
  }
}

function describe(game: AnyGame): unknown {
  if (game instanceof GroupSwapGame)
    return { pieces: Object.fromEntries(game.pieces), moves: game.movesUsed };
  if (game instanceof SlidingGame)
    return { anchors: Object.fromEntries(game.anchors), moves: game.movesUsed };
  if (game instanceof MemoryGame)
    return {
      phase: game.phase,
      cards: game.layout.map((n, i) =>
        game.phase === "exposure" || game.revealed.has(i) ? n : "?"),
      guesses: game.guessesTotal,
    };
  if (game instanceof GraphGame)
    return { current: game.current, visited: game.visited.length, status: game.status };
  return {};
}

export async function boot(): Promise<void> {
  const baseUrl = (window as { GAMESIGHT_API?: string }).GAMESIGHT_API
    ?? "http://127.0.0.1:8787";
  const app = new App(baseUrl);
  await app.start();
  window.addEventListener("keydown", (e) => app.handleKey(e.key));
  $("autoplay").onclick = async () => {
    await playScriptedSession(app.session);
    app.renderStageList();
    banner("scripted session complete - press finish to get your code");
  };
}

if (typeof document !== "undefined" && document.getElementById("stages")) {
  boot().catch((error) => banner(String(error), "error"));
}
