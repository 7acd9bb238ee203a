/**
 * ClientSession: the participant's whole run, from create_session to the
 * tracking-code screen.
 *
 * The session keeps a logical millisecond clock (driven by the UI or by a
 * scripted player), mirrors the skip-token wallet, enforces control legality
 * client-side (skip needs a token and a skippable game, surrender needs time
 * expiry or three shooter failures, resume needs a pause), and appends every
 * transition to the retry-safe event buffer.  Rejected moves emit nothing.
 */
import {
  GraphGame,
  GroupSwapGame,
  MemoryGame,
  MoveOutcome,
  SlidingGame,
} from "../engine/puzzles.js";
import { ShooterGame, ShooterInput, TICK_MS } from "../engine/shooter.js";
import {
  EventDraft,
  GameId,
  LevelPack,
  StageStatus,
  hashSeed,
  mulberry32,
} from "../types.js";
import { ApiClient, FinalizeResponse } from "./api.js";
import { EventBuffer } from "./buffer.js";

const SKIPPABLE: ReadonlySet<GameId> = new Set(["group_swap", "sliding_path", "graph"]);
const INITIAL_TOKENS = 3;
const SHOOTER_SURRENDER_FAILURES = 3;

export interface StageHandle {
  gameId: GameId;
  stageId: string;
  status: StageStatus;
  paused: boolean;
  activeMs: number;
  failures: number;
  timeExpired: boolean;
  segmentStartMs: number;
}

export interface StageOutcomeRecord {
  gameId: GameId;
  stageId: string;
  status: StageStatus;
}

export class ClientSession {
  sessionId = "";
  pack!: LevelPack;
  buffer!: EventBuffer;
  clockMs = 0;
  tokens = INITIAL_TOKENS;
  outcomes: StageOutcomeRecord[] = [];
  finishResult: FinalizeResponse | null = null;

  constructor(readonly api: ApiClient, readonly difficulty = "normal") {}

  async start(): Promise<void> {
    const created = await this.api.createSession(this.difficulty);
    this.sessionId = created.session_id;
    this.pack = await this.api.loadPack();
    this.buffer = new EventBuffer(this.api, this.sessionId);
  }

  advance(ms: number): void {
    this.clockMs += Math.max(0, Math.floor(ms));
  }

  emit(draft: EventDraft): void {
    this.buffer.append(draft, this.clockMs);
  }

  emitAll(drafts: EventDraft[]): void {
    for (const draft of drafts) this.emit(draft);
  }

  // -- stage control plane -----------------------------------------------------

  openStage(gameId: GameId, stageId: string): StageHandle {
    return {
      gameId,
      stageId,
      status: "playing",
      paused: false,
      activeMs: 0,
      failures: 0,
      timeExpired: false,
      segmentStartMs: this.clockMs,
    };
  }

  activeTime(stage: StageHandle): number {
    return stage.paused
      ? stage.activeMs
      : stage.activeMs + (this.clockMs - stage.segmentStartMs);
  }

  tutorial(stage: StageHandle, view: boolean, dwellMs: number): void {
    this.advance(dwellMs);
    this.emit({
      game_id: stage.gameId,
      stage_id: stage.stageId,
      event_type: view ? "tutorial_view" : "tutorial_skip",
      payload: {},
    });
  }

  pause(stage: StageHandle): boolean {
    if (stage.paused || stage.status !== "playing") return false;
    stage.activeMs += this.clockMs - stage.segmentStartMs;
    stage.paused = true;
    this.emit({ game_id: stage.gameId, stage_id: stage.stageId,
                event_type: "pause", payload: {} });
    return true;
  }

  resume(stage: StageHandle): boolean {
    if (!stage.paused) return false;
    stage.paused = false;
    stage.segmentStartMs = this.clockMs;
    this.emit({ game_id: stage.gameId, stage_id: stage.stageId,
                event_type: "resume", payload: {} });
    return true;
  }

  noteTimeExpired(stage: StageHandle): void {
    stage.timeExpired = true;
    this.emit({
      game_id: stage.gameId,
      stage_id: stage.stageId,
      event_type: "time_expired",
      payload: { active_ms: this.activeTime(stage) },
    });
  }

  noteFailure(stage: StageHandle): void {
    stage.failures += 1;
  }

  restart(stage: StageHandle): void {
    this.advance(1000);
    this.emit({
      game_id: stage.gameId,
      stage_id: stage.stageId,
      event_type: "restart",
      payload: { attempt_failures: stage.failures },
    });
  }

  canSkip(stage: StageHandle): boolean {
    return SKIPPABLE.has(stage.gameId) && this.tokens > 0
      && stage.status === "playing";
  }

  skip(stage: StageHandle): boolean {
    if (!this.canSkip(stage)) return false;
    this.tokens -= 1;
    stage.status = "skipped";
    this.advance(800);
    this.emit({
      game_id: stage.gameId,
      stage_id: stage.stageId,
      event_type: "skip",
      payload: { wallet_after: this.tokens },
    });
    return true;
  }

  surrenderOffered(stage: StageHandle): boolean {
    return stage.gameId === "shooter"
      ? stage.failures >= SHOOTER_SURRENDER_FAILURES
      : stage.timeExpired;
  }

  surrender(stage: StageHandle): boolean {
    if (stage.status !== "playing" || !this.surrenderOffered(stage)) return false;
    stage.status = "surrendered";
    this.advance(800);
    this.emit({
      game_id: stage.gameId,
      stage_id: stage.stageId,
      event_type: "surrender",
      payload: { failures: stage.failures },
    });
    return true;
  }

  menuNav(target: string, dwellMs = 1200): void {
    this.advance(dwellMs);
    this.emit({ game_id: "meta", stage_id: "", event_type: "menu_nav",
                payload: { target } });
  }

  attemptSideChallenge(challengeIndex: number, answer: string): boolean {
    const challenge =
      this.pack.side_challenges[challengeIndex % this.pack.side_challenges.length];
    this.menuNav("side_challenges", 900);
    const correct = answer === challenge.answer;
    this.advance(8000);
    this.emit({
      game_id: "meta",
      stage_id: "",
      event_type: "side_challenge_attempt",
      payload: { challenge: challenge.id, correct },
    });
    if (correct) {
      this.tokens += challenge.reward_tokens ?? 1;
      this.advance(500);
      this.emit({
        game_id: "meta",
        stage_id: "",
        event_type: "side_challenge_solved",
        payload: { challenge: challenge.id, wallet_after: this.tokens },
      });
    }
    return correct;
  }

  closeStage(stage: StageHandle, status?: StageStatus): void {
    if (status) stage.status = status;
    this.outcomes.push({
      gameId: stage.gameId, stageId: stage.stageId, status: stage.status,
    });
  }

  // -- game factories -----------------------------------------------------------

  groupSwap(index: number): GroupSwapGame {
    return new GroupSwapGame(this.pack.group_swap[index]);
  }

  sliding(index: number): SlidingGame {
    return new SlidingGame(this.pack.sliding_path[index]);
  }

  memory(index: number, attempt = 1): MemoryGame {
    const seed = hashSeed(`${this.sessionId}:memory:${index}:${attempt}`);
    return new MemoryGame(this.pack.memory[index], mulberry32(seed));
  }

  graph(index: number): GraphGame {
    return new GraphGame(this.pack.graph[index]);
  }

  shooter(index: number, attempt = 1): ShooterGame {
    const seed = hashSeed(`${this.sessionId}:shooter:${index}:${attempt}`);
    return new ShooterGame(this.pack.shooter[index], mulberry32(seed));
  }

  /** Emit the outcome of a move; rejected moves produce nothing by contract. */
  applyOutcome(outcome: MoveOutcome, thinkMs: number): boolean {
    if (!outcome.accepted) return false;
    this.advance(thinkMs);
    this.emitAll(outcome.events);
    return true;
  }

  shooterTick(game: ShooterGame, input: ShooterInput): void {
    const events = game.step(input);
    this.advance(TICK_MS);
    this.emitAll(events);
  }

  // -- finish -----------------------------------------------------------------------

  async finish(consent: "send" | "withhold"): Promise<FinalizeResponse> {
    if (this.finishResult) return this.finishResult; // double-finish guard
    this.advance(2000);
    this.emit({ game_id: "meta", stage_id: "", event_type: "consent_choice",
                payload: { choice: consent } });
    await this.buffer.drain();
    this.finishResult = await this.api.finalize(this.sessionId, consent);
    return this.finishResult;
  }

  /** What the participant sees on the final screen. */
  displayedCode(): string | null {
    return this.finishResult?.tracking_code ?? null;
  }
}
