/**
 * Scripted participant: drives a complete session through the real client
 * stack (engines, controls, buffer) without a DOM.  Used by the automated
 * conformance tests and by the demo "autoplay" button.
 *
 * The script exercises every surface: a genuine puzzle win, rejected moves
 * (which must emit nothing), pause/resume, time expiry with surrender, skip
 * tokens, side challenges (one solved, one failed), memory wins, shooter
 * attempts with the three-failure surrender gate, and consent.
 */
import { ShooterInput } from "../engine/shooter.js";
import { ShooterGame } from "../engine/shooter.js";
import { Direction, Pos } from "../types.js";
import { ClientSession } from "./runner.js";

export interface ShooterAttemptSummary {
  attempt: number;
  status: string;
  tick: number;
  score: number;
  counters: Record<string, number>;
}

export interface ScriptReport {
  rejectedMovesEmittedNothing: boolean;
  shooterAttempts: ShooterAttemptSummary[];
}

const GROUP_SWAP_TUTORIAL_SOLUTION: [Pos, Pos][] = [
  [[0, 0], [1, 0]],
  [[0, 2], [0, 1]],
  [[0, 1], [0, 0]],
  [[1, 0], [1, 1]],
  [[1, 1], [1, 2]],
  [[1, 2], [0, 2]],
];

const GRAPH_SOLUTIONS: Direction[][] = [
  ["right"],
  ["right", "down", "left"],
  ["right", "down", "left", "up", "right"],
];

export async function playScriptedSession(session: ClientSession): Promise<ScriptReport> {
  const report: ScriptReport = {
    rejectedMovesEmittedNothing: true,
    shooterAttempts: [],
  };
  session.menuNav("stage_select");

  // --- group swap ------------------------------------------------------------
  {
    const stage = session.openStage("group_swap", session.pack.group_swap[0].stage_id);
    session.tutorial(stage, true, 4000);
    const game = session.groupSwap(0);
    // a rejected move first: moving onto an occupied/far cell must emit nothing
    const before = session.buffer.all.length;
    const rejected = game.apply("a0", [0, 2]);
    session.applyOutcome(rejected, 0);
    if (rejected.accepted || session.buffer.all.length !== before) {
      report.rejectedMovesEmittedNothing = false;
    }
    for (const [from, to] of GROUP_SWAP_TUTORIAL_SOLUTION) {
      const piece = game.pieceAt(from);
      if (!piece) throw new Error(`no piece at ${from}`);
      const outcome = game.apply(piece, to);
      if (!session.applyOutcome(outcome, 1500)) {
        throw new Error(`tutorial solution move rejected: ${from} -> ${to}`);
      }
    }
    if (!game.won) throw new Error("tutorial solution did not win");
    session.closeStage(stage, "won");
  }
  {
    // medium: a few legal moves, a pause, then time expiry and surrender
    const level = session.pack.group_swap[1];
    const stage = session.openStage("group_swap", level.stage_id);
    session.tutorial(stage, false, 900);
    const game = session.groupSwap(1);
    for (let i = 0; i < 4; i++) {
      const piece = i % 2 === 0 ? "a0" : "b0";
      const target = game.legalTargets(piece)[0];
      if (!target) break;
      session.applyOutcome(game.apply(piece, target), 1800);
    }
    session.pause(stage);
    session.advance(6000);
    session.resume(stage);
    session.advance(level.time_limit_s * 1000); // run the stage clock out
    session.noteTimeExpired(stage);
    session.surrender(stage);
    session.closeStage(stage);
  }
  {
    const stage = session.openStage("group_swap", session.pack.group_swap[2].stage_id);
    session.tutorial(stage, false, 700);
    session.skip(stage);
    session.closeStage(stage);
  }

  // a side challenge between games: one solved (earns a token), one failed
  session.menuNav("stage_select");
  session.attemptSideChallenge(0, session.pack.side_challenges[0].answer);
  session.attemptSideChallenge(1, "wrong-answer");

  // --- sliding path ------------------------------------------------------------
  {
    const stage = session.openStage("sliding_path", session.pack.sliding_path[0].stage_id);
    session.tutorial(stage, true, 3500);
    const game = session.sliding(0);
    session.applyOutcome(game.apply("t", "right", 2), 2000);
    session.applyOutcome(game.apply("t", "down", 2), 1600);
    if (!game.won) throw new Error("sliding stage 1 solution did not win");
    session.closeStage(stage, "won");
  }
  {
    const level = session.pack.sliding_path[1];
    const stage = session.openStage("sliding_path", level.stage_id);
    session.tutorial(stage, false, 800);
    const game = session.sliding(1);
    session.applyOutcome(game.apply("t", "right", 1), 1500);
    session.applyOutcome(game.apply("t", "left", 1), 1500);
    session.advance((level.time_limit_s ?? 90) * 1000);
    session.noteTimeExpired(stage);
    session.surrender(stage);
    session.closeStage(stage);
  }
  {
    const stage = session.openStage("sliding_path", session.pack.sliding_path[2].stage_id);
    session.tutorial(stage, false, 600);
    session.skip(stage);
    session.closeStage(stage);
  }

  // --- memory: the client sees its own layout, so it can win outright ---------
  for (let index = 0; index < session.pack.memory.length; index++) {
    const level = session.pack.memory[index];
    const stage = session.openStage("memory", level.stage_id);
    session.tutorial(stage, index === 0, index === 0 ? 3000 : 700);
    const game = session.memory(index);
    session.advance(level.exposure_ms);
    game.reveal();
    const matched = new Set<number>();
    while (!game.won) {
      let a = -1;
      let b = -1;
      outer: for (let i = 0; i < game.layout.length; i++) {
        if (matched.has(i)) continue;
        for (let j = i + 1; j < game.layout.length; j++) {
          if (matched.has(j) || game.layout[i] !== game.layout[j]) continue;
          a = i; b = j;
          break outer;
        }
      }
      const outcome = game.guess(a, b);
      if (!session.applyOutcome(outcome, 1400)) throw new Error("memory guess rejected");
      matched.add(a).add(b);
    }
    session.closeStage(stage, "won");
  }

  // --- shooter: passive attempts; surrender after the third failure ------------
  {
    const stage = session.openStage("shooter", session.pack.shooter[0].stage_id);
    session.tutorial(stage, true, 5000);
    let attempt = 0;
    for (;;) {
      attempt += 1;
      const game = session.shooter(0, attempt);
      let i = 0;
      while (game.status === "playing") {
        const input: ShooterInput =
          i % 31 === 0 ? "left" : i % 17 === 0 ? "fire" : "none";
        session.shooterTick(game, input);
        i += 1;
      }
      report.shooterAttempts.push(summarize(attempt, game));
      if (game.status === "won") {
        session.closeStage(stage, "won");
        break;
      }
      session.noteFailure(stage);
      if (stage.failures >= 3) {
        session.surrender(stage);
        session.closeStage(stage);
        break;
      }
      session.advance(500);
      session.restart(stage);
    }
  }

  // --- graph traversal ----------------------------------------------------------
  for (let index = 0; index < session.pack.graph.length; index++) {
    const stage = session.openStage("graph", session.pack.graph[index].stage_id);
    session.tutorial(stage, index === 0, index === 0 ? 2500 : 600);
    if (index < GRAPH_SOLUTIONS.length) {
      const game = session.graph(index);
      for (const direction of GRAPH_SOLUTIONS[index]) {
        if (!session.applyOutcome(game.move(direction), 1600)) {
          throw new Error(`graph solution move rejected on stage ${index}`);
        }
      }
      if (game.status !== "won") throw new Error(`graph stage ${index} not won`);
      session.closeStage(stage, "won");
    } else {
      session.skip(stage); // the earned side-challenge token covers this
      session.closeStage(stage);
    }
  }

  return report;
}

function summarize(attempt: number, game: ShooterGame): ShooterAttemptSummary {
  return {
    attempt,
    status: game.status,
    tick: game.tick,
    score: game.score,
    counters: { ...game.counters },
  };
}
