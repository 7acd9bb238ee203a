/**
 * End-to-end conformance: a scripted session against the real telemetry
 * service, then a replay of the recorded log through the authoritative
 * Python engines.
 *
 * Asserts the secondary release criteria: server-stored events equal the
 * client emissions in order and content, the replay reproduces identical
 * terminal stage states, the displayed tracking code equals the finalize
 * response, and rejected client moves emit nothing.
 */
import { spawn, spawnSync, ChildProcess } from "node:child_process";
import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/session/api.js";
import { ClientSession } from "../src/session/runner.js";
import { playScriptedSession, ScriptReport } from "../src/session/scripted.js";

const PORT = 8917 + (process.pid % 400);

let server: ChildProcess;
let storeDir: string;
let baseUrl: string;

beforeAll(async () => {
  storeDir = mkdtempSync(join(tmpdir(), "gamesight-store-"));
  baseUrl = `http://127.0.0.1:${PORT}`;
  server = spawn("python3", [
    "-m", "gamesight.cli", "serve",
    "--bind", `127.0.0.1:${PORT}`,
    "--store", storeDir,
  ], { stdio: ["ignore", "pipe", "pipe"] });
  await new Promise<void>((resolve, reject) => {
    const timer = setTimeout(() => reject(new Error("service did not start")), 15_000);
    server.stdout!.on("data", (chunk: Buffer) => {
      if (chunk.toString().includes("telemetry service on")) {
        clearTimeout(timer);
        resolve();
      }
    });
    server.stderr!.on("data", (chunk: Buffer) => {
      process.stderr.write(chunk);
    });
    server.on("exit", (code) => reject(new Error(`service exited early (${code})`)));
  });
}, 30_000);

afterAll(() => {
  server?.kill();
});

describe("scripted session against the live service", () => {
  let session: ClientSession;
  let report: ScriptReport;
  let trackingCode: string;

  it("plays every stage and finalizes with a 5-digit code", async () => {
    session = new ClientSession(new ApiClient(baseUrl));
    await session.start();
    report = await playScriptedSession(session);
    expect(report.rejectedMovesEmittedNothing).toBe(true);

    const stagesPlayed = session.outcomes.length;
    const pack = session.pack;
    expect(stagesPlayed).toBe(
      pack.group_swap.length + pack.sliding_path.length + pack.memory.length
      + pack.shooter.length + pack.graph.length);

    const result = await session.finish("send");
    expect(result.consent).toBe("send");
    trackingCode = result.tracking_code!;
    expect(trackingCode).toMatch(/^\d{5}$/);
    // the screen shows exactly what the service returned
    expect(session.displayedCode()).toBe(trackingCode);
    // finishing again must not re-finalize: same code, no error
    const again = await session.finish("send");
    expect(again.tracking_code).toBe(trackingCode);
  }, 120_000);

  it("server-stored events equal client emissions and replay through the engine",
     () => {
    const storedPath = join(storeDir, "sessions", `${session.sessionId}.ndjson`);
    const lines = readFileSync(storedPath, "utf-8").trim().split("\n");
    const header = JSON.parse(lines[0]);
    expect(header.tracking_code).toBe(trackingCode);
    expect(header.consent).toBe("send");
    const storedEvents = lines.slice(1).map((line) => JSON.parse(line));
    expect(storedEvents).toHaveLength(session.buffer.all.length);

    const bundlePath = join(storeDir, "bundle.json");
    writeFileSync(bundlePath, JSON.stringify({
      events: session.buffer.all,
      stored_events: storedEvents,
      outcomes: session.outcomes,
      shooter_attempts: report.shooterAttempts,
    }));
    const replay = spawnSync("python3", ["scripts/replay_check.py", bundlePath],
                             { encoding: "utf-8" });
    if (replay.status !== 0) {
      throw new Error(`replay_check failed:\n${replay.stdout}\n${replay.stderr}`);
    }
    expect(replay.stdout).toContain("replay ok");
  }, 60_000);

  it("withholding consent deletes everything server-side", async () => {
    const other = new ClientSession(new ApiClient(baseUrl));
    await other.start();
    other.menuNav("stage_select");
    const result = await other.finish("withhold");
    expect(result).toMatchObject({ consent: "withhold", deleted: true });
    expect(other.displayedCode()).toBeNull();
    const pendingPath = join(storeDir, "pending", `${other.sessionId}.ndjson`);
    const sessionPath = join(storeDir, "sessions", `${other.sessionId}.ndjson`);
    expect(() => readFileSync(pendingPath)).toThrow();
    expect(() => readFileSync(sessionPath)).toThrow();
  }, 30_000);
});
