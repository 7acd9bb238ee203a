import { describe, expect, it } from "vitest";

import { ApiClient, PostAck } from "../src/session/api.js";
import { EventBuffer } from "../src/session/buffer.js";
import { EventDraft, WireEvent, mulberry32 } from "../src/types.js";

/**
 * In-memory stand-in for the telemetry service: idempotent on duplicates,
 * strict on gaps, and wrapped in a transport that fails or double-delivers
 * at configurable rates.
 */
class FlakyServer {
  stored: WireEvent[] = [];
  calls = 0;

  constructor(
    private readonly failRate: number,
    private readonly duplicateRate: number,
    private readonly rand: () => number,
  ) {}

  client(): ApiClient {
    const fetchImpl = async (url: string, init?: RequestInit): Promise<Response> => {
      this.calls += 1;
      if (this.rand() < this.failRate) {
        throw new Error("socket reset (simulated)");
      }
      const body = JSON.parse(String(init?.body ?? "{}"));
      const deliver = (events: WireEvent[]): PostAck => {
        const ack: PostAck = { accepted: 0, duplicates: 0, last_accepted_seq: null,
                               rejected: [] };
        for (const [index, event] of events.entries()) {
          if (event.seq < this.stored.length) {
            ack.duplicates += 1;
            ack.last_accepted_seq = event.seq;
          } else if (event.seq === this.stored.length) {
            this.stored.push(event);
            ack.accepted += 1;
            ack.last_accepted_seq = event.seq;
          } else {
            ack.rejected.push({ index, seq: event.seq, error: "seq gap" });
          }
        }
        return ack;
      };
      const ack = deliver(body.events);
      if (this.rand() < this.duplicateRate) deliver(body.events); // double delivery
      return new Response(JSON.stringify(ack), { status: 200 });
    };
    return new ApiClient("http://fake", fetchImpl);
  }
}

const draft = (i: number): EventDraft => ({
  game_id: "meta",
  stage_id: "",
  event_type: "menu_nav",
  payload: { target: `t${i}` },
});

describe("event buffer", () => {
  it("assigns consecutive sequence numbers and clamps timestamps", () => {
    const server = new FlakyServer(0, 0, mulberry32(1));
    const buffer = new EventBuffer(server.client(), "s");
    const a = buffer.append(draft(0), 100);
    const b = buffer.append(draft(1), 50); // clock went backwards
    expect([a.seq, b.seq]).toEqual([0, 1]);
    expect(b.timestamp_ms).toBe(100);
  });

  it("delivers everything in order despite heavy transport failure", async () => {
    const server = new FlakyServer(0.45, 0.3, mulberry32(7));
    const buffer = new EventBuffer(server.client(), "s", 7);
    for (let i = 0; i < 100; i++) buffer.append(draft(i), i * 10);
    await buffer.drain(50, 1);
    expect(buffer.pendingCount).toBe(0);
    expect(server.stored.map((e) => e.seq)).toEqual([...Array(100).keys()]);
    expect(server.stored.map((e) => e.payload.target))
      .toEqual([...Array(100).keys()].map((i) => `t${i}`));
  });

  it("resends from the first unacknowledged event after a failure", async () => {
    const server = new FlakyServer(1, 0, mulberry32(3)); // always fails
    const buffer = new EventBuffer(server.client(), "s", 10);
    for (let i = 0; i < 5; i++) buffer.append(draft(i), i);
    expect(await buffer.flush()).toBe(false);
    expect(buffer.pendingCount).toBe(5); // nothing dropped
    await expect(buffer.drain(2, 1)).rejects.toThrow("not drained");
  });

  it("interleaved flushes never reorder events", async () => {
    const server = new FlakyServer(0.2, 0.2, mulberry32(11));
    const buffer = new EventBuffer(server.client(), "s", 3);
    for (let i = 0; i < 30; i++) buffer.append(draft(i), i);
    await Promise.all([buffer.flush(), buffer.flush(), buffer.flush()]);
    await buffer.drain(60, 1);
    expect(server.stored.map((e) => e.seq)).toEqual([...Array(30).keys()]);
  });

  it("events appended mid-flush are delivered by a later drain", async () => {
    const server = new FlakyServer(0, 0, mulberry32(13));
    const buffer = new EventBuffer(server.client(), "s", 4);
    for (let i = 0; i < 6; i++) buffer.append(draft(i), i);
    const flushing = buffer.flush();
    buffer.append(draft(6), 60);
    await flushing;
    await buffer.drain(5, 1);
    expect(server.stored).toHaveLength(7);
  });
});
