/**
 * Ordered, gapless, retry-safe event buffer.
 *
 * Drafts get consecutive sequence numbers at append time.  Flushing sends
 * one batch at a time, strictly in order, and only advances past events the
 * server acknowledged; a transient failure keeps everything buffered and the
 * next flush resends from the first unacknowledged event.  Server-side
 * idempotency makes resends harmless, so no event is ever dropped or
 * reordered no matter how flushes interleave with network failures.
 */
import { EventDraft, WireEvent } from "../types.js";
import { ApiClient } from "./api.js";

export class EventBuffer {
  readonly all: WireEvent[] = [];
  private nextSeq = 0;
  private firstUnsent = 0;
  private lastTimestamp = 0;
  private flushing = false;

  constructor(
    private readonly api: ApiClient,
    private readonly sessionId: string,
    readonly batchSize = 50,
  ) {}

  /** Assigns seq and a non-decreasing timestamp; returns the wire event. */
  append(draft: EventDraft, timestampMs: number): WireEvent {
    this.lastTimestamp = Math.max(this.lastTimestamp, Math.floor(timestampMs));
    const event: WireEvent = {
      seq: this.nextSeq++,
      timestamp_ms: this.lastTimestamp,
      game_id: draft.game_id,
      stage_id: draft.stage_id,
      event_type: draft.event_type,
      payload: draft.payload,
    };
    this.all.push(event);
    return event;
  }

  get pendingCount(): number {
    return this.all.length - this.firstUnsent;
  }

  /**
   * Pushes pending events; resolves true when everything is acknowledged.
   * Failures are swallowed (the buffer keeps state); callers retry.
   */
  async flush(): Promise<boolean> {
    if (this.flushing) return false; // background flushes must not reorder
    this.flushing = true;
    try {
      while (this.firstUnsent < this.all.length) {
        const batch = this.all.slice(this.firstUnsent, this.firstUnsent + this.batchSize);
        const ack = await this.api.postEvents(this.sessionId, batch);
        if (ack.rejected.length > 0) {
          throw new Error(`server rejected events: ${JSON.stringify(ack.rejected)}`);
        }
        this.firstUnsent += batch.length;
      }
      return true;
    } catch (error) {
      if (error instanceof Error && error.message.startsWith("server rejected")) {
        throw error; // schema bugs must surface, not retry forever
      }
      return false; // transient transport failure: keep buffering
    } finally {
      this.flushing = false;
    }
  }

  /** Flush until acknowledged, with bounded exponential backoff. */
  async drain(maxAttempts = 8, baseDelayMs = 50): Promise<void> {
    for (let attempt = 0; attempt < maxAttempts; attempt++) {
      if (await this.flush()) return;
      await new Promise((resolve) =>
        setTimeout(resolve, baseDelayMs * 2 ** Math.min(attempt, 5)));
    }
    throw new Error(`event buffer not drained after ${maxAttempts} attempts `
      + `(${this.pendingCount} pending)`);
  }
}
