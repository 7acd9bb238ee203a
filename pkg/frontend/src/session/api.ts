/** Thin fetch wrapper over the telemetry service endpoints. */
import { GameId, LevelPack, WireEvent } from "../types.js";

export interface PostAck {
  accepted: number;
  duplicates: number;
  last_accepted_seq: number | null;
  rejected: { index: number; seq: number | null; error: string }[];
}

export interface FinalizeResponse {
  consent: "send" | "withhold";
  tracking_code?: string;
  deleted?: boolean;
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = fetch,
  ) {}

  private async call<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, {
      method,
      headers: { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const doc = (await response.json()) as T & { error?: string };
    if (!response.ok) {
      throw new Error(`${method} ${path} -> ${response.status}: ${doc.error}`);
    }
    return doc;
  }

  createSession(difficulty: string): Promise<{ session_id: string }> {
    return this.call("POST", "/sessions", { difficulty });
  }

  postEvents(sessionId: string, events: WireEvent[]): Promise<PostAck> {
    return this.call("POST", `/sessions/${sessionId}/events`, { events });
  }

  finalize(sessionId: string, consent: "send" | "withhold"): Promise<FinalizeResponse> {
    return this.call("POST", `/sessions/${sessionId}/finalize`, { consent });
  }

  async levels(game: GameId): Promise<unknown> {
    return this.call("GET", `/levels/${game}`);
  }

  async loadPack(): Promise<LevelPack> {
    const [groupSwap, sliding, memory, graph, shooter, meta] = await Promise.all([
      this.levels("group_swap"),
      this.levels("sliding_path"),
      this.levels("memory"),
      this.levels("graph"),
      this.levels("shooter"),
      this.levels("meta"),
    ]);
    return {
      group_swap: (groupSwap as { levels: LevelPack["group_swap"] }).levels,
      sliding_path: (sliding as { levels: LevelPack["sliding_path"] }).levels,
      memory: (memory as { levels: LevelPack["memory"] }).levels,
      graph: (graph as { levels: LevelPack["graph"] }).levels,
      shooter: (shooter as { levels: LevelPack["shooter"] }).levels,
      side_challenges:
        (meta as { challenges: LevelPack["side_challenges"] }).challenges,
    };
  }
}
