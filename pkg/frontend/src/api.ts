// Typed client for the game service HTTP API.

import type { LocalityKind } from "./locality.js";

export type Mode = "codebreaker" | "assistant";

export interface GameInfo {
  id: string;
  n: number;
  k: number;
  locality: LocalityKind;
  mode: Mode;
}

export interface GameState extends GameInfo {
  status: "active" | "solved";
  guesses: number[][];
  scores: number[];
  compatible_count: number;
}

export interface GuessReply {
  score: number;
  count: number;
  status: "active" | "solved";
}

export interface FeedbackReply {
  ok: boolean;
  compatible_count: number;
  status: "active" | "solved";
}

export interface Suggestion {
  guess: number[];
  compatible_count: number;
}

export class ApiError extends Error {
  status: number;
  detail: unknown;

  constructor(status: number, detail: unknown) {
    super(typeof detail === "string" ? detail : JSON.stringify(detail));
    this.status = status;
    this.detail = detail;
  }

  /** 1-based positions reported by a locality rejection, if any. */
  get positions(): number[] {
    const d = this.detail as { positions?: number[] } | undefined;
    return d && Array.isArray(d.positions) ? d.positions : [];
  }
}

async function request<T>(base: string, path: string, init?: RequestInit): Promise<T> {
  const res = await fetch(base + path, {
    headers: { "Content-Type": "application/json" },
    ...init,
  });
  const body = await res.json().catch(() => null);
  if (!res.ok) {
    throw new ApiError(res.status, body && (body as { detail?: unknown }).detail !== undefined
      ? (body as { detail: unknown }).detail
      : body);
  }
  return body as T;
}

export class GameClient {
  constructor(readonly base: string) {}

  newGame(n: number, k: number, locality: LocalityKind, mode: Mode): Promise<GameInfo> {
    return request(this.base, "/api/games", {
      method: "POST",
      body: JSON.stringify({ n, k, locality, mode }),
    });
  }

  state(id: string): Promise<GameState> {
    return request(this.base, `/api/games/${id}`);
  }

  submitGuess(id: string, guess: number[]): Promise<GuessReply> {
    return request(this.base, `/api/games/${id}/guesses`, {
      method: "POST",
      body: JSON.stringify({ guess }),
    });
  }

  submitFeedback(id: string, guess: number[], score: number): Promise<FeedbackReply> {
    return request(this.base, `/api/games/${id}/feedback`, {
      method: "POST",
      body: JSON.stringify({ guess, score }),
    });
  }

  suggestion(id: string): Promise<Suggestion> {
    return request(this.base, `/api/games/${id}/suggestion`);
  }
}
