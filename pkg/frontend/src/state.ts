// Session state: board arrangement being edited, submitted history, and the
// client-side locality guard.  Pure of DOM concerns so it is testable and
// reusable from scripted sessions.

import type { GameInfo, GameState, Suggestion } from "./api.js";
import { diffPositions, stepIsLocal, swapStaysLocal, swapped, type Locality } from "./locality.js";

export interface HistoryEntry {
  guess: number[];
  score: number;
}

export function identityArrangement(n: number): number[] {
  return Array.from({ length: n }, (_, i) => i + 1);
}

export type ScoreProblem = "out-of-range" | "impossible" | null;

export class Session {
  readonly info: GameInfo;
  history: HistoryEntry[] = [];
  staged: number[];
  compatibleCount: number | null = null;
  solved = false;

  constructor(info: GameInfo) {
    this.info = info;
    this.staged = identityArrangement(info.n);
  }

  get locality(): Locality {
    return { kind: this.info.locality, k: this.info.k };
  }

  get lastGuess(): number[] | null {
    return this.history.length ? this.history[this.history.length - 1].guess : null;
  }

  /** Swap two staged tokens; refused (returns false) when the staged guess
   * would no longer be submittable under the session locality. */
  trySwap(i: number, j: number): boolean {
    if (this.solved) return false;
    if (!swapStaysLocal(this.lastGuess, this.staged, i, j, this.locality)) return false;
    this.staged = swapped(this.staged, i, j);
    return true;
  }

  /** Whether a drag from position i could legally drop on position j. */
  swapIsLegal(i: number, j: number): boolean {
    return swapStaysLocal(this.lastGuess, this.staged, i, j, this.locality);
  }

  stagedIsSubmittable(): boolean {
    const last = this.lastGuess;
    return last === null || stepIsLocal(last, this.staged, this.locality);
  }

  stagedDiffersFromLast(): boolean {
    const last = this.lastGuess;
    return last === null || diffPositions(last, this.staged).length > 0;
  }

  /** Replace the staged arrangement (suggestion apply); only legal steps. */
  stage(guess: number[]): boolean {
    const last = this.lastGuess;
    if (last !== null && !stepIsLocal(last, guess, this.locality)) return false;
    this.staged = guess.slice();
    return true;
  }

  validateScore(score: number): ScoreProblem {
    if (!Number.isInteger(score) || score < 0 || score > this.info.n) return "out-of-range";
    if (score === this.info.n - 1) return "impossible";
    return null;
  }

  recordEntry(guess: number[], score: number, compatibleCount: number, status: string): void {
    this.history.push({ guess: guess.slice(), score });
    this.compatibleCount = compatibleCount;
    this.solved = status === "solved";
    this.staged = guess.slice();
  }

  /** Rebuild the view state from the server's transcript (the server owns it). */
  syncFromServer(state: GameState): void {
    this.history = state.guesses.map((g, idx) => ({ guess: g.slice(), score: state.scores[idx] }));
    this.compatibleCount = state.compatible_count;
    this.solved = state.status === "solved";
    const last = this.lastGuess;
    this.staged = last ? last.slice() : identityArrangement(this.info.n);
  }
}

export function validateNewGameForm(n: number, k: number): string | null {
  if (!Number.isInteger(n) || n < 2 || n > 12) return "board size must be between 2 and 12";
  if (!Number.isInteger(k) || k < 2 || k > n) return "locality parameter must be between 2 and n";
  return null;
}

export function suggestionIsApplicable(session: Session, suggestion: Suggestion): boolean {
  const last = session.lastGuess;
  return last === null || stepIsLocal(last, suggestion.guess, session.locality);
}
