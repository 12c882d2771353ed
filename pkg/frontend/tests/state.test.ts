import { describe, expect, it } from "vitest";

import type { GameInfo } from "../src/api.js";
import { Session, identityArrangement, validateNewGameForm } from "../src/state.js";

function info(overrides: Partial<GameInfo> = {}): GameInfo {
  return { id: "g1", n: 5, k: 2, locality: "ell", mode: "assistant", ...overrides };
}

describe("Session", () => {
  it("starts at the identity arrangement", () => {
    const s = new Session(info());
    expect(s.staged).toEqual([1, 2, 3, 4, 5]);
    expect(s.lastGuess).toBeNull();
  });

  it("first guess may be rearranged freely", () => {
    const s = new Session(info());
    expect(s.trySwap(0, 3)).toBe(true);
    expect(s.trySwap(1, 4)).toBe(true);
    expect(s.staged).toEqual([4, 5, 3, 1, 2]);
  });

  it("enforces the locality budget after the first guess", () => {
    const s = new Session(info());
    s.recordEntry([1, 2, 3, 4, 5], 0, 44, "active");
    expect(s.trySwap(0, 1)).toBe(true);
    expect(s.trySwap(1, 2)).toBe(false); // would move three positions
    expect(s.staged).toEqual([2, 1, 3, 4, 5]);
    expect(s.trySwap(0, 1)).toBe(true); // undo is always fine
  });

  it("window locality restricts to nearby swaps", () => {
    const s = new Session(info({ locality: "window" }));
    s.recordEntry([1, 2, 3, 4, 5], 0, 44, "active");
    expect(s.swapIsLegal(0, 1)).toBe(true);
    expect(s.swapIsLegal(0, 4)).toBe(false);
  });

  it("flags the impossible score n-1", () => {
    const s = new Session(info());
    expect(s.validateScore(4)).toBe("impossible");
    expect(s.validateScore(5)).toBeNull();
    expect(s.validateScore(6)).toBe("out-of-range");
    expect(s.validateScore(-1)).toBe("out-of-range");
  });

  it("history mirrors the server transcript", () => {
    const s = new Session(info({ n: 3 }));
    s.syncFromServer({
      ...info({ n: 3 }),
      status: "active",
      guesses: [
        [1, 2, 3],
        [2, 1, 3],
      ],
      scores: [0, 1],
      compatible_count: 1,
    });
    expect(s.history.length).toBe(2);
    expect(s.staged).toEqual([2, 1, 3]);
    expect(s.compatibleCount).toBe(1);
  });

  it("stage refuses non-local suggestions", () => {
    const s = new Session(info());
    s.recordEntry([1, 2, 3, 4, 5], 0, 44, "active");
    expect(s.stage([2, 3, 1, 4, 5])).toBe(false);
    expect(s.stage([2, 1, 3, 4, 5])).toBe(true);
  });
});

describe("validateNewGameForm", () => {
  it("bounds the board size to 2..12", () => {
    expect(validateNewGameForm(1, 2)).toMatch(/between 2 and 12/);
    expect(validateNewGameForm(13, 2)).toMatch(/between 2 and 12/);
    expect(validateNewGameForm(6, 2)).toBeNull();
  });

  it("bounds k to 2..n", () => {
    expect(validateNewGameForm(4, 1)).toMatch(/between 2 and n/);
    expect(validateNewGameForm(4, 5)).toMatch(/between 2 and n/);
  });
});

describe("identityArrangement", () => {
  it("is 1..n", () => {
    expect(identityArrangement(4)).toEqual([1, 2, 3, 4]);
  });
});
