// DOM rendering and drag-and-drop for one game session.

import { ApiError, GameClient, type Suggestion } from "./api.js";
import { Session } from "./state.js";

/** Deterministic token color from the symbol index (reproducible screenshots). */
export function tokenColor(symbol: number, n: number): string {
  const hue = Math.round((360 * (symbol - 1)) / n);
  return `hsl(${hue}, 70%, 55%)`;
}

export interface BoardCallbacks {
  onVictory?: () => void;
}

export class BoardView {
  readonly root: HTMLElement;
  readonly session: Session;
  readonly client: GameClient;
  private dragFrom: number | null = null;
  private pendingSuggestion: Suggestion | null = null;
  private callbacks: BoardCallbacks;

  constructor(root: HTMLElement, session: Session, client: GameClient, callbacks: BoardCallbacks = {}) {
    this.root = root;
    this.session = session;
    this.client = client;
    this.callbacks = callbacks;
    this.render();
  }

  // -- rendering --------------------------------------------------------

  render(): void {
    this.root.innerHTML = "";
    this.root.appendChild(this.renderStatus());
    this.root.appendChild(this.renderTokens());
    this.root.appendChild(this.renderControls());
    this.root.appendChild(this.renderSuggestionPanel());
    this.root.appendChild(this.renderHistory());
  }

  private renderStatus(): HTMLElement {
    const div = document.createElement("div");
    div.className = "status";
    const s = this.session;
    const count = s.compatibleCount === null ? "?" : String(s.compatibleCount);
    div.textContent = s.solved
      ? `solved in ${s.history.length} guesses`
      : `${s.info.mode} | ${s.info.locality}(${s.info.k}) | compatible: ${count}`;
    if (s.solved) div.classList.add("victory");
    return div;
  }

  private renderTokens(): HTMLElement {
    const row = document.createElement("div");
    row.className = "board";
    const s = this.session;
    s.staged.forEach((symbol, pos) => {
      const token = document.createElement("div");
      token.className = "token";
      token.textContent = String(symbol);
      token.style.backgroundColor = tokenColor(symbol, s.info.n);
      token.dataset.pos = String(pos);
      token.draggable = !s.solved;
      token.addEventListener("dragstart", (e) => this.onDragStart(e, pos));
      token.addEventListener("dragover", (e) => this.onDragOver(e, pos));
      token.addEventListener("drop", (e) => this.onDrop(e, pos));
      token.addEventListener("dragend", () => this.onDragEnd());
      row.appendChild(token);
    });
    return row;
  }

  private renderControls(): HTMLElement {
    const div = document.createElement("div");
    div.className = "controls";
    const s = this.session;
    if (s.info.mode === "codebreaker") {
      const btn = document.createElement("button");
      btn.className = "submit-guess";
      btn.textContent = "submit guess";
      btn.disabled = s.solved;
      btn.addEventListener("click", () => void this.submitGuess());
      div.appendChild(btn);
    } else {
      const input = document.createElement("input");
      input.className = "score-input";
      input.type = "number";
      input.min = "0";
      input.max = String(s.info.n);
      const btn = document.createElement("button");
      btn.className = "submit-feedback";
      btn.textContent = "submit guess + score";
      btn.disabled = s.solved;
      btn.addEventListener("click", () => void this.submitFeedback(Number(input.value)));
      div.appendChild(input);
      div.appendChild(btn);
    }
    const banner = document.createElement("div");
    banner.className = "banner";
    div.appendChild(banner);
    return div;
  }

  private renderSuggestionPanel(): HTMLElement {
    const div = document.createElement("div");
    div.className = "suggestion";
    const btn = document.createElement("button");
    btn.className = "request-suggestion";
    btn.textContent = "suggest next guess";
    btn.disabled = this.session.solved;
    btn.addEventListener("click", () => void this.requestSuggestion());
    div.appendChild(btn);
    if (this.pendingSuggestion) {
      const ghost = document.createElement("div");
      ghost.className = "ghost";
      for (const symbol of this.pendingSuggestion.guess) {
        const t = document.createElement("span");
        t.className = "ghost-token";
        t.textContent = String(symbol);
        t.style.borderColor = tokenColor(symbol, this.session.info.n);
        ghost.appendChild(t);
      }
      const apply = document.createElement("button");
      apply.className = "apply-suggestion";
      apply.textContent = "apply";
      apply.addEventListener("click", () => {
        if (this.pendingSuggestion && this.session.stage(this.pendingSuggestion.guess)) {
          this.pendingSuggestion = null;
          this.render();
        }
      });
      ghost.appendChild(apply);
      div.appendChild(ghost);
    }
    return div;
  }

  private renderHistory(): HTMLElement {
    const list = document.createElement("ol");
    list.className = "history";
    for (const entry of this.session.history) {
      const item = document.createElement("li");
      item.textContent = `${entry.guess.join(" ")}  ->  ${entry.score}`;
      list.appendChild(item);
    }
    return list;
  }

  private banner(text: string, kind: "warning" | "error" | "", retry?: () => void): void {
    const el = this.root.querySelector(".banner") as HTMLElement | null;
    if (!el) return;
    el.textContent = text;
    el.className = `banner ${kind}`;
    if (retry) {
      const btn = document.createElement("button");
      btn.className = "retry";
      btn.textContent = "retry";
      btn.addEventListener("click", () => void retry());
      el.appendChild(btn);
    }
  }

  private highlightPositions(positions: number[]): void {
    for (const p of positions) {
      const token = this.root.querySelector(`.token[data-pos="${p - 1}"]`);
      token?.classList.add("violation");
    }
  }

  // -- drag and drop ----------------------------------------------------

  private onDragStart(e: DragEvent, pos: number): void {
    this.dragFrom = pos;
    e.dataTransfer?.setData("text/plain", String(pos));
    // show which drops are legal right now
    const targets = new Set(
      this.session.staged.map((_, j) => j).filter((j) => j !== pos && this.session.swapIsLegal(pos, j)),
    );
    this.root.querySelectorAll<HTMLElement>(".token").forEach((el) => {
      const j = Number(el.dataset.pos);
      if (j === pos) return;
      el.classList.add(targets.has(j) ? "legal-target" : "illegal-target");
    });
  }

  private onDragOver(e: DragEvent, pos: number): void {
    if (this.dragFrom !== null && this.session.swapIsLegal(this.dragFrom, pos)) {
      e.preventDefault(); // allow the drop
    }
  }

  private onDrop(e: DragEvent, pos: number): void {
    e.preventDefault();
    if (this.dragFrom === null) return;
    const ok = this.session.trySwap(this.dragFrom, pos);
    this.dragFrom = null;
    this.render();
    if (!ok) this.banner("that swap would break the locality rule", "warning");
  }

  private onDragEnd(): void {
    this.dragFrom = null;
    this.root.querySelectorAll(".token").forEach((el) => {
      el.classList.remove("legal-target", "illegal-target");
    });
  }

  // -- server actions ---------------------------------------------------

  async submitGuess(): Promise<void> {
    const s = this.session;
    if (!s.stagedIsSubmittable()) {
      this.banner("staged guess is not a legal step", "error");
      return;
    }
    const staged = s.staged.slice();
    try {
      const reply = await this.client.submitGuess(s.info.id, staged);
      s.recordEntry(staged, reply.score, reply.count, reply.status);
      this.pendingSuggestion = null;
      this.render();
      if (s.solved) this.callbacks.onVictory?.();
    } catch (err) {
      this.handleError(err, () => this.submitGuess());
    }
  }

  async submitFeedback(score: number): Promise<void> {
    const s = this.session;
    const problem = s.validateScore(score);
    if (problem === "impossible") {
      this.banner(`a score of ${score} = n-1 is impossible for permutations`, "warning");
      return;
    }
    if (problem === "out-of-range") {
      this.banner(`scores lie between 0 and ${s.info.n}`, "warning");
      return;
    }
    const staged = s.staged.slice();
    try {
      const reply = await this.client.submitFeedback(s.info.id, staged, score);
      s.recordEntry(staged, score, reply.compatible_count, reply.status);
      this.pendingSuggestion = null;
      this.render();
      if (s.solved) this.callbacks.onVictory?.();
    } catch (err) {
      this.handleError(err, () => this.submitFeedback(score));
    }
  }

  async requestSuggestion(): Promise<void> {
    try {
      this.pendingSuggestion = await this.client.suggestion(this.session.info.id);
      this.render();
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        this.banner("game is already solved", "");
        return;
      }
      this.handleError(err, () => this.requestSuggestion());
    }
  }

  private handleError(err: unknown, retry: () => Promise<void>): void {
    if (err instanceof ApiError) {
      if (err.status === 422 && err.positions.length) {
        this.highlightPositions(err.positions);
        this.banner(`rejected: positions ${err.positions.join(", ")}`, "error");
        return;
      }
      if (err.status === 409) {
        this.banner("game is already solved", "");
        return;
      }
      this.banner(`rejected: ${err.message}`, "error");
      return;
    }
    // network failure: offer a retry
    this.banner("network failure", "error", retry);
  }
}
