// App bootstrap: the new-game form and the board it spawns.

import { GameClient, type Mode } from "./api.js";
import { BoardView } from "./board.js";
import { Session, validateNewGameForm } from "./state.js";
import type { LocalityKind } from "./locality.js";

export function setupApp(root: HTMLElement, client: GameClient): void {
  const form = document.createElement("form");
  form.className = "new-game";
  form.innerHTML = `
    <label>n <input name="n" type="number" value="6" min="2" max="12"></label>
    <label>k <input name="k" type="number" value="2" min="2" max="12"></label>
    <label>locality
      <select name="locality">
        <option value="ell">ell (any k positions)</option>
        <option value="window">window (k consecutive)</option>
      </select>
    </label>
    <label>mode
      <select name="mode">
        <option value="codebreaker">codebreaker</option>
        <option value="assistant">assistant</option>
      </select>
    </label>
    <button type="submit">new game</button>
    <span class="form-error"></span>
  `;
  const boardRoot = document.createElement("div");
  boardRoot.className = "board-root";

  form.addEventListener("submit", (e) => {
    e.preventDefault();
    const data = new FormData(form);
    const n = Number(data.get("n"));
    const k = Number(data.get("k"));
    const problem = validateNewGameForm(n, k);
    const errorEl = form.querySelector(".form-error") as HTMLElement;
    if (problem) {
      errorEl.textContent = problem;
      return;
    }
    errorEl.textContent = "";
    const locality = String(data.get("locality")) as LocalityKind;
    const mode = String(data.get("mode")) as Mode;
    void client.newGame(n, k, locality, mode).then(
      (info) => {
        new BoardView(boardRoot, new Session(info), client);
      },
      (err) => {
        errorEl.textContent = String(err instanceof Error ? err.message : err);
      },
    );
  });

  root.appendChild(form);
  root.appendChild(boardRoot);
}

declare global {
  interface Window {
    PERMIND_API_BASE?: string;
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  const base = window.PERMIND_API_BASE ?? "http://127.0.0.1:8008";
  setupApp(document.getElementById("app")!, new GameClient(base));
}
