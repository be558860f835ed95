// Playground entry point: form, board, readouts, hint / undo / auto-play.

import { ApiClient, ApiError, type WireInt } from "./api.js";
import { boundForKind, thirdBound } from "./geometry.js";
import { PlaySession } from "./play.js";
import { BoardRenderer } from "./render.js";

const api = new ApiClient("");
const session = new PlaySession(api);

const el = (id: string) => document.getElementById(id) as HTMLElement;
const input = (id: string) => document.getElementById(id) as HTMLInputElement;
const select = (id: string) => document.getElementById(id) as HTMLSelectElement;

let hintKey: WireInt[] | null = null;
let busy = false;

const renderer = new BoardRenderer(el("board"), {
  onLineClick: (key) => void act(() => session.clickLine(key)),
});

function setBanner(text: string | null): void {
  const banner = el("banner");
  banner.textContent = text ?? "";
  banner.classList.toggle("hidden", text === null);
}

function redraw(): void {
  const state = session.store.state;
  if (!state) return;
  renderer.render(state, hintKey);
  el("discrepancy").textContent = String(state.discrepancy);
  el("switches").textContent = String(state.switch_count);
  el("bound-third").textContent = String(thirdBound(state.n));
  el("bound-n2").textContent = String(state.n - 2);
  void api
    .oracle(state.id)
    .then((info) => {
      el("bound-oracle").textContent = info.cap_exceeded ? `n > ${info.cap}` : String(info.value);
    })
    .catch(() => {
      el("bound-oracle").textContent = "?";
    });
}

async function act(fn: () => Promise<unknown>): Promise<void> {
  if (busy || !session.store.state) return;
  busy = true;
  try {
    await fn();
    hintKey = null;
    setBanner(null);
  } catch (err) {
    if (err instanceof ApiError && err.status === 409) {
      // stale view (e.g. nothing to undo): re-sync with the server
      await session.refresh().catch(() => setBanner("connection lost"));
      setBanner(err.message);
    } else if (err instanceof ApiError) {
      setBanner(`${err.code}: ${err.message}`);
    } else {
      setBanner("connection lost");
    }
  } finally {
    busy = false;
    redraw();
  }
}

async function createSession(): Promise<void> {
  busy = true;
  try {
    const kind = select("kind").value;
    await session.start({
      kind,
      n: Number(input("n").value || 0),
      rows: Number(input("rows").value || 0),
      cols: Number(input("cols").value || 0),
      k: Number(input("k").value || 1),
      seed: Number(input("seed").value || 0),
      weight_mode: select("weights").value,
    });
    hintKey = null;
    setBanner(null);
  } catch (err) {
    setBanner(err instanceof ApiError ? `${err.code}: ${err.message}` : "connection lost");
  } finally {
    busy = false;
    redraw();
  }
}

function wire(): void {
  el("create").addEventListener("click", () => void createSession());
  el("undo").addEventListener("click", () => void act(() => session.undo()));
  el("hint").addEventListener("click", () =>
    void act(async () => {
      const hint = await session.hint(select("solver").value);
      hintKey = hint.suggestion;
      el("projection").textContent = hint.suggestion
        ? `suggested line [${hint.suggestion.join(", ")}]; certificate ends at ` +
          `${hint.projected_final} (bound ${boundForKind(hint.bound_kind, session.store.n)})`
        : "nothing to do: board already at its certificate value";
    }),
  );
  el("autoplay").addEventListener("click", () =>
    void act(async () => {
      const result = await session.autoPlay(select("solver").value);
      el("projection").textContent =
        `auto-play: ${result.steps} switches, final ${result.final}, ` +
        `${result.boundKind} bound ${result.bound} ${result.metBound ? "met" : "MISSED"}`;
    }),
  );
  void createSession();
}

wire();
