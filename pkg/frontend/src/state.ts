// Client-side session state.  The discrepancy readout always mirrors the
// last server response verbatim; signs are updated only from the server's
// flipped-index lists, never recomputed locally.

import type { SessionState, SwitchDelta, UndoDelta } from "./api.js";

export class SessionStore {
  state: SessionState | null = null;

  get id(): string {
    if (!this.state) throw new Error("no session yet");
    return this.state.id;
  }

  get discrepancy(): number {
    if (!this.state) throw new Error("no session yet");
    return this.state.discrepancy;
  }

  get n(): number {
    if (!this.state) throw new Error("no session yet");
    return this.state.n;
  }

  applyState(state: SessionState): void {
    this.state = state;
  }

  private flip(indices: number[], discrepancy: number, switchCount: number): void {
    if (!this.state) throw new Error("no session yet");
    for (const i of indices) {
      const w = this.state.weights[i];
      if (w === undefined) throw new Error(`flipped index ${i} out of range`);
      this.state.weights[i] = -w;
    }
    this.state.discrepancy = discrepancy;
    this.state.switch_count = switchCount;
  }

  applySwitch(delta: SwitchDelta): void {
    this.flip(delta.flipped, delta.discrepancy, delta.switch_count);
  }

  applyUndo(delta: UndoDelta): void {
    this.flip(delta.flipped, delta.discrepancy, delta.switch_count);
  }
}
