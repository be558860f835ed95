// DOM-free play controller: one session per instance, requests serialized
// by awaiting each call.  The browser layer and the scripted tests both
// drive the game exclusively through this class.

import { ApiClient, type GeneratorSpec, type Hint, type WireInt } from "./api.js";
import { boundForKind, meetsBound } from "./geometry.js";
import { SessionStore } from "./state.js";

export interface AutoPlayResult {
  steps: number;
  final: number;
  boundKind: string;
  bound: number;
  metBound: boolean;
}

export class PlaySession {
  store = new SessionStore();

  constructor(private api: ApiClient) {}

  async start(generator: GeneratorSpec): Promise<void> {
    this.store.applyState(await this.api.createFromGenerator(generator));
  }

  async startInstance(points: WireInt[][], weights: number[]): Promise<void> {
    this.store.applyState(await this.api.createFromInstance(points, weights));
  }

  /** The number the UI shows; always the last server-reported value. */
  readout(): number {
    return this.store.discrepancy;
  }

  /** Re-fetch authoritative state (used after conflicts or reconnects). */
  async refresh(): Promise<void> {
    this.store.applyState(await this.api.getState(this.store.id));
  }

  async clickLine(key: WireInt[]): Promise<void> {
    this.store.applySwitch(await this.api.applySwitch(this.store.id, key));
  }

  async undo(): Promise<void> {
    this.store.applyUndo(await this.api.undo(this.store.id));
  }

  hint(solver: string): Promise<Hint> {
    return this.api.hint(this.store.id, solver);
  }

  /**
   * Fetch one certificate from the current state and step through it,
   * optionally re-checking the readout against the server at every step.
   */
  async autoPlay(solver: string, verifyEachStep = false): Promise<AutoPlayResult> {
    const hint = await this.hint(solver);
    let steps = 0;
    for (const key of hint.switches) {
      await this.clickLine(key);
      steps += 1;
      if (verifyEachStep) {
        const remote = await this.api.getState(this.store.id);
        if (remote.discrepancy !== this.readout()) {
          throw new Error(
            `readout ${this.readout()} diverged from server ${remote.discrepancy}`,
          );
        }
      }
    }
    const final = this.readout();
    if (final !== hint.projected_final) {
      throw new Error(`certificate replay ended at ${final}, projected ${hint.projected_final}`);
    }
    return {
      steps,
      final,
      boundKind: hint.bound_kind,
      bound: boundForKind(hint.bound_kind, this.store.n),
      metBound: meetsBound(hint.bound_kind, final, this.store.n),
    };
  }
}
