// Design session: the scenario draft, per-panel request lifecycles, and
// the guarantees the explorer relies on:
//
//   * a draft is validated client-side before any request leaves;
//   * slider movement debounces into at most one request per panel per
//     window, keeping a single request in flight in practice;
//   * every request carries a sequence number and a response is applied
//     only while it is still the newest, so stale responses are dropped.

import type { ApiClient } from "./api.js";
import type { Scenario, TableResponse } from "./types.js";
import { validateScenario, type Diagnostic } from "./validate.js";

export type Scheduler = (fn: () => void, ms: number) => void;

export interface PanelState {
  command: string;
  dirty: boolean;
  inFlight: boolean;
  lastSeq: number;
  appliedSeq: number;
  response: TableResponse | null;
  error: string | null;
}

export interface SessionEvent {
  panel: string;
  state: PanelState;
}

const DEFAULT_DEBOUNCE_MS = 150;

export class DesignSession {
  draft: Scenario;
  readonly panels = new Map<string, PanelState>();
  private readonly api: ApiClient;
  private readonly schedule: Scheduler;
  private readonly debounceMs: number;
  private readonly listeners: Array<(event: SessionEvent) => void> = [];
  private readonly pendingTimers = new Set<string>();
  private validationErrors: Diagnostic[] = [];

  constructor(
    api: ApiClient,
    draft: Scenario,
    options: { scheduler?: Scheduler; debounceMs?: number } = {},
  ) {
    this.api = api;
    this.draft = structuredClone(draft);
    this.schedule = options.scheduler ?? ((fn, ms) => setTimeout(fn, ms));
    this.debounceMs = options.debounceMs ?? DEFAULT_DEBOUNCE_MS;
  }

  registerPanel(panel: string, command: string): void {
    this.panels.set(panel, {
      command,
      dirty: true,
      inFlight: false,
      lastSeq: 0,
      appliedSeq: 0,
      response: null,
      error: null,
    });
  }

  onChange(listener: (event: SessionEvent) => void): void {
    this.listeners.push(listener);
  }

  get diagnostics(): Diagnostic[] {
    return this.validationErrors;
  }

  /** Apply an edit to the draft and mark every panel dirty. */
  updateDraft(mutate: (draft: Scenario) => void): void {
    const next = structuredClone(this.draft);
    mutate(next);
    this.draft = next;
    this.validationErrors = validateScenario(this.draft);
    for (const [panel, state] of this.panels) {
      state.dirty = true;
      this.emit(panel, state);
    }
  }

  /** Debounced refresh of one panel; repeated calls coalesce. */
  requestRefresh(panel: string): void {
    const state = this.mustPanel(panel);
    if (!state.dirty) return;
    if (this.pendingTimers.has(panel)) return;
    this.pendingTimers.add(panel);
    this.schedule(() => {
      this.pendingTimers.delete(panel);
      void this.fireNow(panel);
    }, this.debounceMs);
  }

  refreshAll(): void {
    for (const panel of this.panels.keys()) {
      this.requestRefresh(panel);
    }
  }

  /** Issue the panel's request immediately. No request leaves an invalid draft. */
  async fireNow(panel: string): Promise<void> {
    const state = this.mustPanel(panel);
    this.validationErrors = validateScenario(this.draft);
    if (this.validationErrors.length > 0) {
      state.error = this.validationErrors
        .map((d) => `${d.path || "<draft>"}: ${d.message}`)
        .join("\n");
      state.dirty = false;
      this.emit(panel, state);
      return;
    }
    const seq = ++state.lastSeq;
    state.inFlight = true;
    state.dirty = false;
    const snapshot = structuredClone(this.draft);
    try {
      const response = await this.api.post(state.command, snapshot);
      if (seq !== state.lastSeq) return; // superseded while in flight: drop
      state.response = response;
      state.error = null;
    } catch (err) {
      if (seq !== state.lastSeq) return;
      state.error = err instanceof Error ? err.message : String(err);
    } finally {
      if (seq === state.lastSeq) {
        state.inFlight = false;
      }
    }
    state.appliedSeq = seq;
    this.emit(panel, state);
  }

  private mustPanel(panel: string): PanelState {
    const state = this.panels.get(panel);
    if (!state) throw new Error(`unregistered panel ${panel}`);
    return state;
  }

  private emit(panel: string, state: PanelState): void {
    for (const listener of this.listeners) {
      listener({ panel, state });
    }
  }
}
