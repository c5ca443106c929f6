import type { RunReport, ScenarioRequest, Side } from "./types.js";

export interface PendingScenario {
  on: Set<string>;
  clamped: Set<string>;
  side: Side;
  threshold: number;
  maxIters: number;
}

export interface HistoryEntry {
  mapId: string;
  scenario: ScenarioRequest;
  report: RunReport;
}

function freshScenario(): PendingScenario {
  return { on: new Set(), clamped: new Set(), side: "domain", threshold: 1, maxIters: 1000 };
}

/**
 * Per-session state: the selected map, the scenario being edited, the
 * last report and an append-only history of (scenario, outcome) pairs.
 */
export class SessionState {
  mapId: string | null = null;
  pending: PendingScenario = freshScenario();
  lastReport: RunReport | null = null;
  readonly history: HistoryEntry[] = [];

  selectMap(mapId: string): void {
    this.mapId = mapId;
    this.pending = freshScenario();
    this.lastReport = null;
  }

  /** Clicking a node cycles it off -> on -> off; clamps follow the ON set. */
  toggleNode(label: string): void {
    if (this.pending.on.has(label)) {
      this.pending.on.delete(label);
      this.pending.clamped.delete(label);
    } else {
      this.pending.on.add(label);
      this.pending.clamped.add(label);
    }
  }

  toggleClamp(label: string): void {
    if (!this.pending.on.has(label)) return;
    if (this.pending.clamped.has(label)) {
      this.pending.clamped.delete(label);
    } else {
      this.pending.clamped.add(label);
    }
  }

  setSide(side: Side): void {
    this.pending.side = side;
    this.pending.on.clear();
    this.pending.clamped.clear();
  }

  /** Drop pending labels the new map does not declare. */
  restrictToLabels(labels: string[]): void {
    const known = new Set(labels);
    for (const set of [this.pending.on, this.pending.clamped]) {
      for (const label of [...set]) {
        if (!known.has(label)) set.delete(label);
      }
    }
  }

  toRequest(relational: boolean): ScenarioRequest {
    const on = [...this.pending.on];
    const clampSet = this.pending.clamped;
    let clamp: ScenarioRequest["clamp"];
    if (clampSet.size === on.length && on.every((l) => clampSet.has(l))) {
      clamp = "auto";
    } else if (clampSet.size === 0) {
      clamp = "none";
    } else {
      clamp = [...clampSet];
    }
    const request: ScenarioRequest = {
      on,
      clamp,
      threshold: this.pending.threshold,
      max_iters: this.pending.maxIters,
    };
    if (relational) request.side = this.pending.side;
    return request;
  }

  record(scenario: ScenarioRequest, report: RunReport): void {
    if (!this.mapId) return;
    this.history.push({ mapId: this.mapId, scenario, report });
    this.lastReport = report;
  }

  /** Re-load a prior scenario (history itself is never mutated). */
  loadHistory(index: number): HistoryEntry | null {
    const entry = this.history[index];
    if (!entry) return null;
    this.pending.on = new Set(entry.scenario.on);
    if (entry.scenario.clamp === "auto") {
      this.pending.clamped = new Set(entry.scenario.on);
    } else if (entry.scenario.clamp === "none") {
      this.pending.clamped = new Set();
    } else {
      this.pending.clamped = new Set(entry.scenario.clamp);
    }
    if (entry.scenario.side) this.pending.side = entry.scenario.side;
    if (entry.scenario.threshold !== undefined) this.pending.threshold = entry.scenario.threshold;
    if (entry.scenario.max_iters !== undefined) this.pending.maxIters = entry.scenario.max_iters;
    this.lastReport = entry.report;
    return entry;
  }
}
