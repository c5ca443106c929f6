import { describe, expect, it } from "vitest";

import { layoutCognitive } from "../src/layout.js";
import { SessionState } from "../src/state.js";
import type { RunReport } from "../src/types.js";

const dummyReport: RunReport = {
  outcome: "fixed_point",
  iterations: 2,
  period: null,
  activations: { A: "1", B: "0" },
};

describe("session state", () => {
  it("cycles nodes off -> on and auto-clamps them", () => {
    const s = new SessionState();
    s.selectMap("m");
    s.toggleNode("A");
    expect([...s.pending.on]).toEqual(["A"]);
    expect(s.pending.clamped.has("A")).toBe(true);
    s.toggleNode("A");
    expect(s.pending.on.size).toBe(0);
    expect(s.pending.clamped.size).toBe(0);
  });

  it("sends clamp auto only when clamps mirror the ON set", () => {
    const s = new SessionState();
    s.selectMap("m");
    s.toggleNode("A");
    s.toggleNode("B");
    expect(s.toRequest(false).clamp).toBe("auto");
    s.toggleClamp("B");
    expect(s.toRequest(false).clamp).toEqual(["A"]);
    s.toggleClamp("A");
    expect(s.toRequest(false).clamp).toBe("none");
  });

  it("keeps history append-only and reloads scenarios by index", () => {
    const s = new SessionState();
    s.selectMap("m");
    s.toggleNode("A");
    const first = s.toRequest(false);
    s.record(first, dummyReport);
    s.toggleNode("B");
    s.record(s.toRequest(false), dummyReport);
    expect(s.history.length).toBe(2);
    const entry = s.loadHistory(0)!;
    expect(entry.scenario).toBe(first);
    expect([...s.pending.on]).toEqual(["A"]);
    expect(s.history.length).toBe(2);
  });

  it("resets pending state when the map changes", () => {
    const s = new SessionState();
    s.selectMap("m1");
    s.toggleNode("A");
    s.selectMap("m2");
    expect(s.pending.on.size).toBe(0);
    expect(s.lastReport).toBeNull();
  });

  it("drops pending labels unknown to the selected map", () => {
    const s = new SessionState();
    s.selectMap("m");
    s.toggleNode("A");
    s.toggleNode("Z");
    s.restrictToLabels(["A", "B"]);
    expect([...s.pending.on]).toEqual(["A"]);
  });
});

describe("deterministic layout", () => {
  it("produces identical positions for identical seeds", () => {
    const labels = ["A", "B", "C", "D"];
    const edges: [string, string, string][] = [
      ["A", "B", "1"],
      ["B", "C", "-1"],
      ["C", "D", "I"],
    ];
    const one = layoutCognitive(labels, edges, "seed-map", 800, 600);
    const two = layoutCognitive(labels, edges, "seed-map", 800, 600);
    expect([...one.entries()]).toEqual([...two.entries()]);
    const other = layoutCognitive(labels, edges, "other-map", 800, 600);
    expect([...one.entries()]).not.toEqual([...other.entries()]);
  });
});
