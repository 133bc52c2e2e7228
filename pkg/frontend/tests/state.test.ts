import { describe, expect, it } from "vitest";

import {
  addCustomer,
  canSolve,
  clearAll,
  improvementRows,
  initialState,
  instanceDoc,
  removeCustomer,
  routePolylines,
  scheduleRows,
  setParam,
  solveFailed,
  solveStarted,
  solveSucceeded,
  toggleRoutingModel,
} from "../src/state.js";
import type { SolvePayload } from "../src/types.js";

function payloadFor(customers: number): SolvePayload {
  const stops = Array.from({ length: customers }, (_, i) => i + 1);
  return {
    solution: {
      routes: [stops.slice(0, 2), stops.slice(2)],
      schedules: [stops.slice(0, 2).map((s) => 10 * s),
                  stops.slice(2).map((s) => 10 * s)],
      fingerprint: {},
    },
    report: {
      assignment: 500, travel: 100, waiting: 50, idling: 25, overtime: 10,
      total: 685, replications: 100,
      per_team: [],
    },
    mean_arrivals: [stops.slice(0, 2).map((s) => 10 * s + 1),
                    stops.slice(2).map((s) => 10 * s + 1)],
    level_totals: [700, 690, 685],
  };
}

describe("state transitions", () => {
  it("adds and removes customers, tracking the count", () => {
    let s = initialState();
    s = addCustomer(s, { x: 1, y: 2 });
    s = addCustomer(s, { x: -3, y: 4 });
    expect(s.customers.length).toBe(2);
    expect(s.params.n_customers).toBe(2);
    s = removeCustomer(s, 0);
    expect(s.customers).toEqual([{ x: -3, y: 4 }]);
    expect(s.params.n_customers).toBe(1);
  });

  it("solve is disabled until the instance is valid", () => {
    let s = initialState();
    expect(canSolve(s)).toBe(false); // no customers yet
    s = addCustomer(s, { x: 5, y: 5 });
    expect(canSolve(s)).toBe(true);
    s = setParam(s, "end_time", -1);
    expect(canSolve(s)).toBe(false);
    s = setParam(s, "end_time", 480);
    const noModels = toggleRoutingModel(
      toggleRoutingModel(toggleRoutingModel(s, "distance"), "capacity"),
      "time_windows",
    );
    expect(canSolve(noModels)).toBe(false);
  });

  it("serializes the instance document in km relative to the depot", () => {
    let s = initialState();
    s = addCustomer(s, { x: 5.25, y: -3.5 });
    const doc = instanceDoc(s);
    expect(doc.kind).toBe("instance");
    expect(doc.customers).toEqual([[5.25, -3.5]]);
    expect(doc.params.n_customers).toBe(1);
  });

  it("walks the editing -> solving -> viewing machine", () => {
    let s = initialState();
    for (let i = 0; i < 4; i++) s = addCustomer(s, { x: i + 2, y: i });
    s = solveStarted(s, "job-1");
    expect(s.phase).toBe("solving");
    expect(canSolve(s)).toBe(false); // one in-flight job at a time
    s = solveSucceeded(s, payloadFor(4));
    expect(s.phase).toBe("viewing");
    expect(s.result?.report.total).toBe(685);
  });

  it("a failed solve returns to editing with a banner", () => {
    let s = addCustomer(initialState(), { x: 3, y: 3 });
    s = solveStarted(s, "job-2");
    s = solveFailed(s, "solve failed: boom");
    expect(s.phase).toBe("editing");
    expect(s.banner).toContain("boom");
  });

  it("clear restores the pristine state", () => {
    let s = initialState();
    s = addCustomer(s, { x: 1, y: 1 });
    s = setParam(s, "cancel_rate", 0.5);
    s = solveSucceeded(solveStarted(s, "j"), payloadFor(1));
    expect(clearAll()).toEqual(initialState());
  });
});

describe("result projections", () => {
  function viewingState() {
    let s = initialState();
    for (let i = 0; i < 4; i++) s = addCustomer(s, { x: i + 1, y: -i });
    return solveSucceeded(solveStarted(s, "j"), payloadFor(4));
  }

  it("polylines start and end at the depot and cover every customer", () => {
    const lines = routePolylines(viewingState());
    expect(lines.length).toBe(2);
    const covered: number[] = [];
    for (const line of lines) {
      expect(line[0]).toEqual({ x: 0, y: 0 });
      expect(line[line.length - 1]).toEqual({ x: 0, y: 0 });
      covered.push(line.length - 2);
    }
    expect(covered.reduce((a, b) => a + b, 0)).toBe(4);
  });

  it("schedule rows pair appointments with mean arrivals", () => {
    const rows = scheduleRows(viewingState());
    expect(rows.length).toBe(4);
    expect(rows[0]).toEqual({ team: 0, stop: 1, appointment: 10, meanArrival: 11 });
  });

  it("improvement rows report per-level relative gains", () => {
    const rows = improvementRows(viewingState());
    expect(rows.length).toBe(3);
    expect(rows[0].relativeImprovement).toBe(0);
    expect(rows[2].relativeImprovement).toBeCloseTo((700 - 685) / 700, 9);
  });
});
