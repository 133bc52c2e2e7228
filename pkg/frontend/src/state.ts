// Application state and pure transition functions. The DOM layer only ever
// calls these and re-renders; no cost number is ever computed client-side.

import { defaultConfig, defaultParams } from "./defaults.js";
import type {
  ConfigDoc,
  InstanceDoc,
  ParamsDoc,
  Point,
  SolvePayload,
} from "./types.js";
import { validateConfig, validateCustomerCount, validateParams } from "./validate.js";

export type Phase = "editing" | "solving" | "viewing";

export interface AppState {
  phase: Phase;
  customers: Point[];
  params: ParamsDoc;
  config: ConfigDoc;
  jobId: string | null;
  result: SolvePayload | null;
  banner: string | null;
}

export function initialState(): AppState {
  return {
    phase: "editing",
    customers: [],
    params: defaultParams(),
    config: defaultConfig(),
    jobId: null,
    result: null,
    banner: null,
  };
}

export function addCustomer(state: AppState, km: Point): AppState {
  const customers = [...state.customers, km];
  return {
    ...state,
    phase: "editing",
    customers,
    params: { ...state.params, n_customers: customers.length },
    result: null,
  };
}

export function removeCustomer(state: AppState, index: number): AppState {
  const customers = state.customers.filter((_, i) => i !== index);
  return {
    ...state,
    phase: "editing",
    customers,
    params: { ...state.params, n_customers: customers.length },
    result: null,
  };
}

export function clearAll(): AppState {
  return initialState();
}

export function setParam(state: AppState, field: keyof ParamsDoc,
                         value: number): AppState {
  return { ...state, params: { ...state.params, [field]: value } };
}

export function setConfigField(state: AppState, field: keyof ConfigDoc,
                               value: ConfigDoc[keyof ConfigDoc]): AppState {
  return { ...state, config: { ...state.config, [field]: value } };
}

export function toggleRoutingModel(state: AppState, model: string): AppState {
  const current = new Set(state.config.routing_models);
  if (current.has(model)) {
    current.delete(model);
  } else {
    current.add(model);
  }
  const ordered = ["distance", "capacity", "time_windows"].filter((m) =>
    current.has(m),
  );
  return setConfigField(state, "routing_models", ordered);
}

export function problems(state: AppState) {
  return [
    ...validateCustomerCount(state.customers.length),
    ...validateParams(state.params),
    ...validateConfig(state.config),
  ];
}

export function canSolve(state: AppState): boolean {
  return state.phase !== "solving" && problems(state).length === 0;
}

export function instanceDoc(state: AppState): InstanceDoc {
  return {
    schema_version: 1,
    kind: "instance",
    params: { ...state.params, n_customers: state.customers.length },
    customers: state.customers.map((p) => [p.x, p.y] as [number, number]),
  };
}

export function solveStarted(state: AppState, jobId: string): AppState {
  return { ...state, phase: "solving", jobId, banner: null, result: null };
}

export function solveSucceeded(state: AppState, payload: SolvePayload): AppState {
  return { ...state, phase: "viewing", jobId: null, result: payload };
}

export function solveFailed(state: AppState, message: string): AppState {
  return { ...state, phase: "editing", jobId: null, banner: message };
}

export function loadScenario(state: AppState, instance: InstanceDoc,
                             config: ConfigDoc): AppState {
  return {
    ...state,
    phase: "editing",
    customers: instance.customers.map(([x, y]) => ({ x, y })),
    params: { ...instance.params },
    config: { ...config },
    result: null,
    banner: null,
  };
}

/** Per-team polylines in km, closed through the depot at both ends. */
export function routePolylines(state: AppState): Point[][] {
  if (!state.result) return [];
  return state.result.solution.routes.map((stops) => [
    { x: 0, y: 0 },
    ...stops.map((c) => state.customers[c - 1]),
    { x: 0, y: 0 },
  ]);
}

export interface ScheduleRow {
  team: number;
  stop: number;
  appointment: number;
  meanArrival: number | null;
}

export function scheduleRows(state: AppState): ScheduleRow[] {
  if (!state.result) return [];
  const rows: ScheduleRow[] = [];
  const { routes, schedules } = state.result.solution;
  routes.forEach((stops, team) => {
    stops.forEach((stop, i) => {
      const arrival = state.result!.mean_arrivals[team]?.[i];
      rows.push({
        team,
        stop,
        appointment: schedules[team][i],
        meanArrival: arrival !== undefined && arrival >= 0 ? arrival : null,
      });
    });
  });
  return rows;
}

export interface ImprovementRow {
  level: number;
  total: number;
  relativeImprovement: number;
}

export function improvementRows(state: AppState): ImprovementRow[] {
  if (!state.result || state.result.level_totals.length === 0) return [];
  const totals = state.result.level_totals;
  return totals.map((total, level) => ({
    level,
    total,
    relativeImprovement: level === 0 ? 0 : (totals[0] - total) / totals[0],
  }));
}
