// Document shapes shared with the HTTP API (mirrors the server's JSON schemas).

export interface ParamsDoc {
  n_customers: number;
  end_time: number;
  mean_service_time: number;
  sd_service_time: number;
  mean_speed: number;
  assignment_cost: number;
  unit_travel_cost: number;
  unit_wait_cost: number;
  unit_idle_cost: number;
  unit_overtime_cost: number;
  cancel_rate: number;
  travel_sigma: number;
}

export interface InstanceDoc {
  schema_version: number;
  kind: string;
  params: ParamsDoc;
  customers: [number, number][];
}

export interface ConfigDoc {
  schema_version: number;
  kind: string;
  routing_models: string[];
  scheduling_model: string;
  cancellation_lambda: number;
  metaheuristic_level: number;
  mc_replications: number;
  scheduler_iterations: number;
  master_seed: number;
}

export interface TeamCostDoc {
  assignment: number;
  travel: number;
  waiting: number;
  idling: number;
  overtime: number;
  total: number;
}

export interface ReportDoc {
  assignment: number;
  travel: number;
  waiting: number;
  idling: number;
  overtime: number;
  total: number;
  replications: number;
  per_team: TeamCostDoc[];
}

export interface SolutionDoc {
  routes: number[][];
  schedules: number[][];
  fingerprint: Record<string, unknown>;
}

export interface SolvePayload {
  solution: SolutionDoc;
  report: ReportDoc;
  mean_arrivals: number[][];
  level_totals: number[];
}

export interface JobStatus {
  status: "pending" | "done" | "failed";
  payload?: SolvePayload;
  error?: string;
}

export interface Point {
  x: number;
  y: number;
}
