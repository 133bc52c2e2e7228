// Standard-day defaults for the parameter and hyperparameter panels.

import type { ConfigDoc, ParamsDoc } from "./types.js";

export function defaultParams(): ParamsDoc {
  return {
    n_customers: 0,
    end_time: 480,
    mean_service_time: 60,
    sd_service_time: 30,
    mean_speed: 1,
    assignment_cost: 250,
    unit_travel_cost: 2,
    unit_wait_cost: 10,
    unit_idle_cost: 5,
    unit_overtime_cost: 15,
    cancel_rate: 0.1,
    travel_sigma: 0.5,
  };
}

export function defaultConfig(): ConfigDoc {
  return {
    schema_version: 1,
    kind: "config",
    routing_models: ["distance", "capacity", "time_windows"],
    scheduling_model: "both",
    cancellation_lambda: 0,
    metaheuristic_level: 3,
    mc_replications: 500,
    scheduler_iterations: 10,
    master_seed: 0,
  };
}
