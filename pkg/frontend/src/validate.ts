// Client-side validation mirroring the server's type invariants.

import type { ConfigDoc, ParamsDoc } from "./types.js";

export interface FieldError {
  field: string;
  message: string;
}

export function validateParams(p: ParamsDoc): FieldError[] {
  const errors: FieldError[] = [];
  const positive: [keyof ParamsDoc, string][] = [
    ["end_time", "end time must be > 0"],
    ["mean_service_time", "mean service time must be > 0"],
    ["mean_speed", "mean travel speed must be > 0"],
  ];
  for (const [field, message] of positive) {
    if (!(p[field] > 0)) errors.push({ field, message });
  }
  const nonNegative: (keyof ParamsDoc)[] = [
    "sd_service_time",
    "assignment_cost",
    "unit_travel_cost",
    "unit_wait_cost",
    "unit_idle_cost",
    "unit_overtime_cost",
    "travel_sigma",
  ];
  for (const field of nonNegative) {
    if (!(p[field] >= 0)) {
      errors.push({ field, message: `${field.split("_").join(" ")} must be >= 0` });
    }
  }
  if (!(p.cancel_rate >= 0 && p.cancel_rate <= 1)) {
    errors.push({ field: "cancel_rate", message: "cancel rate must lie in [0, 1]" });
  }
  if (p.mean_service_time > 0 && p.sd_service_time >= 0) {
    if (p.mean_service_time - p.sd_service_time * Math.sqrt(3) < 0) {
      errors.push({
        field: "sd_service_time",
        message: "service-time spread would allow negative durations",
      });
    }
  }
  return errors;
}

export function validateConfig(c: ConfigDoc): FieldError[] {
  const errors: FieldError[] = [];
  if (c.routing_models.length === 0) {
    errors.push({ field: "routing_models", message: "pick at least one routing model" });
  }
  if (c.cancellation_lambda !== 0 && c.cancellation_lambda !== 1) {
    errors.push({ field: "cancellation_lambda", message: "cancellation model is 0 or 1" });
  }
  if (!(Number.isInteger(c.metaheuristic_level) && c.metaheuristic_level >= 0)) {
    errors.push({ field: "metaheuristic_level", message: "level must be an integer >= 0" });
  }
  if (!(Number.isInteger(c.mc_replications) && c.mc_replications >= 1)) {
    errors.push({ field: "mc_replications", message: "replications must be >= 1" });
  }
  if (!(Number.isInteger(c.scheduler_iterations) && c.scheduler_iterations >= 1)) {
    errors.push({ field: "scheduler_iterations", message: "scheduler iterations must be >= 1" });
  }
  if (!Number.isInteger(c.master_seed)) {
    errors.push({ field: "master_seed", message: "seed must be an integer" });
  }
  return errors;
}

export function validateCustomerCount(count: number): FieldError[] {
  return count >= 1
    ? []
    : [{ field: "customers", message: "click the map to place at least one customer" }];
}
