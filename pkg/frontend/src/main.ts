// DOM wiring: renders the state, forwards events to the pure transition
// functions, and talks to the service through api.ts.

import { fetchRandomScenario, pollJob, submitSolve } from "./api.js";
import { clickToCustomer, Viewport } from "./mapping.js";
import { teamColor } from "./palette.js";
import { drawMap, formatCurrency, formatKm, formatMinutes } from "./render.js";
import {
  addCustomer,
  AppState,
  canSolve,
  clearAll,
  improvementRows,
  initialState,
  instanceDoc,
  loadScenario,
  problems,
  removeCustomer,
  scheduleRows,
  setConfigField,
  setParam,
  solveFailed,
  solveStarted,
  solveSucceeded,
  toggleRoutingModel,
} from "./state.js";
import type { ConfigDoc, ParamsDoc } from "./types.js";

let state: AppState = initialState();

const PARAM_FIELDS: [keyof ParamsDoc, string][] = [
  ["end_time", "End time (min)"],
  ["mean_service_time", "Mean service time"],
  ["sd_service_time", "Service time std dev"],
  ["mean_speed", "Mean travel speed (km/min)"],
  ["assignment_cost", "Assignment cost"],
  ["unit_travel_cost", "Unit travel cost"],
  ["unit_wait_cost", "Unit wait cost"],
  ["unit_idle_cost", "Unit idle cost"],
  ["unit_overtime_cost", "Overtime factor"],
  ["cancel_rate", "Cancellation rate"],
  ["travel_sigma", "Travel-time spread"],
];

const CONFIG_NUMBER_FIELDS: [keyof ConfigDoc, string][] = [
  ["metaheuristic_level", "Metaheuristic level"],
  ["mc_replications", "Replications"],
  ["scheduler_iterations", "Scheduler iterations"],
  ["master_seed", "Seed"],
];

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function canvasView(canvas: HTMLCanvasElement): Viewport {
  return { width: canvas.width, height: canvas.height };
}

function update(next: AppState): void {
  state = next;
  render();
}

function buildParamInputs(): void {
  const box = el<HTMLDivElement>("params");
  box.innerHTML = "";
  const count = document.createElement("label");
  count.innerHTML = `Customer count <input id="field-n" type="number" disabled>`;
  box.appendChild(count);
  for (const [field, label] of PARAM_FIELDS) {
    const wrap = document.createElement("label");
    wrap.innerHTML = `${label} <input id="field-${field}" type="number" step="any">
      <span class="error" id="error-${field}"></span>`;
    box.appendChild(wrap);
    wrap.querySelector("input")!.addEventListener("change", (ev) => {
      const value = Number((ev.target as HTMLInputElement).value);
      update(setParam(state, field, value));
    });
  }
}

function buildConfigInputs(): void {
  const box = el<HTMLDivElement>("hyper");
  box.innerHTML = "";
  const models = document.createElement("div");
  models.className = "model-row";
  models.innerHTML = `<span>Routing model</span>` +
    ["distance", "capacity", "time_windows"].map((m) =>
      `<label><input type="checkbox" id="model-${m}"> ${m.replace("_", " ")}</label>`,
    ).join("") + `<span class="error" id="error-routing_models"></span>`;
  box.appendChild(models);
  for (const m of ["distance", "capacity", "time_windows"]) {
    models.querySelector(`#model-${m}`)!.addEventListener("change", () => {
      update(toggleRoutingModel(state, m));
    });
  }

  const scheduling = document.createElement("label");
  scheduling.innerHTML = `Scheduling model
    <select id="field-scheduling_model">
      <option value="baseline">1: baseline</option>
      <option value="simulated">2: simulated</option>
      <option value="both">3: both</option>
    </select>`;
  box.appendChild(scheduling);
  scheduling.querySelector("select")!.addEventListener("change", (ev) => {
    update(setConfigField(state, "scheduling_model",
                          (ev.target as HTMLSelectElement).value));
  });

  const lambda = document.createElement("label");
  lambda.innerHTML = `Cancellation model
    <select id="field-cancellation_lambda">
      <option value="0">0: last-minute</option>
      <option value="1">1: notified</option>
    </select>`;
  box.appendChild(lambda);
  lambda.querySelector("select")!.addEventListener("change", (ev) => {
    update(setConfigField(state, "cancellation_lambda",
                          Number((ev.target as HTMLSelectElement).value)));
  });

  for (const [field, label] of CONFIG_NUMBER_FIELDS) {
    const wrap = document.createElement("label");
    wrap.innerHTML = `${label} <input id="field-${field}" type="number" step="1">
      <span class="error" id="error-${field}"></span>`;
    box.appendChild(wrap);
    wrap.querySelector("input")!.addEventListener("change", (ev) => {
      update(setConfigField(state, field,
                            Number((ev.target as HTMLInputElement).value)));
    });
  }
}

function renderInputs(): void {
  (el<HTMLInputElement>("field-n")).value = String(state.customers.length);
  for (const [field] of PARAM_FIELDS) {
    el<HTMLInputElement>(`field-${field}`).value = String(state.params[field]);
  }
  for (const m of ["distance", "capacity", "time_windows"]) {
    el<HTMLInputElement>(`model-${m}`).checked =
      state.config.routing_models.includes(m);
  }
  el<HTMLSelectElement>("field-scheduling_model").value =
    state.config.scheduling_model;
  el<HTMLSelectElement>("field-cancellation_lambda").value =
    String(state.config.cancellation_lambda);
  for (const [field] of CONFIG_NUMBER_FIELDS) {
    el<HTMLInputElement>(`field-${field}`).value =
      String(state.config[field]);
  }
  document.querySelectorAll(".error").forEach((node) => {
    node.textContent = "";
  });
  for (const issue of problems(state)) {
    const slot = document.getElementById(`error-${issue.field}`);
    if (slot) slot.textContent = issue.message;
  }
}

function renderCustomerList(): void {
  const list = el<HTMLUListElement>("customer-list");
  list.innerHTML = "";
  state.customers.forEach((c, i) => {
    const item = document.createElement("li");
    item.innerHTML = `<span class="swatch"></span> #${i + 1}
      (${formatKm(c.x)}, ${formatKm(c.y)}) km
      <button data-index="${i}" class="remove">remove</button>`;
    list.appendChild(item);
  });
  list.querySelectorAll("button.remove").forEach((button) => {
    button.addEventListener("click", (ev) => {
      const index = Number((ev.target as HTMLButtonElement).dataset.index);
      update(removeCustomer(state, index));
    });
  });
}

function renderResults(): void {
  const banner = el<HTMLDivElement>("banner");
  banner.textContent = state.banner ?? "";
  banner.style.display = state.banner ? "block" : "none";

  const status = el<HTMLSpanElement>("status");
  status.textContent = state.phase === "solving" ? "solving..." : state.phase;

  const costs = el<HTMLTableSectionElement>("cost-body");
  costs.innerHTML = "";
  if (state.result) {
    const r = state.result.report;
    const rows: [string, number][] = [
      ["Assignment", r.assignment],
      ["Travel", r.travel],
      ["Waiting", r.waiting],
      ["Idling", r.idling],
      ["Overtime", r.overtime],
      ["Total", r.total],
    ];
    for (const [name, value] of rows) {
      const tr = document.createElement("tr");
      tr.innerHTML = `<td>${name}</td><td id="cost-${name.toLowerCase()}">` +
        `${formatCurrency(value)}</td>`;
      costs.appendChild(tr);
    }
    el<HTMLSpanElement>("team-count").textContent =
      String(state.result.solution.routes.length);
  } else {
    el<HTMLSpanElement>("team-count").textContent = "-";
  }

  const schedule = el<HTMLTableSectionElement>("schedule-body");
  schedule.innerHTML = "";
  for (const row of scheduleRows(state)) {
    const tr = document.createElement("tr");
    tr.innerHTML = `<td style="color:${teamColor(row.team)}">team ${row.team + 1}</td>
      <td>#${row.stop}</td>
      <td>${formatMinutes(row.appointment)}</td>
      <td>${formatMinutes(row.meanArrival)}</td>`;
    schedule.appendChild(tr);
  }

  const levels = el<HTMLTableSectionElement>("level-body");
  levels.innerHTML = "";
  for (const row of improvementRows(state)) {
    const tr = document.createElement("tr");
    tr.innerHTML = `<td>${row.level}</td><td>${formatCurrency(row.total)}</td>
      <td>${(row.relativeImprovement * 100).toFixed(1)}%</td>`;
    levels.appendChild(tr);
  }
}

function render(): void {
  const canvas = el<HTMLCanvasElement>("map");
  const ctx = canvas.getContext("2d");
  if (ctx) drawMap(ctx, state, canvasView(canvas));
  renderInputs();
  renderCustomerList();
  renderResults();
  el<HTMLButtonElement>("solve").disabled = !canSolve(state);
  el<HTMLButtonElement>("random").disabled = state.phase === "solving";
  el<HTMLButtonElement>("clear").disabled = state.phase === "solving";
}

async function onSolve(): Promise<void> {
  if (!canSolve(state)) return;
  try {
    const jobId = await submitSolve(instanceDoc(state), state.config);
    update(solveStarted(state, jobId));
    const payload = await pollJob(jobId);
    update(solveSucceeded(state, payload));
  } catch (err) {
    update(solveFailed(state, `solve failed: ${(err as Error).message}`));
  }
}

async function onRandom(): Promise<void> {
  try {
    const seed = Math.floor(Math.random() * 2 ** 31);
    const scenario = await fetchRandomScenario(seed);
    update(loadScenario(state, scenario.instance, scenario.config));
  } catch (err) {
    update(solveFailed(state, `random instance failed: ${(err as Error).message}`));
  }
}

function onMapClick(ev: MouseEvent): void {
  if (state.phase === "solving") return;
  const canvas = el<HTMLCanvasElement>("map");
  const rect = canvas.getBoundingClientRect();
  const pixel = {
    x: (ev.clientX - rect.left) * (canvas.width / rect.width),
    y: (ev.clientY - rect.top) * (canvas.height / rect.height),
  };
  const km = clickToCustomer(pixel, canvasView(canvas));
  if (km) update(addCustomer(state, km));
}

export function boot(): void {
  buildParamInputs();
  buildConfigInputs();
  el<HTMLCanvasElement>("map").addEventListener("click", onMapClick);
  el<HTMLButtonElement>("solve").addEventListener("click", () => void onSolve());
  el<HTMLButtonElement>("random").addEventListener("click", () => void onRandom());
  el<HTMLButtonElement>("clear").addEventListener("click", () => update(clearAll()));
  el<HTMLButtonElement>("banner-retry").addEventListener("click", () => void onSolve());
  render();
}

if (typeof document !== "undefined" && document.getElementById("map")) {
  boot();
}
