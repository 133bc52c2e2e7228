"""Instance generation and document persistence.

Instances, solutions, cost reports, and solver configs are stored as JSON
documents (one top-level object per file, explicit schema_version field).
Coordinates and costs round-trip bit-exactly because floats are written with
full repr precision.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .model import (
    CostBreakdown,
    Instance,
    Parameters,
    Route,
    RoutingModel,
    Schedule,
    SchedulingModel,
    Solution,
    SolverConfig,
    TeamCost,
)
from .sampling import RngStream

SCHEMA_VERSION = 1

# Fixed benchmark parameters for generated case studies: an 8-hour day with
# every cost rate pinned at the top of its calibration range.
CASE_STUDY_DEFAULTS = dict(
    end_time=480.0,
    mean_service_time=60.0,
    sd_service_time=30.0,
    mean_speed=1.0,
    assignment_cost=250.0,
    unit_travel_cost=2.0,
    unit_wait_cost=10.0,
    unit_idle_cost=5.0,
    unit_overtime_cost=15.0,
    travel_sigma=0.5,
)

HALF_EDGE_KM = 25.0  # customers fall in a 50 km square centered on the depot


class DocumentError(ValueError):
    """Raised when a document is missing or mistypes a field."""

    def __init__(self, field: str, detail: str = ""):
        self.field = field
        message = f"invalid document field '{field}'"
        if detail:
            message += f": {detail}"
        super().__init__(message)


def generate_case_study(n: int, p_cancel: float, seed: int) -> Instance:
    """A benchmark instance: n customers uniform in the 50 km square."""
    if n < 1:
        raise ValueError("case study needs at least one customer")
    rng = RngStream(seed, "case-study")
    pts = rng.generator.uniform(-HALF_EDGE_KM, HALF_EDGE_KM, (n, 2))
    params = Parameters(n_customers=n, cancel_rate=p_cancel, **CASE_STUDY_DEFAULTS)
    return Instance(params=params, customers=tuple((x, y) for x, y in pts))


def generate_random(seed: int) -> tuple[Instance, SolverConfig]:
    """Draw a full random scenario: instance parameters plus solver config."""
    rng = RngStream(seed, "random-scenario").generator
    n = int(rng.choice([20, 30, 40, 50]))
    end_time = float(rng.choice([240.0, 480.0, 720.0, 1200.0]))
    mean_service = rng.uniform(30.0, 60.0)
    params = Parameters(
        n_customers=n,
        end_time=end_time,
        mean_service_time=mean_service,
        sd_service_time=0.5 * mean_service,
        mean_speed=1.0,
        assignment_cost=rng.uniform(100.0, 250.0),
        unit_travel_cost=float(rng.choice([0.5, 1.0, 2.0])),
        unit_wait_cost=rng.uniform(0.0, 10.0),
        unit_idle_cost=rng.uniform(0.0, 5.0),
        unit_overtime_cost=rng.uniform(10.0, 15.0),
        cancel_rate=float(rng.choice([0.01, 0.05, 0.1])),
        travel_sigma=0.5,
    )
    pts = rng.uniform(-HALF_EDGE_KM, HALF_EDGE_KM, (n, 2))
    instance = Instance(params=params, customers=tuple((x, y) for x, y in pts))

    mask = int(rng.integers(1, 8))  # nonempty subset of the three models
    models = tuple(
        m for bit, m in enumerate(
            (RoutingModel.DISTANCE, RoutingModel.CAPACITY, RoutingModel.TIME_WINDOWS)
        ) if mask & (1 << bit)
    )
    config = SolverConfig(
        routing_models=models,
        scheduling_model=SchedulingModel(
            str(rng.choice(["baseline", "simulated", "both"]))
        ),
        cancellation_lambda=int(rng.integers(0, 2)),
        metaheuristic_level=int(rng.integers(0, 4)),
        mc_replications=500,
        scheduler_iterations=10,
        master_seed=int(rng.integers(0, 2**63)),
    )
    return instance, config


# --- document conversion ---------------------------------------------------

def _require(doc: dict, field: str, kind, path: str = "") -> Any:
    name = f"{path}{field}"
    if field not in doc:
        raise DocumentError(name, "missing")
    value = doc[field]
    if kind is float and isinstance(value, int):
        value = float(value)
    if not isinstance(value, kind):
        raise DocumentError(name, f"expected {getattr(kind, '__name__', kind)}")
    return value


def instance_to_doc(instance: Instance) -> dict:
    p = instance.params
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "instance",
        "params": {
            "n_customers": p.n_customers,
            "end_time": p.end_time,
            "mean_service_time": p.mean_service_time,
            "sd_service_time": p.sd_service_time,
            "mean_speed": p.mean_speed,
            "assignment_cost": p.assignment_cost,
            "unit_travel_cost": p.unit_travel_cost,
            "unit_wait_cost": p.unit_wait_cost,
            "unit_idle_cost": p.unit_idle_cost,
            "unit_overtime_cost": p.unit_overtime_cost,
            "cancel_rate": p.cancel_rate,
            "travel_sigma": p.travel_sigma,
        },
        "customers": [[x, y] for x, y in instance.customers],
    }


def doc_to_instance(doc: dict) -> Instance:
    params_doc = _require(doc, "params", dict)
    fields = {}
    fields["n_customers"] = _require(params_doc, "n_customers", int, "params.")
    for name in ("end_time", "mean_service_time", "sd_service_time", "mean_speed",
                 "assignment_cost", "unit_travel_cost", "unit_wait_cost",
                 "unit_idle_cost", "unit_overtime_cost", "cancel_rate",
                 "travel_sigma"):
        fields[name] = _require(params_doc, name, float, "params.")
    customers = _require(doc, "customers", list)
    pts = []
    for i, entry in enumerate(customers):
        if (not isinstance(entry, list) or len(entry) != 2
                or not all(isinstance(v, (int, float)) for v in entry)):
            raise DocumentError(f"customers[{i}]", "expected [x, y]")
        pts.append((float(entry[0]), float(entry[1])))
    try:
        params = Parameters(**fields)
        return Instance(params=params, customers=tuple(pts))
    except ValueError as exc:
        raise DocumentError("params", str(exc)) from exc


def solution_to_doc(solution: Solution) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "solution",
        "routes": [list(r.stops) for r in solution.routes],
        "schedules": [list(s.appointments) for s in solution.schedules],
        "fingerprint": dict(solution.fingerprint),
    }


def doc_to_solution(doc: dict) -> Solution:
    routes_doc = _require(doc, "routes", list)
    schedules_doc = _require(doc, "schedules", list)
    if len(routes_doc) != len(schedules_doc):
        raise DocumentError("schedules", "length differs from routes")
    routes, schedules = [], []
    for m, (stops, appts) in enumerate(zip(routes_doc, schedules_doc)):
        if not isinstance(stops, list) or not all(isinstance(s, int) for s in stops):
            raise DocumentError(f"routes[{m}]", "expected a list of customer indices")
        if not isinstance(appts, list) or not all(isinstance(a, (int, float)) for a in appts):
            raise DocumentError(f"schedules[{m}]", "expected a list of minutes")
        try:
            routes.append(Route(team_index=m, stops=tuple(stops)))
            schedules.append(Schedule(team_index=m, appointments=tuple(float(a) for a in appts)))
        except ValueError as exc:
            raise DocumentError(f"routes[{m}]", str(exc)) from exc
    fingerprint = doc.get("fingerprint", {})
    if not isinstance(fingerprint, dict):
        raise DocumentError("fingerprint", "expected an object")
    try:
        return Solution(routes=tuple(routes), schedules=tuple(schedules),
                        fingerprint=fingerprint)
    except ValueError as exc:
        raise DocumentError("schedules", str(exc)) from exc


def report_to_doc(report: CostBreakdown) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "report",
        "assignment": report.assignment,
        "travel": report.travel,
        "waiting": report.waiting,
        "idling": report.idling,
        "overtime": report.overtime,
        "total": report.total,
        "replications": report.replications,
        "per_team": [
            {
                "assignment": t.assignment,
                "travel": t.travel,
                "waiting": t.waiting,
                "idling": t.idling,
                "overtime": t.overtime,
                "total": t.total,
            }
            for t in report.per_team
        ],
    }


def doc_to_report(doc: dict) -> CostBreakdown:
    per_team = []
    for i, entry in enumerate(_require(doc, "per_team", list)):
        if not isinstance(entry, dict):
            raise DocumentError(f"per_team[{i}]", "expected an object")
        per_team.append(TeamCost(
            assignment=_require(entry, "assignment", float, f"per_team[{i}]."),
            travel=_require(entry, "travel", float, f"per_team[{i}]."),
            waiting=_require(entry, "waiting", float, f"per_team[{i}]."),
            idling=_require(entry, "idling", float, f"per_team[{i}]."),
            overtime=_require(entry, "overtime", float, f"per_team[{i}]."),
        ))
    return CostBreakdown(
        assignment=_require(doc, "assignment", float),
        travel=_require(doc, "travel", float),
        waiting=_require(doc, "waiting", float),
        idling=_require(doc, "idling", float),
        overtime=_require(doc, "overtime", float),
        total=_require(doc, "total", float),
        per_team=tuple(per_team),
        replications=_require(doc, "replications", int),
    )


def config_to_doc(config: SolverConfig) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "config",
        "routing_models": [m.value for m in config.routing_models],
        "scheduling_model": config.scheduling_model.value,
        "cancellation_lambda": config.cancellation_lambda,
        "metaheuristic_level": config.metaheuristic_level,
        "mc_replications": config.mc_replications,
        "scheduler_iterations": config.scheduler_iterations,
        "master_seed": config.master_seed,
    }


def doc_to_config(doc: dict) -> SolverConfig:
    models_doc = _require(doc, "routing_models", list)
    try:
        models = tuple(RoutingModel(m) for m in models_doc)
        return SolverConfig(
            routing_models=models,
            scheduling_model=SchedulingModel(_require(doc, "scheduling_model", str)),
            cancellation_lambda=_require(doc, "cancellation_lambda", int),
            metaheuristic_level=_require(doc, "metaheuristic_level", int),
            mc_replications=_require(doc, "mc_replications", int),
            scheduler_iterations=_require(doc, "scheduler_iterations", int),
            master_seed=_require(doc, "master_seed", int),
        )
    except DocumentError:
        raise
    except ValueError as exc:
        raise DocumentError("routing_models", str(exc)) from exc


# --- file round-trips ------------------------------------------------------

_KIND_CODECS = {
    "instance": (instance_to_doc, doc_to_instance, Instance),
    "solution": (solution_to_doc, doc_to_solution, Solution),
    "report": (report_to_doc, doc_to_report, CostBreakdown),
    "config": (config_to_doc, doc_to_config, SolverConfig),
}


def dumps_doc(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def save(obj, path) -> None:
    for kind, (encode, _, cls) in _KIND_CODECS.items():
        if isinstance(obj, cls):
            Path(path).write_text(dumps_doc(encode(obj)), encoding="utf-8")
            return
    raise TypeError(f"cannot persist object of type {type(obj).__name__}")


def load(path, kind: str | None = None):
    """Load a document; ``kind`` overrides the file's own kind tag."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError("<document>", f"not valid JSON ({exc.msg})") from exc
    if not isinstance(doc, dict):
        raise DocumentError("<document>", "expected a top-level object")
    tag = kind or doc.get("kind")
    if tag not in _KIND_CODECS:
        raise DocumentError("kind", f"unknown document kind {tag!r}")
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise DocumentError("schema_version", f"expected {SCHEMA_VERSION}, got {version!r}")
    return _KIND_CODECS[tag][1](doc)
