"""Pydantic request/response models mirroring the JSON document schemas."""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, Field


class ParamsDoc(BaseModel):
    n_customers: int
    end_time: float
    mean_service_time: float
    sd_service_time: float
    mean_speed: float
    assignment_cost: float
    unit_travel_cost: float
    unit_wait_cost: float
    unit_idle_cost: float
    unit_overtime_cost: float
    cancel_rate: float
    travel_sigma: float = 0.5


class InstanceDoc(BaseModel):
    schema_version: int = 1
    kind: str = "instance"
    params: ParamsDoc
    customers: list[list[float]]


class ConfigDoc(BaseModel):
    schema_version: int = 1
    kind: str = "config"
    routing_models: list[str]
    scheduling_model: str
    cancellation_lambda: int
    metaheuristic_level: int
    mc_replications: int = 500
    scheduler_iterations: int = 10
    master_seed: int = 0


class SolutionDoc(BaseModel):
    schema_version: int = 1
    kind: str = "solution"
    routes: list[list[int]]
    schedules: list[list[float]]
    fingerprint: dict = Field(default_factory=dict)


class TeamCostDoc(BaseModel):
    assignment: float
    travel: float
    waiting: float
    idling: float
    overtime: float
    total: float


class ReportDoc(BaseModel):
    schema_version: int = 1
    kind: str = "report"
    assignment: float
    travel: float
    waiting: float
    idling: float
    overtime: float
    total: float
    replications: int
    per_team: list[TeamCostDoc]


class SolveRequest(BaseModel):
    instance: InstanceDoc
    config: ConfigDoc


class SolveSubmitResponse(BaseModel):
    job_id: str


class SolvePayload(BaseModel):
    solution: SolutionDoc
    report: ReportDoc
    mean_arrivals: list[list[float]]
    level_totals: list[float]


class JobStatusResponse(BaseModel):
    status: str  # pending | done | failed
    payload: Optional[SolvePayload] = None
    error: Optional[str] = None


class SimulateRequest(BaseModel):
    instance: InstanceDoc
    solution: SolutionDoc
    cancellation_lambda: int = 0
    replications: int = 500
    seed: int = 0
    include_trace: bool = False


class TraceDoc(BaseModel):
    team_index: int
    arrival_times: list[float]
    served: list[bool]
    skipped_stops: list[int]


class SimulateResponse(BaseModel):
    report: ReportDoc
    mean_arrivals: list[list[float]]
    trace: Optional[list[TraceDoc]] = None


class RandomInstanceResponse(BaseModel):
    instance: InstanceDoc
    config: ConfigDoc
