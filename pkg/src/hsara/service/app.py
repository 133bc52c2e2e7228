"""HTTP service exposing the solver to scripts and the web UI.

Endpoints:
  GET  /api/health               liveness probe, plain "ok"
  GET  /api/random-instance      seeded random instance plus solver config
  POST /api/solve                submit a solve job, returns a job id
  GET  /api/jobs/{job_id}        poll a job: pending, done (with payload), failed
  POST /api/simulate             synchronous cost simulation of a solution

All randomness flows from the explicit seed fields; the service never draws
entropy on its own, so identical requests give identical payloads. The
built web UI is served statically from / when a bundle directory exists.
"""

from __future__ import annotations

import math
import os
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, PlainTextResponse
from fastapi.staticfiles import StaticFiles

from ..instances import (
    DocumentError,
    config_to_doc,
    doc_to_config,
    doc_to_instance,
    doc_to_solution,
    generate_random,
    instance_to_doc,
    report_to_doc,
    solution_to_doc,
)
from ..pipeline import solve_detail
from ..simulation import simulate_solution_detail, solution_trace
from . import schemas
from .jobs import JobTable

DEFAULT_UI_DIR = Path(__file__).resolve().parents[3] / "frontend" / "dist"


def _clean_arrivals(mean_arrivals) -> list[list[float]]:
    # A stop skipped in every replication has no mean arrival; fall back to -1.
    return [
        [v if math.isfinite(v) else -1.0 for v in team]
        for team in (list(t) for t in mean_arrivals)
    ]


def create_app(ui_dir: str | os.PathLike | None = None) -> FastAPI:
    app = FastAPI(title="Home service routing and scheduling", version="0.1.0")
    jobs = JobTable()

    @app.exception_handler(RequestValidationError)
    async def validation_handler(request: Request, exc: RequestValidationError):
        errors = exc.errors()
        if errors:
            loc = ".".join(str(p) for p in errors[0].get("loc", ()) if p != "body")
            detail = f"invalid field '{loc or 'body'}': {errors[0].get('msg', '')}"
        else:
            detail = "malformed request body"
        return JSONResponse(status_code=400, content={"detail": detail})

    @app.exception_handler(DocumentError)
    async def document_handler(request: Request, exc: DocumentError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(ValueError)
    async def value_error_handler(request: Request, exc: ValueError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/api/health", response_class=PlainTextResponse)
    def health() -> str:
        return "ok"

    @app.get("/api/random-instance", response_model=schemas.RandomInstanceResponse)
    def random_instance(seed: int = 0):
        instance, config = generate_random(seed)
        return {
            "instance": instance_to_doc(instance),
            "config": config_to_doc(config),
        }

    @app.post("/api/solve", response_model=schemas.SolveSubmitResponse)
    def submit_solve(request: schemas.SolveRequest):
        doc = request.model_dump()
        instance = doc_to_instance(doc["instance"])
        config = doc_to_config(doc["config"])

        def work():
            result = solve_detail(instance, config)
            return schemas.SolvePayload(
                solution=schemas.SolutionDoc(**solution_to_doc(result.solution)),
                report=schemas.ReportDoc(**report_to_doc(result.report)),
                mean_arrivals=_clean_arrivals(result.mean_arrivals),
                level_totals=list(result.level_totals),
            )

        return {"job_id": jobs.submit(doc, work)}

    @app.get("/api/jobs/{job_id}", response_model=schemas.JobStatusResponse,
             response_model_exclude_none=True)
    def job_status(job_id: str):
        job = jobs.get(job_id)
        if job is None:
            raise HTTPException(status_code=404, detail=f"unknown job '{job_id}'")
        return {"status": job.status, "payload": job.payload, "error": job.error}

    @app.post("/api/simulate", response_model=schemas.SimulateResponse,
              response_model_exclude_none=True)
    def simulate(request: schemas.SimulateRequest):
        doc = request.model_dump()
        instance = doc_to_instance(doc["instance"])
        solution = doc_to_solution(doc["solution"])
        solution.validate(instance)
        detail = simulate_solution_detail(
            solution, instance, request.cancellation_lambda,
            request.replications, request.seed, want_arrivals=True,
        )
        trace = None
        if request.include_trace:
            trace = [
                schemas.TraceDoc(
                    team_index=t.team_index,
                    arrival_times=[v if math.isfinite(v) else -1.0
                                   for v in t.arrival_times],
                    served=list(t.served),
                    skipped_stops=list(t.skipped_stops),
                )
                for t in solution_trace(
                    solution, instance, request.cancellation_lambda, request.seed
                )
            ]
        return {
            "report": report_to_doc(detail.report),
            "mean_arrivals": _clean_arrivals(detail.mean_arrivals),
            "trace": trace,
        }

    bundle = Path(ui_dir) if ui_dir is not None else DEFAULT_UI_DIR
    if bundle.is_dir():
        app.mount("/", StaticFiles(directory=bundle, html=True), name="ui")
    return app


app = create_app(os.environ.get("HSARA_UI_DIR"))
