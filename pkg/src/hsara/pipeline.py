"""Two-stage solve orchestration and the benchmark harness.

Stage one sweeps team counts for every enabled routing model and keeps each
model's cheapest team count by routing cost (hiring plus expected travel).
Stage two builds baseline and/or simulated appointment schedules for those
routings, scores every candidate by Monte Carlo simulation under a shared
evaluation seed, and the cheapest simulated total wins. The Route Fracture
metaheuristic then runs at the configured level; its sub-solves explore the
whole team-count sweep (see solve_exploring_team_counts) so a rebuild may
hire more teams than it replaces.

Candidate evaluations are independent and run on a bounded thread pool
(HSARA_WORKERS, default 1); results are merged by candidate position, never
by completion order, so parallel runs stay byte-identical.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .instances import generate_case_study
from .model import (
    CostBreakdown,
    Instance,
    RoutingModel,
    SchedulingModel,
    Solution,
    SolverConfig,
    ROUTING_MODEL_ORDER,
)
from .routing import RouteCandidate, sweep_team_counts
from .sampling import derive_seed
from .scheduling import baseline_schedules, schedules_for
from .simulation import simulate_solution_detail

SELECT_LABEL = "select"
FINAL_LABEL = "final"


class NoFeasibleSolutionError(ValueError):
    """No enabled routing model admits any feasible team count."""


@dataclass(frozen=True)
class SolveResult:
    solution: Solution
    report: CostBreakdown
    mean_arrivals: tuple[tuple[float, ...], ...]
    level_totals: tuple[float, ...]
    candidates_evaluated: int


def _worker_count() -> int:
    try:
        return max(1, int(os.environ.get("HSARA_WORKERS", "1")))
    except ValueError:
        return 1


def _map_ordered(fn, items):
    """Apply fn over items on the worker pool, preserving item order."""
    workers = _worker_count()
    if workers == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _scheduling_variants(config: SolverConfig) -> tuple[SchedulingModel, ...]:
    if config.scheduling_model == SchedulingModel.BOTH:
        return (SchedulingModel.BASELINE, SchedulingModel.SIMULATED)
    return (config.scheduling_model,)


def stage_one_routings(instance: Instance, config: SolverConfig) -> list[RouteCandidate]:
    """Each enabled model's cheapest feasible team count by routing cost."""
    chosen = []
    for model in config.routing_models:
        candidates = sweep_team_counts(instance, model)
        if candidates:
            chosen.append(candidates[0])
    if not chosen:
        raise NoFeasibleSolutionError(
            "no feasible team count for any enabled routing model"
        )
    return chosen


def _all_sweep_routings(instance: Instance, config: SolverConfig) -> list[RouteCandidate]:
    candidates = []
    for model in config.routing_models:
        candidates.extend(sweep_team_counts(instance, model))
    if not candidates:
        raise NoFeasibleSolutionError(
            "no feasible team count for any enabled routing model"
        )
    return candidates


def _evaluate_candidate(instance, config, routing: RouteCandidate,
                        variant: SchedulingModel):
    schedules = schedules_for(
        routing.routes, instance, config,
        simulated=(variant == SchedulingModel.SIMULATED),
    )
    solution = Solution(
        routes=routing.routes,
        schedules=schedules,
        fingerprint={
            "routing_model": routing.model.value,
            "team_count": routing.team_count,
            "scheduling_model": variant.value,
            "cancellation_lambda": config.cancellation_lambda,
            "master_seed": config.master_seed,
        },
    )
    detail = simulate_solution_detail(
        solution, instance, config.cancellation_lambda,
        config.mc_replications, config.master_seed, label=SELECT_LABEL,
    )
    return solution, detail.report


def _select_among(instance, config, routings) -> tuple[Solution, CostBreakdown, int]:
    jobs = [
        (routing, variant)
        for routing in routings
        for variant in _scheduling_variants(config)
    ]
    evaluated = _map_ordered(
        lambda job: _evaluate_candidate(instance, config, *job), jobs
    )
    best = min(range(len(evaluated)), key=lambda k: evaluated[k][1].total)
    solution, report = evaluated[best]
    return solution, report, len(jobs)


def _finalize(instance, config, solution, level_totals, candidates) -> SolveResult:
    final = simulate_solution_detail(
        solution, instance, config.cancellation_lambda, config.mc_replications,
        config.master_seed, label=FINAL_LABEL, want_arrivals=True,
    )
    solution = Solution(
        routes=solution.routes,
        schedules=solution.schedules,
        fingerprint={**solution.fingerprint,
                     "metaheuristic_level": config.metaheuristic_level},
    )
    return SolveResult(
        solution=solution,
        report=final.report,
        mean_arrivals=final.mean_arrivals,
        level_totals=level_totals,
        candidates_evaluated=candidates,
    )


def solve_detail(instance: Instance, config: SolverConfig) -> SolveResult:
    """Full two-stage solve returning the extras the service layer exposes."""
    from .fracture import route_fracture  # fracture drives this module too

    solution, report, n_jobs = _select_among(
        instance, config, stage_one_routings(instance, config)
    )
    level_totals = (report.total,)
    if config.metaheuristic_level > 0:
        result = route_fracture(solution, instance, config)
        solution = result.solution
        level_totals = result.level_totals
    return _finalize(instance, config, solution, level_totals, n_jobs)


def solve(instance: Instance, config: SolverConfig) -> tuple[Solution, CostBreakdown]:
    result = solve_detail(instance, config)
    return result.solution, result.report


def solve_exploring_team_counts(instance: Instance, config: SolverConfig
                                ) -> tuple[Solution, CostBreakdown]:
    """Pick by simulated total over every feasible team count of every model.

    This is the rebuild step used inside Route Fracture: unlike the top-level
    solve it does not commit to each model's routing-cost minimizer, so a
    fractured block may come back with more (or fewer) teams whenever the
    simulation prefers it. The metaheuristic level is ignored here.
    """
    solution, report, _ = _select_among(
        instance, config, _all_sweep_routings(instance, config)
    )
    return solution, report


# --- benchmark harness -------------------------------------------------------

@dataclass(frozen=True)
class BenchmarkSpec:
    n_values: tuple[int, ...]
    p_c_values: tuple[float, ...]
    lambdas: tuple[int, ...]
    trials: int
    replications: int
    seed: int = 0
    routing_models: tuple[RoutingModel, ...] = ROUTING_MODEL_ORDER
    scheduler_iterations: int = 10


@dataclass(frozen=True)
class BenchmarkRow:
    model: str
    n: int
    p_c: float
    lam: int
    waiting: float
    idling: float
    overtime: float
    scheduling_cost: float
    routing_cost: float
    total: float
    team_count: float


BENCHMARK_HEADER = ("model,N,p_C,lambda,waiting,idling,overtime,"
                    "scheduling_cost,routing_cost,total,M")


def _benchmark_trial(spec: BenchmarkSpec, n: int, p_c: float, lam: int,
                     trial: int) -> list[BenchmarkRow]:
    cell = f"bench/n{n}/p{p_c}/l{lam}"
    instance = generate_case_study(
        n, p_c, derive_seed(spec.seed, f"{cell}/gen", trial) % (2 ** 63)
    )
    eval_seed = derive_seed(spec.seed, f"{cell}/eval", trial) % (2 ** 63)
    config = SolverConfig(
        routing_models=spec.routing_models,
        scheduling_model=SchedulingModel.BOTH,
        cancellation_lambda=lam,
        metaheuristic_level=0,
        mc_replications=spec.replications,
        scheduler_iterations=spec.scheduler_iterations,
        master_seed=eval_seed,
    )

    # Pick routes over the whole sweep by simulated total under the baseline
    # schedule (no metaheuristic), then compare both scheduling models on
    # those same routes with paired evaluation streams.
    chosen = None
    for routing in _all_sweep_routings(instance, config):
        solution = Solution(
            routes=routing.routes,
            schedules=baseline_schedules(routing.routes, instance),
        )
        report = simulate_solution_detail(
            solution, instance, lam, spec.replications, eval_seed,
            label=SELECT_LABEL,
        ).report
        if chosen is None or report.total < chosen[0]:
            chosen = (report.total, routing, solution)
    _, routing, baseline_solution = chosen

    rows = []
    for variant in (SchedulingModel.BASELINE, SchedulingModel.SIMULATED):
        if variant == SchedulingModel.BASELINE:
            solution = baseline_solution
        else:
            solution = Solution(
                routes=routing.routes,
                schedules=schedules_for(routing.routes, instance, config,
                                        simulated=True),
            )
        report = simulate_solution_detail(
            solution, instance, lam, spec.replications, eval_seed, label="eval",
        ).report
        rows.append(BenchmarkRow(
            model=variant.value,
            n=n,
            p_c=p_c,
            lam=lam,
            waiting=report.waiting,
            idling=report.idling,
            overtime=report.overtime,
            scheduling_cost=report.scheduling_cost,
            routing_cost=report.routing_cost,
            total=report.total,
            team_count=routing.team_count,
        ))
    return rows


def benchmark(spec: BenchmarkSpec) -> tuple[list[BenchmarkRow], list[BenchmarkRow]]:
    """Run every (N, p_C, lambda) cell; returns (per-trial rows, aggregates)."""
    cells = [
        (n, p_c, lam)
        for n in spec.n_values
        for p_c in spec.p_c_values
        for lam in spec.lambdas
    ]
    rows: list[BenchmarkRow] = []
    for n, p_c, lam in cells:
        trial_rows = _map_ordered(
            lambda trial: _benchmark_trial(spec, n, p_c, lam, trial),
            list(range(spec.trials)),
        )
        for chunk in trial_rows:
            rows.extend(chunk)

    aggregates = []
    for n, p_c, lam in cells:
        for model in (SchedulingModel.BASELINE.value, SchedulingModel.SIMULATED.value):
            group = [r for r in rows
                     if (r.model, r.n, r.p_c, r.lam) == (model, n, p_c, lam)]
            if not group:
                continue
            k = len(group)
            aggregates.append(BenchmarkRow(
                model=model, n=n, p_c=p_c, lam=lam,
                waiting=sum(r.waiting for r in group) / k,
                idling=sum(r.idling for r in group) / k,
                overtime=sum(r.overtime for r in group) / k,
                scheduling_cost=sum(r.scheduling_cost for r in group) / k,
                routing_cost=sum(r.routing_cost for r in group) / k,
                total=sum(r.total for r in group) / k,
                team_count=sum(r.team_count for r in group) / k,
            ))
    return rows, aggregates


def render_benchmark_csv(rows) -> str:
    lines = [BENCHMARK_HEADER]
    for r in rows:
        lines.append(
            f"{r.model},{r.n},{r.p_c!r},{r.lam},{r.waiting!r},{r.idling!r},"
            f"{r.overtime!r},{r.scheduling_cost!r},{r.routing_cost!r},"
            f"{r.total!r},{r.team_count!r}"
        )
    return "\n".join(lines) + "\n"
