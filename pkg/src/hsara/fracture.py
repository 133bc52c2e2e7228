"""Route Fracture: rebuild the worst teams' customers and splice the result.

Each step ranks teams by simulated per-team total cost, and for every prefix
of the ranking re-solves the induced sub-instance from scratch (same config,
no nested metaheuristic). A rebuilt block replaces the teams it covers only
when simulation says it is cheaper by more than the Monte Carlo standard
error of the difference. The incumbent solution and every spliced candidate
are scored under one shared set of evaluation streams, so an accepted step
lowers the simulated total on the same sample paths and the per-level cost
trajectory is nonincreasing by construction. Sub-solves and the quick
incumbent-vs-rebuilt comparisons use their own fresh streams per step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .model import CostBreakdown, Instance, Route, Schedule, Solution, SolverConfig
from .sampling import derive_seed
from .simulation import SimulationDetail, simulate_solution_detail

EVAL_LABEL = "rf-eval"


@dataclass(frozen=True)
class FractureResult:
    solution: Solution
    report: CostBreakdown
    level_totals: tuple[float, ...]  # simulated total after levels 0, 1, ...


def worst_teams(report: CostBreakdown, count: int) -> tuple[int, ...]:
    """Indices of the ``count`` teams with the highest simulated total cost."""
    m = len(report.per_team)
    if not 1 <= count <= m:
        raise ValueError(f"count must be in 1..{m}")
    ranked = sorted(range(m), key=lambda k: (-report.per_team[k].total, k))
    return tuple(sorted(ranked[:count]))


def _sub_instance(instance: Instance, customers) -> tuple[Instance, list[int]]:
    ordered = sorted(customers)
    params = replace(instance.params, n_customers=len(ordered))
    sub = Instance(params=params,
                   customers=tuple(instance.customers[c - 1] for c in ordered))
    return sub, ordered


def _renumber(routes_schedules) -> tuple[tuple[Route, ...], tuple[Schedule, ...]]:
    routes, schedules = [], []
    for m, (route, schedule) in enumerate(routes_schedules):
        routes.append(Route(team_index=m, stops=route.stops))
        schedules.append(Schedule(team_index=m, appointments=schedule.appointments))
    return tuple(routes), tuple(schedules)


def _splice(solution: Solution, removed: tuple[int, ...],
            new_routes, new_schedules, fingerprint) -> Solution:
    keep = [(r, s) for r, s in zip(solution.routes, solution.schedules)
            if r.team_index not in removed]
    merged = keep + list(zip(new_routes, new_schedules))
    routes, schedules = _renumber(merged)
    return Solution(routes=routes, schedules=schedules, fingerprint=fingerprint)


def _difference_sounds_real(better: SimulationDetail, worse_totals: np.ndarray,
                            gain: float) -> bool:
    """Require the gain to exceed the MC standard error of the difference."""
    diff = worse_totals - better.per_replication_totals
    reps = len(diff)
    if reps < 2:
        return gain > 0
    se = float(np.std(diff, ddof=1)) / math.sqrt(reps)
    return gain > se


def route_fracture_step(solution: Solution, instance: Instance,
                        config: SolverConfig, step_index: int = 0
                        ) -> tuple[Solution, CostBreakdown, bool]:
    """One pass of the rebuild-and-splice loop over all ranking prefixes."""
    # Local import: pipeline also drives this module.
    from .pipeline import solve_exploring_team_counts

    lam = config.cancellation_lambda
    reps = config.mc_replications
    seed = config.master_seed
    base = simulate_solution_detail(solution, instance, lam, reps, seed,
                                    label=EVAL_LABEL)

    best = None  # (total, prefix size, spliced solution, detail)
    for i in range(1, solution.team_count + 1):
        targets = worst_teams(base.report, i)
        customer_pool = [c for m in targets for c in solution.routes[m].stops]
        sub_instance, ordered = _sub_instance(instance, customer_pool)
        sub_config = replace(
            config,
            metaheuristic_level=0,
            master_seed=derive_seed(seed, f"rf{step_index}/sub", i) % (2 ** 63),
        )
        try:
            sub_solution, _ = solve_exploring_team_counts(sub_instance, sub_config)
        except ValueError:
            continue
        # Map sub-instance customer indices back to the original numbering.
        new_routes = tuple(
            Route(team_index=k, stops=tuple(ordered[s - 1] for s in r.stops))
            for k, r in enumerate(sub_solution.routes)
        )
        new_schedules = tuple(
            Schedule(team_index=k, appointments=s.appointments)
            for k, s in enumerate(sub_solution.schedules)
        )

        # Quick test on the replaced block alone, with fresh streams.
        cmp_label = f"rf{step_index}/cmp{i}"
        incumbent_routes, incumbent_schedules = _renumber(
            [(solution.routes[m], solution.schedules[m]) for m in targets]
        )
        incumbent = simulate_solution_detail(
            Solution(incumbent_routes, incumbent_schedules), instance,
            lam, reps, seed, label=cmp_label,
        )
        candidate = simulate_solution_detail(
            Solution(new_routes, new_schedules), instance,
            lam, reps, seed, label=cmp_label,
        )
        gain = incumbent.report.total - candidate.report.total
        if gain <= 0 or not _difference_sounds_real(
                candidate, incumbent.per_replication_totals, gain):
            continue

        fingerprint = dict(solution.fingerprint)
        fingerprint["fractured"] = fingerprint.get("fractured", 0) + 1
        spliced = _splice(solution, targets, new_routes, new_schedules, fingerprint)
        spliced.validate(instance)
        full = simulate_solution_detail(spliced, instance, lam, reps, seed,
                                        label=EVAL_LABEL)
        if best is None or full.report.total < best[0]:
            best = (full.report.total, i, spliced, full)

    if best is not None:
        total, _, spliced, full = best
        gain = base.report.total - total
        if gain > 0 and _difference_sounds_real(
                full, base.per_replication_totals, gain):
            return spliced, full.report, True
    return solution, base.report, False


def route_fracture(solution: Solution, instance: Instance,
                   config: SolverConfig) -> FractureResult:
    """Iterate the fracture step up to the configured level."""
    report = simulate_solution_detail(
        solution, instance, config.cancellation_lambda, config.mc_replications,
        config.master_seed, label=EVAL_LABEL,
    ).report
    current = solution
    totals = [report.total]
    for level in range(config.metaheuristic_level):
        current, report, improved = route_fracture_step(
            current, instance, config, step_index=level
        )
        totals.append(report.total)
        if not improved:
            break
    return FractureResult(solution=current, report=report,
                          level_totals=tuple(totals))
