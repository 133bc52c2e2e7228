"""Second-stage appointment scheduling.

The baseline schedule books each customer at the team's expected arrival
time under deterministic expected service and travel. The Monte Carlo
scheduler then iterates: simulate the day under the current appointments,
replace every appointment with the empirical mean arrival time at that
stop, and stop when appointments settle (or after a fixed iteration cap).
Every iteration draws from fresh replication streams.
"""

from __future__ import annotations

import numpy as np

from .model import Instance, Route, Schedule, SolverConfig
from .simulation import _simulate_team

#: Stop iterating once no appointment moves by more than this many minutes.
CONVERGENCE_TOL = 0.5


def baseline_schedule(route: Route, instance: Instance) -> Schedule:
    """Appointments from expected effective service plus expected travel."""
    p = instance.params
    d = instance.distance_lists
    w = p.expected_service_with_cancellation
    appointments = []
    b = 0.0
    prev = 0
    for k, stop in enumerate(route.stops):
        if k > 0:
            b = b + w
        b = b + d[prev][stop] / p.mean_speed
        appointments.append(b)
        prev = stop
    return Schedule(team_index=route.team_index, appointments=tuple(appointments))


def baseline_schedules(routes, instance: Instance) -> tuple[Schedule, ...]:
    return tuple(baseline_schedule(r, instance) for r in routes)


def mc_scheduler(routes, schedules, config: SolverConfig,
                 instance: Instance) -> tuple[Schedule, ...]:
    """Refine appointments toward mean simulated arrival times."""
    schedules = list(schedules)
    for iteration in range(config.scheduler_iterations):
        label = f"sched/i{iteration}"
        max_change = 0.0
        updated = []
        for route, schedule in zip(routes, schedules):
            sim = _simulate_team(
                route, schedule, instance, config.cancellation_lambda,
                config.mc_replications, config.master_seed, label,
                want_arrivals=True,
            )
            old = np.asarray(schedule.appointments)
            if old.size == 0:
                updated.append(schedule)
                continue
            with np.errstate(invalid="ignore"):
                means = np.nanmean(sim.arrivals, axis=0)
            means = np.where(np.isnan(means), old, means)
            # Mean arrivals are nondecreasing along a route path by path;
            # the running max only guards conditional means after skips.
            means = np.maximum.accumulate(np.maximum(means, 0.0))
            max_change = max(max_change, float(np.abs(means - old).max()))
            updated.append(Schedule(
                team_index=schedule.team_index,
                appointments=tuple(float(v) for v in means),
            ))
        schedules = updated
        if max_change < CONVERGENCE_TOL:
            break
    return tuple(schedules)


def schedules_for(routes, instance: Instance, config: SolverConfig,
                  simulated: bool) -> tuple[Schedule, ...]:
    base = baseline_schedules(routes, instance)
    if not simulated:
        return base
    return mc_scheduler(routes, base, config, instance)
