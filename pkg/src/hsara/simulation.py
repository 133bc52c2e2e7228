"""Event-driven replay of a solution's service day.

A replication walks each team's route on a running clock: sample the leg
travel time, idle until the appointment on early arrival, charge waiting on
late arrival, sample the service duration, and charge overtime after the
final return to the depot.

Cancellations come in two flavours selected by the model parameter:

* model 0 (last-minute): the team always drives to the stop and only learns
  of the cancellation there, so the stop's wait/idle accrue as usual but its
  service time is zero.
* model 1 (notified): a cancelled customer notifies the office at a random
  time before the appointment. Once the clock has passed that time the team
  may skip the stop when a quick sampled comparison of travel plus
  wait/idle (or overtime, for the last stop) favours the direct leg.

All randomness is drawn from per-(team, replication) streams, so
replications are reproducible and order-independent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .model import CostBreakdown, Instance, Route, Schedule, Solution, TeamCost
from .sampling import DistributionSpec, RngStream, sample_travel_factors

DECISION_MINI_REPS = 32


@dataclass(frozen=True)
class SkipDecision:
    """Audit record for one reroute comparison."""

    cancelled_stop: int
    via_travel_cost: float      # R1: unit-priced travel through the stop
    via_mismatch_cost: float    # S1: wait/idle (or overtime) estimate via the stop
    direct_travel_cost: float   # R2
    direct_mismatch_cost: float  # S2
    skipped: bool


@dataclass(frozen=True)
class TeamTrace:
    """One team's realized day in a single replication."""

    team_index: int
    arrival_times: tuple[float, ...]   # NaN where the stop was skipped
    served: tuple[bool, ...]
    skipped_stops: tuple[int, ...]
    waits: tuple[float, ...]
    idles: tuple[float, ...]
    overtime: float
    travel_time: float
    travel_cost: float
    waiting_cost: float
    idling_cost: float
    overtime_cost: float
    decisions: tuple[SkipDecision, ...] = ()


@dataclass
class _TeamSim:
    """Replication-indexed outcomes for one team."""

    travel: np.ndarray    # (R,) minutes on the road
    wait: np.ndarray      # (R,) total customer waiting minutes
    idle: np.ndarray      # (R,) total team idling minutes
    overtime: np.ndarray  # (R,) minutes past end of day
    arrivals: Optional[np.ndarray] = None  # (R, n), NaN where skipped


@dataclass(frozen=True)
class SimulationDetail:
    """A cost report plus the extras the scheduler and UI need."""

    report: CostBreakdown
    per_replication_totals: np.ndarray = field(compare=False)
    mean_arrivals: tuple[tuple[float, ...], ...] = ()


def _leg_distances(stops: Sequence[int], d) -> list[float]:
    prev = 0
    legs = []
    for s in stops:
        legs.append(d[prev][s])
        prev = s
    legs.append(d[prev][0])
    return legs


def _team_stream(master_seed: int, label: str, team: int, replication: int) -> RngStream:
    return RngStream(master_seed, f"{label}/t{team}", replication)


# --- last-minute model (vectorized over replications) -----------------------

def run_masked_legs(appointments, leg_times, services, end_time, cancelled=None):
    """Replay the clock recursion on pre-drawn samples (model 0).

    ``leg_times`` is (R, n+1) including the return leg and ``services`` is
    (R, n). With no ``cancelled`` mask this is exactly the gated wait/idle
    recursion on the given samples. A cancelled stop is a pass-through: the
    team drives there, finds nobody, and leaves at once, so it spends no
    wait/idle/service time there and is not held for the appointment.
    Returns per-stop waits/idles, per-replication overtime, and arrivals.
    """
    leg_times = np.atleast_2d(np.asarray(leg_times, dtype=float))
    services = np.asarray(services, dtype=float).reshape(leg_times.shape[0], -1)
    reps, n = services.shape
    arrivals = np.empty((reps, n))
    waits = np.empty((reps, n))
    idles = np.empty((reps, n))
    clock = np.zeros(reps)
    for i in range(n):
        clock = clock + leg_times[:, i]
        arrivals[:, i] = clock
        a = appointments[i]
        wait = np.maximum(clock - a, 0.0)
        idle = np.maximum(a - clock, 0.0)
        held = np.maximum(clock, a) + services[:, i]
        if cancelled is None:
            waits[:, i] = wait
            idles[:, i] = idle
            clock = held
        else:
            gone = cancelled[:, i]
            waits[:, i] = np.where(gone, 0.0, wait)
            idles[:, i] = np.where(gone, 0.0, idle)
            clock = np.where(gone, clock, held)
    clock = clock + leg_times[:, n]
    overtime = np.maximum(clock - end_time, 0.0)
    return waits, idles, overtime, arrivals


def _draw_masked(stops, laws: DistributionSpec, rng: RngStream):
    """Per-replication draws for model 0: travel factors, services, flags."""
    n = len(stops)
    factors = laws.draw_travel_factors(rng, n + 1)
    services = laws.draw_service_times(rng, n)
    cancelled = laws.draw_cancel_flags(rng, n)
    return factors, services, cancelled


def _simulate_team_masked(stops, appointments, instance, reps, master_seed, label,
                          team, want_arrivals):
    p = instance.params
    laws = DistributionSpec.from_parameters(p)
    n = len(stops)
    leg_mean = np.array(_leg_distances(stops, instance.distance_lists)) / p.mean_speed
    leg_times = np.empty((reps, n + 1))
    services = np.empty((reps, n))
    cancelled = np.empty((reps, n), dtype=bool)
    for r in range(reps):
        rng = _team_stream(master_seed, label, team, r)
        factors, raw, flags = _draw_masked(stops, laws, rng)
        leg_times[r] = leg_mean * factors
        services[r] = raw
        cancelled[r] = flags
    waits, idles, overtime, arrivals = run_masked_legs(
        appointments, leg_times, services, p.end_time, cancelled=cancelled
    )
    return _TeamSim(
        travel=leg_times.sum(axis=1),
        wait=waits.sum(axis=1),
        idle=idles.sum(axis=1),
        overtime=overtime,
        arrivals=arrivals if want_arrivals else None,
    )


# --- notified model (per-replication walk) ----------------------------------

def _skip_test(d_via_a, d_via_b, d_direct, target_appt, clock, instance, rng):
    """Sampled comparison of visiting a cancelled stop versus skipping it.

    ``target_appt`` is the following stop's appointment, or None when the
    target is the depot return (then the mismatch term is overtime).
    Returns (skip, r1, s1, r2, s2).
    """
    p = instance.params
    speed = p.mean_speed
    r1 = p.unit_travel_cost * (d_via_a + d_via_b) / speed
    r2 = p.unit_travel_cost * d_direct / speed
    xi_a = sample_travel_factors(p.travel_sigma, DECISION_MINI_REPS, rng)
    xi_b = sample_travel_factors(p.travel_sigma, DECISION_MINI_REPS, rng)
    xi_c = sample_travel_factors(p.travel_sigma, DECISION_MINI_REPS, rng)
    t1 = clock + (d_via_a / speed) * xi_a + (d_via_b / speed) * xi_b
    t2 = clock + (d_direct / speed) * xi_c
    if target_appt is None:
        s1 = p.unit_overtime_cost * float(np.maximum(t1 - p.end_time, 0.0).mean())
        s2 = p.unit_overtime_cost * float(np.maximum(t2 - p.end_time, 0.0).mean())
    else:
        s1 = float((p.unit_wait_cost * np.maximum(t1 - target_appt, 0.0)
                    + p.unit_idle_cost * np.maximum(target_appt - t1, 0.0)).mean())
        s2 = float((p.unit_wait_cost * np.maximum(t2 - target_appt, 0.0)
                    + p.unit_idle_cost * np.maximum(target_appt - t2, 0.0)).mean())
    return (r2 + s2) < (r1 + s1), r1, s1, r2, s2


def reroute_decision(current_stop, cancelled_next, following_stop, clock,
                     route: Route, schedule: Schedule, instance: Instance,
                     rng: RngStream) -> bool:
    """Skip-or-visit test for a known-cancelled next stop (True = skip).

    ``following_stop`` is the stop after the cancelled one, or None when the
    cancelled stop is the last customer and the comparison targets the depot.
    """
    d = instance.distance_lists
    if following_stop is None:
        target = 0
        appt = None
    else:
        target = following_stop
        appt = schedule.appointments[route.stops.index(following_stop)]
    skip, *_ = _skip_test(
        d[current_stop][cancelled_next], d[cancelled_next][target],
        d[current_stop][target], appt, clock, instance, rng,
    )
    return skip


def _walk_notified(stops, appointments, instance, factors, services, cancelled,
                   cancel_times, decision_rng):
    """One replication of a route under the notified-cancellation policy."""
    p = instance.params
    d = instance.distance_lists
    speed = p.mean_speed
    n = len(stops)
    arrivals = [math.nan] * n
    served = [False] * n
    waits = [0.0] * n
    idles = [0.0] * n
    skipped = []
    decisions = []
    clock = 0.0
    pos = 0
    slot = 0
    travel_time = 0.0
    i = 0
    while i < n:
        stop = stops[i]
        if cancelled[i] and cancel_times[i] <= clock:
            # Known cancellation at departure: decide to skip or pass through.
            if i + 1 < n:
                target, appt = stops[i + 1], appointments[i + 1]
            else:
                target, appt = 0, None
            skip, r1, s1, r2, s2 = _skip_test(
                d[pos][stop], d[stop][target], d[pos][target],
                appt, clock, instance, decision_rng,
            )
            decisions.append(SkipDecision(stop, r1, s1, r2, s2, skip))
            if skip:
                skipped.append(stop)
                i += 1
                continue
            # Visit anyway (cheaper to pass through): travel only, no service.
            t = (d[pos][stop] / speed) * factors[slot]
            slot += 1
            travel_time += t
            clock += t
            arrivals[i] = clock
            pos = stop
            i += 1
            continue
        t = (d[pos][stop] / speed) * factors[slot]
        slot += 1
        travel_time += t
        clock += t
        arrivals[i] = clock
        if cancelled[i]:
            # Cancellation discovered on arrival: nobody home, leave at once.
            pos = stop
            i += 1
            continue
        a = appointments[i]
        waits[i] = max(clock - a, 0.0)
        idles[i] = max(a - clock, 0.0)
        clock = max(clock, a)
        clock += services[i]
        served[i] = True
        pos = stop
        i += 1
    t = (d[pos][0] / speed) * factors[slot]
    travel_time += t
    clock += t
    overtime = max(clock - p.end_time, 0.0)
    return arrivals, served, skipped, waits, idles, overtime, travel_time, decisions


def _draw_notified(stops, appointments, laws: DistributionSpec, rng: RngStream):
    n = len(stops)
    factors = laws.draw_travel_factors(rng, n + 1)
    services = laws.draw_service_times(rng, n)
    cancelled = laws.draw_cancel_flags(rng, n)
    cancel_times = laws.draw_cancel_times(rng, appointments)
    return factors, services, cancelled, cancel_times


def _simulate_team_notified(stops, appointments, instance, reps, master_seed,
                            label, team, want_arrivals):
    laws = DistributionSpec.from_parameters(instance.params)
    n = len(stops)
    sim = _TeamSim(
        travel=np.empty(reps),
        wait=np.empty(reps),
        idle=np.empty(reps),
        overtime=np.empty(reps),
        arrivals=np.empty((reps, n)) if want_arrivals else None,
    )
    for r in range(reps):
        rng = _team_stream(master_seed, label, team, r)
        dec_rng = rng.child("decide")
        draws = _draw_notified(stops, appointments, laws, rng)
        arrivals, _, _, waits, idles, overtime, travel_time, _ = _walk_notified(
            stops, appointments, instance, *draws, dec_rng
        )
        sim.travel[r] = travel_time
        sim.wait[r] = math.fsum(waits)
        sim.idle[r] = math.fsum(idles)
        sim.overtime[r] = overtime
        if want_arrivals:
            sim.arrivals[r] = arrivals
    return sim


# --- public surface ----------------------------------------------------------

def _simulate_team(route: Route, schedule: Schedule, instance, model, reps,
                   master_seed, label, want_arrivals=False) -> _TeamSim:
    stops = list(route.stops)
    appts = list(schedule.appointments)
    if model == 1 and instance.params.cancel_rate > 0.0:
        return _simulate_team_notified(stops, appts, instance, reps, master_seed,
                                       label, route.team_index, want_arrivals)
    return _simulate_team_masked(stops, appts, instance, reps, master_seed,
                                 label, route.team_index, want_arrivals)


def simulate_route(route: Route, schedule: Schedule, instance: Instance,
                   model: int, rng: RngStream) -> TeamTrace:
    """Replay one replication of a single team's day."""
    p = instance.params
    stops = list(route.stops)
    appts = list(schedule.appointments)
    if model == 1 and p.cancel_rate > 0.0:
        draws = _draw_notified(stops, appts, instance, rng)
        dec_rng = rng.child("decide")
        (arrivals, served, skipped, waits, idles, overtime,
         travel_time, decisions) = _walk_notified(
            stops, appts, instance, *draws, dec_rng
        )
    else:
        factors, services, cancelled = _draw_masked(stops, instance, rng)
        leg_mean = np.array(_leg_distances(stops, instance.distance_lists)) / p.mean_speed
        w, i_, o, arr = run_masked_legs(
            appts, leg_mean * factors, services, p.end_time,
            cancelled=cancelled.reshape(1, -1),
        )
        arrivals = arr[0].tolist()
        served = [not c for c in cancelled]
        skipped = []
        waits = w[0].tolist()
        idles = i_[0].tolist()
        overtime = float(o[0])
        travel_time = float((leg_mean * factors).sum())
        decisions = []
    return TeamTrace(
        team_index=route.team_index,
        arrival_times=tuple(arrivals),
        served=tuple(served),
        skipped_stops=tuple(skipped),
        waits=tuple(waits),
        idles=tuple(idles),
        overtime=overtime,
        travel_time=travel_time,
        travel_cost=p.unit_travel_cost * travel_time,
        waiting_cost=p.unit_wait_cost * math.fsum(waits),
        idling_cost=p.unit_idle_cost * math.fsum(idles),
        overtime_cost=p.unit_overtime_cost * overtime,
        decisions=tuple(decisions),
    )


def simulate_solution_detail(solution: Solution, instance: Instance, model: int,
                             replications: int, master_seed: int,
                             label: str = "sim",
                             want_arrivals: bool = False) -> SimulationDetail:
    """Empirical cost means plus per-replication totals and mean arrivals."""
    p = instance.params
    per_team = []
    totals = np.full(replications, solution.team_count * p.assignment_cost)
    mean_arrivals = []
    for route, schedule in zip(solution.routes, solution.schedules):
        sim = _simulate_team(route, schedule, instance, model, replications,
                             master_seed, label, want_arrivals=want_arrivals)
        per_team.append(TeamCost(
            assignment=p.assignment_cost,
            travel=p.unit_travel_cost * float(sim.travel.mean()),
            waiting=p.unit_wait_cost * float(sim.wait.mean()),
            idling=p.unit_idle_cost * float(sim.idle.mean()),
            overtime=p.unit_overtime_cost * float(sim.overtime.mean()),
        ))
        totals = totals + (p.unit_travel_cost * sim.travel
                           + p.unit_wait_cost * sim.wait
                           + p.unit_idle_cost * sim.idle
                           + p.unit_overtime_cost * sim.overtime)
        if want_arrivals:
            if sim.arrivals is None or sim.arrivals.size == 0:
                mean_arrivals.append(())
            else:
                with np.errstate(invalid="ignore"):
                    col = np.nanmean(sim.arrivals, axis=0)
                mean_arrivals.append(tuple(float(v) for v in col))
    report = CostBreakdown.from_team_costs(per_team, replications)
    return SimulationDetail(
        report=report,
        per_replication_totals=totals,
        mean_arrivals=tuple(mean_arrivals),
    )


def simulate_solution(solution: Solution, instance: Instance, model: int,
                      replications: int, master_seed: int,
                      label: str = "sim") -> CostBreakdown:
    """Empirical mean of every cost component over seeded replications."""
    return simulate_solution_detail(
        solution, instance, model, replications, master_seed, label
    ).report


def solution_trace(solution: Solution, instance: Instance, model: int,
                   master_seed: int, label: str = "sim",
                   replication: int = 0) -> list[TeamTrace]:
    """The TeamTrace of one replication, matching simulate_solution streams."""
    traces = []
    for route, schedule in zip(solution.routes, solution.schedules):
        rng = _team_stream(master_seed, label, route.team_index, replication)
        traces.append(simulate_route(route, schedule, instance, model, rng))
    return traces


def recursion_check(route: Route, schedule: Schedule, instance: Instance,
                    services, leg_times):
    """Cross-validate the event replay against the closed wait/idle recursion.

    Feeds the same fixed samples (model 0) to both paths and raises if any
    output differs; returns the event-replay (waits, idles, overtime).
    """
    from .model import inter_schedule, recursion_costs

    appts = list(schedule.appointments)
    waits, idles, overtime, _ = run_masked_legs(
        appts, leg_times, services, instance.params.end_time
    )
    sim_triple = (tuple(waits[0]), tuple(idles[0]), float(overtime[0]))
    x = inter_schedule(appts)
    rec_triple = recursion_costs(x, list(services[0]) if len(appts) else [],
                                 list(np.atleast_2d(leg_times)[0]),
                                 instance.params.end_time)
    rec_triple = (tuple(rec_triple[0]), tuple(rec_triple[1]), float(rec_triple[2]))
    if sim_triple != rec_triple:
        raise AssertionError(
            f"event replay and recursion disagree: {sim_triple} vs {rec_triple}"
        )
    return sim_triple
