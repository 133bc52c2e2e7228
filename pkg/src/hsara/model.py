"""Domain types and the deterministic cost algebra shared by every module.

All value objects are immutable after construction and safe to share across
threads. Currency and minutes are 64-bit floats; customer and team indices
are plain ints (customers are numbered 1..N, 0 is the depot).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Sequence

import numpy as np


class RoutingModel(str, Enum):
    DISTANCE = "distance"
    CAPACITY = "capacity"
    TIME_WINDOWS = "time_windows"


class SchedulingModel(str, Enum):
    BASELINE = "baseline"
    SIMULATED = "simulated"
    BOTH = "both"


#: Canonical iteration order for routing models (keeps sweeps deterministic).
ROUTING_MODEL_ORDER = (
    RoutingModel.DISTANCE,
    RoutingModel.CAPACITY,
    RoutingModel.TIME_WINDOWS,
)


@dataclass(frozen=True)
class Parameters:
    """Problem parameters for one service day.

    Units: minutes for times, km for coordinates, km/min for speed,
    currency per team / per minute for the cost rates.
    """

    n_customers: int
    end_time: float                 # end of standard service hours [0, L]
    mean_service_time: float        # mean of the service-time law
    sd_service_time: float          # standard deviation of the service-time law
    mean_speed: float               # mean travel speed, km per minute
    assignment_cost: float          # cost of hiring one team
    unit_travel_cost: float         # per minute of travel
    unit_wait_cost: float           # per minute a customer waits
    unit_idle_cost: float           # per minute a team idles
    unit_overtime_cost: float       # per minute past end_time
    cancel_rate: float              # probability a customer cancels
    travel_sigma: float = 0.5       # lognormal shape of the travel-time law

    def __post_init__(self):
        if self.n_customers < 0:
            raise ValueError("n_customers must be >= 0")
        if self.end_time <= 0:
            raise ValueError("end_time must be > 0")
        if self.mean_service_time <= 0:
            raise ValueError("mean_service_time must be > 0")
        if self.sd_service_time < 0:
            raise ValueError("sd_service_time must be >= 0")
        if self.mean_speed <= 0:
            raise ValueError("mean_speed must be > 0")
        for name in ("assignment_cost", "unit_travel_cost", "unit_wait_cost",
                     "unit_idle_cost", "unit_overtime_cost"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")
        if not 0.0 <= self.cancel_rate <= 1.0:
            raise ValueError("cancel_rate must be in [0, 1]")
        if self.travel_sigma < 0:
            raise ValueError("travel_sigma must be >= 0")

    @property
    def expected_service_with_cancellation(self) -> float:
        """Expected effective service time (1 - p_C) * mu_S."""
        return (1.0 - self.cancel_rate) * self.mean_service_time


@dataclass(frozen=True)
class Instance:
    """A service day: depot at the origin plus customer coordinates.

    The distance matrix is derived from the coordinates with the Euclidean
    metric and indexed so that row/column 0 is the depot and i in 1..N is
    customer i.
    """

    params: Parameters
    customers: tuple[tuple[float, float], ...]
    depot: tuple[float, float] = (0.0, 0.0)
    distance: np.ndarray = field(repr=False, compare=False, default=None)

    def __post_init__(self):
        if len(self.customers) != self.params.n_customers:
            raise ValueError("customers length does not match n_customers")
        pts = np.array([self.depot, *self.customers], dtype=float)
        diff = pts[:, None, :] - pts[None, :, :]
        dist = np.sqrt((diff ** 2).sum(axis=2))
        dist.setflags(write=False)
        object.__setattr__(self, "distance", dist)

    @property
    def n(self) -> int:
        return self.params.n_customers

    @cached_property
    def distance_lists(self) -> list[list[float]]:
        """Distance matrix as nested lists; faster for scalar hot loops."""
        return self.distance.tolist()


@dataclass(frozen=True)
class Route:
    """Ordered customer visits for one team; depot endpoints are implicit."""

    team_index: int
    stops: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.stops)) != len(self.stops):
            raise ValueError("route stops must be distinct")
        if any(s < 1 for s in self.stops):
            raise ValueError("route stops must be customer indices >= 1")


@dataclass(frozen=True)
class Schedule:
    """Appointment times (minutes from day start), one per route stop."""

    team_index: int
    appointments: tuple[float, ...]

    def __post_init__(self):
        prev = 0.0
        for a in self.appointments:
            if a < prev:
                raise ValueError("appointments must be nondecreasing and >= 0")
            prev = a


@dataclass(frozen=True)
class Solution:
    """Team routes plus per-route appointment schedules."""

    routes: tuple[Route, ...]
    schedules: tuple[Schedule, ...]
    fingerprint: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if len(self.routes) != len(self.schedules):
            raise ValueError("routes and schedules must be index-aligned")
        for route, sched in zip(self.routes, self.schedules):
            if len(route.stops) != len(sched.appointments):
                raise ValueError(
                    f"team {route.team_index}: schedule length does not match route"
                )

    @property
    def team_count(self) -> int:
        return len(self.routes)

    def validate(self, instance: Instance) -> None:
        """Check the customer partition property against an instance."""
        seen = [c for route in self.routes for c in route.stops]
        expected = set(range(1, instance.n + 1))
        if len(seen) != len(expected) or set(seen) != expected:
            missing = sorted(expected - set(seen))
            extra = sorted(set(seen) - expected)
            dupes = len(seen) != len(set(seen))
            raise ValueError(
                "solution does not partition customers "
                f"(missing={missing}, extra={extra}, duplicates={dupes})"
            )


@dataclass(frozen=True)
class TeamCost:
    """Per-team empirical cost means for one simulation report."""

    assignment: float
    travel: float
    waiting: float
    idling: float
    overtime: float

    @property
    def total(self) -> float:
        return self.assignment + self.travel + self.waiting + self.idling + self.overtime


@dataclass(frozen=True)
class CostBreakdown:
    """Empirical means of every cost component over a set of replications."""

    assignment: float
    travel: float
    waiting: float
    idling: float
    overtime: float
    total: float
    per_team: tuple[TeamCost, ...]
    replications: int

    @classmethod
    def from_team_costs(cls, per_team: Sequence[TeamCost], replications: int) -> "CostBreakdown":
        assignment = sum(t.assignment for t in per_team)
        travel = sum(t.travel for t in per_team)
        waiting = sum(t.waiting for t in per_team)
        idling = sum(t.idling for t in per_team)
        overtime = sum(t.overtime for t in per_team)
        total = assignment + travel + waiting + idling + overtime
        return cls(assignment, travel, waiting, idling, overtime, total,
                   tuple(per_team), replications)

    @property
    def scheduling_cost(self) -> float:
        return self.waiting + self.idling + self.overtime

    @property
    def routing_cost(self) -> float:
        return self.assignment + self.travel


@dataclass(frozen=True)
class SolverConfig:
    """Which models to run and how hard to evaluate them."""

    routing_models: tuple[RoutingModel, ...] = ROUTING_MODEL_ORDER
    scheduling_model: SchedulingModel = SchedulingModel.BOTH
    cancellation_lambda: int = 0      # 0: last-minute, 1: notified-in-advance
    metaheuristic_level: int = 0
    mc_replications: int = 500
    scheduler_iterations: int = 10
    master_seed: int = 0

    def __post_init__(self):
        if not self.routing_models:
            raise ValueError("routing_models must be nonempty")
        # canonicalize order and drop duplicates
        models = tuple(m for m in ROUTING_MODEL_ORDER if m in set(self.routing_models))
        object.__setattr__(self, "routing_models", models)
        if self.cancellation_lambda not in (0, 1):
            raise ValueError("cancellation_lambda must be 0 or 1")
        if self.metaheuristic_level < 0:
            raise ValueError("metaheuristic_level must be >= 0")
        if self.mc_replications < 1:
            raise ValueError("mc_replications must be >= 1")
        if self.scheduler_iterations < 1:
            raise ValueError("scheduler_iterations must be >= 1")


def inter_schedule(appointments: Sequence[float]) -> tuple[float, ...]:
    """Gaps between consecutive appointments, with an implicit 0 at the depot.

    Rejects decreasing appointment lists.
    """
    out = []
    prev = 0.0
    for a in appointments:
        gap = a - prev
        if gap < 0:
            raise ValueError("appointments must be nondecreasing")
        out.append(gap)
        prev = a
    return tuple(out)


def routing_cost(solution: Solution, instance: Instance) -> float:
    """Team hiring cost plus unit-priced expected travel time over all legs."""
    p = instance.params
    cost = solution.team_count * p.assignment_cost
    d = instance.distance
    for route in solution.routes:
        prev = 0
        travel = 0.0
        for stop in route.stops:
            travel += d[prev, stop]
            prev = stop
        travel += d[prev, 0]
        cost += p.unit_travel_cost * (travel / p.mean_speed)
    return cost


def recursion_costs(
    x: Sequence[float],
    z: Sequence[float],
    t: Sequence[float],
    end_time: float,
) -> tuple[tuple[float, ...], tuple[float, ...], float]:
    """Closed recursion for waits, idles, and overtime along one route.

    ``x`` are inter-appointment gaps, ``z`` realized service times, and ``t``
    realized leg travel times including the final return to the depot, so
    ``len(t) == len(x) + 1``. The first stop sees only depot travel (no
    service before it), and overtime is measured after the return leg.
    """
    n = len(x)
    if len(z) != n:
        raise ValueError("z must have the same length as x")
    if len(t) != n + 1:
        raise ValueError("t must have one more entry than x (return leg)")
    if n == 0:
        return (), (), max(t[0] - end_time, 0.0) if t else 0.0

    waits = [0.0] * n
    idles = [0.0] * n
    waits[0] = max(t[0] - x[0], 0.0)
    idles[0] = max(x[0] - t[0], 0.0)
    for i in range(n - 1):
        carry = waits[i] + z[i] + t[i + 1]
        waits[i + 1] = max(carry - x[i + 1], 0.0)
        idles[i + 1] = max(x[i + 1] - carry, 0.0)
    overtime = max(waits[-1] + z[-1] + math.fsum(x) + t[n] - end_time, 0.0)
    return tuple(waits), tuple(idles), overtime
