"""First-stage routing: build team routes that minimize total distance.

Construction is parallel savings seeded down to exactly M routes, followed
by intra-route 2-opt and inter-route relocate/swap local search run to a
fixpoint under a fixed improvement budget. All tie-breaking is by lowest
customer index so identical inputs always give identical routes.

Model variants share the distance objective and differ only in the per-route
feasibility rule:

* distance      - no constraint
* capacity      - sum of expected effective service times <= end_time
* time_windows  - expected route duration (travel + service) <= end_time
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import Instance, Route, RoutingModel

IMPROVE_EPS = 1e-9


class InfeasibleError(ValueError):
    """A requested team count cannot satisfy the model constraints."""


@dataclass(frozen=True)
class RouteCandidate:
    """One sweep entry: a team count with its routes and routing cost."""

    model: RoutingModel
    team_count: int
    routes: tuple[Route, ...]
    phi_r: float


# --- feasibility -----------------------------------------------------------

class _Constraints:
    """Per-route feasibility bound for one model variant."""

    __slots__ = ("max_stops", "max_travel_budget", "service_per_stop", "speed")

    def __init__(self, instance: Instance, model: RoutingModel):
        p = instance.params
        self.max_stops = None
        self.max_travel_budget = None
        self.service_per_stop = p.expected_service_with_cancellation
        self.speed = p.mean_speed
        if model == RoutingModel.CAPACITY and self.service_per_stop > 0:
            self.max_stops = int(math.floor(p.end_time / self.service_per_stop + 1e-12))
        elif model == RoutingModel.TIME_WINDOWS:
            self.max_travel_budget = p.end_time

    def ok(self, n_stops: int, route_distance: float) -> bool:
        if self.max_stops is not None and n_stops > self.max_stops:
            return False
        if self.max_travel_budget is not None:
            duration = route_distance / self.speed + n_stops * self.service_per_stop
            if duration > self.max_travel_budget:
                return False
        return True


def _route_distance(stops, d) -> float:
    prev = 0
    total = 0.0
    for s in stops:
        total += d[prev][s]
        prev = s
    return total + d[prev][0]


def total_distance(routes, instance: Instance) -> float:
    d = instance.distance
    return sum(_route_distance(r.stops if isinstance(r, Route) else r, d)
               for r in routes)


def min_teams_capacity(instance: Instance) -> int:
    """Lower bound on teams implied by total expected service demand."""
    p = instance.params
    demand = p.n_customers * p.expected_service_with_cancellation
    return max(1, math.ceil(demand / p.end_time))


# --- construction ----------------------------------------------------------

def _savings_construction(instance: Instance, m_target: int, cons: _Constraints):
    d = instance.distance.tolist()
    n = instance.n
    routes = {i: [i] for i in range(1, n + 1)}
    owner = {i: i for i in range(1, n + 1)}
    dist_of = {i: 2.0 * d[0][i] for i in range(1, n + 1)}

    savings = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            s = d[0][i] + d[0][j] - d[i][j]
            savings.append((-s, i, j))
    savings.sort()

    def endpoints(rid):
        r = routes[rid]
        return r[0], r[-1]

    count = n
    for neg_s, i, j in savings:
        if count <= m_target:
            break
        ri, rj = owner[i], owner[j]
        if ri == rj:
            continue
        hi, ti = endpoints(ri)
        hj, tj = endpoints(rj)
        if i not in (hi, ti) or j not in (hj, tj):
            continue
        # orient so the join is tail(ri) -> head(rj)
        a = routes[ri] if ti == i else list(reversed(routes[ri]))
        b = routes[rj] if hj == j else list(reversed(routes[rj]))
        merged = a + b
        new_dist = dist_of[ri] + dist_of[rj] - (-neg_s)
        if not cons.ok(len(merged), new_dist):
            continue
        routes[ri] = merged
        dist_of[ri] = new_dist
        for c in b:
            owner[c] = ri
        del routes[rj], dist_of[rj]
        count -= 1

    route_list = [routes[rid] for rid in sorted(routes, key=lambda r: min(routes[r]))]
    return route_list, d


def _cheapest_insertion(stops, c, d, cons, route_dist):
    """Best position to insert c into stops, or None if infeasible."""
    best = None
    for pos in range(len(stops) + 1):
        prev = stops[pos - 1] if pos > 0 else 0
        nxt = stops[pos] if pos < len(stops) else 0
        delta = d[prev][c] + d[c][nxt] - d[prev][nxt]
        if best is None or delta < best[0] - IMPROVE_EPS:
            if cons.ok(len(stops) + 1, route_dist + delta):
                best = (delta, pos)
    return best


def _force_team_count(route_list, d, m_target, cons):
    """Merge or dissolve routes until exactly m_target remain."""
    dists = [_route_distance(r, d) for r in route_list]
    while len(route_list) > m_target:
        best = None  # (delta, ia, ib, merged_stops)
        for ia in range(len(route_list)):
            for ib in range(ia + 1, len(route_list)):
                a, b = route_list[ia], route_list[ib]
                joins = (
                    (a[-1], b[0], a + b),
                    (a[-1], b[-1], a + list(reversed(b))),
                    (a[0], b[0], list(reversed(a)) + b),
                    (a[0], b[-1], list(reversed(a)) + list(reversed(b))),
                )
                for u, v, merged in joins:
                    delta = d[u][v] - d[u][0] - d[0][v]
                    if best is not None and delta >= best[0] - IMPROVE_EPS:
                        continue
                    if cons.ok(len(merged), dists[ia] + dists[ib] + delta):
                        best = (delta, ia, ib, merged)
        if best is not None:
            delta, ia, ib, merged = best
            route_list[ia] = merged
            dists[ia] = dists[ia] + dists[ib] + delta
            del route_list[ib], dists[ib]
            continue
        # No pairwise merge fits; dissolve the smallest route into the rest.
        small = min(range(len(route_list)), key=lambda k: (len(route_list[k]), k))
        orphans = route_list.pop(small)
        dists.pop(small)
        for c in orphans:
            choice = None
            for k in range(len(route_list)):
                found = _cheapest_insertion(route_list[k], c, d, cons, dists[k])
                if found is not None and (choice is None or found[0] < choice[0] - IMPROVE_EPS):
                    choice = (found[0], k, found[1])
            if choice is None:
                raise InfeasibleError(
                    f"cannot place customer {c} in {m_target} routes under the model constraints"
                )
            delta, k, pos = choice
            route_list[k].insert(pos, c)
            dists[k] += delta
    return route_list


# --- local search ----------------------------------------------------------

def _two_opt_route(stops, d, budget):
    improved_any = False
    n = len(stops)
    moved = True
    while moved and budget[0] > 0:
        moved = False
        for i in range(n - 1):
            a = stops[i - 1] if i > 0 else 0
            b = stops[i]
            for j in range(i + 1, n):
                c = stops[j]
                e = stops[j + 1] if j + 1 < n else 0
                delta = d[a][c] + d[b][e] - d[a][b] - d[c][e]
                if delta < -IMPROVE_EPS:
                    stops[i:j + 1] = reversed(stops[i:j + 1])
                    budget[0] -= 1
                    improved_any = True
                    moved = True
                    b = stops[i]
                    if budget[0] <= 0:
                        return improved_any
    return improved_any


def _relocate_pass(route_list, dists, d, cons, budget):
    improved = False
    for ia in range(len(route_list)):
        a = route_list[ia]
        pos_a = 0
        while pos_a < len(a):
            if len(a) == 1:
                break  # moving the only stop would empty the route
            c = a[pos_a]
            prev = a[pos_a - 1] if pos_a > 0 else 0
            nxt = a[pos_a + 1] if pos_a + 1 < len(a) else 0
            remove_gain = d[prev][c] + d[c][nxt] - d[prev][nxt]
            done_move = False
            for ib in range(len(route_list)):
                if ib == ia:
                    continue
                b = route_list[ib]
                found = _cheapest_insertion(b, c, d, cons, dists[ib])
                if found is None:
                    continue
                delta = found[0] - remove_gain
                if delta < -IMPROVE_EPS:
                    a.pop(pos_a)
                    dists[ia] -= remove_gain
                    b.insert(found[1], c)
                    dists[ib] += found[0]
                    budget[0] -= 1
                    improved = True
                    done_move = True
                    break
            if budget[0] <= 0:
                return improved
            if not done_move:
                pos_a += 1
    return improved


def _swap_pass(route_list, dists, d, cons, budget):
    improved = False
    for ia in range(len(route_list)):
        for ib in range(ia + 1, len(route_list)):
            a, b = route_list[ia], route_list[ib]
            for pa in range(len(a)):
                ca = a[pa]
                prev_a = a[pa - 1] if pa > 0 else 0
                next_a = a[pa + 1] if pa + 1 < len(a) else 0
                for pb in range(len(b)):
                    cb = b[pb]
                    prev_b = b[pb - 1] if pb > 0 else 0
                    next_b = b[pb + 1] if pb + 1 < len(b) else 0
                    delta_a = (d[prev_a][cb] + d[cb][next_a]
                               - d[prev_a][ca] - d[ca][next_a])
                    delta_b = (d[prev_b][ca] + d[ca][next_b]
                               - d[prev_b][cb] - d[cb][next_b])
                    if delta_a + delta_b < -IMPROVE_EPS:
                        if not (cons.ok(len(a), dists[ia] + delta_a)
                                and cons.ok(len(b), dists[ib] + delta_b)):
                            continue
                        a[pa], b[pb] = cb, ca
                        dists[ia] += delta_a
                        dists[ib] += delta_b
                        budget[0] -= 1
                        improved = True
                        if budget[0] <= 0:
                            return improved
                        ca = a[pa]
                        prev_a = a[pa - 1] if pa > 0 else 0
                        next_a = a[pa + 1] if pa + 1 < len(a) else 0
    return improved


def _local_search(route_list, d, cons, n):
    budget = [200 * n]
    dists = [_route_distance(r, d) for r in route_list]
    while budget[0] > 0:
        improved = False
        for k, r in enumerate(route_list):
            if _two_opt_route(r, d, budget):
                dists[k] = _route_distance(r, d)
                improved = True
            if budget[0] <= 0:
                break
        if budget[0] > 0 and _relocate_pass(route_list, dists, d, cons, budget):
            improved = True
        if budget[0] > 0 and _swap_pass(route_list, dists, d, cons, budget):
            improved = True
        if not improved:
            break
    return route_list


def _canonical_routes(route_list) -> tuple[Route, ...]:
    oriented = []
    for stops in route_list:
        if stops and stops[-1] < stops[0]:
            stops = list(reversed(stops))  # cost-neutral under symmetric distances
        oriented.append(stops)
    oriented.sort(key=lambda r: min(r))
    return tuple(Route(team_index=m, stops=tuple(stops))
                 for m, stops in enumerate(oriented))


# --- model entry points ----------------------------------------------------

def _solve(instance: Instance, m: int, model: RoutingModel) -> tuple[Route, ...]:
    n = instance.n
    if m < 1 or m > n:
        raise InfeasibleError(f"team count {m} outside 1..{n}")
    cons = _Constraints(instance, model)
    if cons.max_stops is not None:
        needed = max(min_teams_capacity(instance), math.ceil(n / cons.max_stops))
        if m < needed:
            raise InfeasibleError(
                f"capacity model needs at least {needed} teams "
                f"(demand bound {min_teams_capacity(instance)})"
            )
    if cons.max_travel_budget is not None:
        d = instance.distance
        p = instance.params
        worst = max(
            2.0 * d[0][c] / p.mean_speed + cons.service_per_stop
            for c in range(1, n + 1)
        )
        if worst > p.end_time:
            raise InfeasibleError(
                "a customer cannot be served within the day even by a dedicated team"
            )
    route_list, d = _savings_construction(instance, m, cons)
    if len(route_list) > m:
        route_list = _force_team_count(route_list, d, m, cons)
    route_list = _local_search(route_list, d, cons, n)
    routes = _canonical_routes(route_list)
    _check_output(routes, instance, cons, model)
    return routes


def _check_output(routes, instance, cons, model):
    d = instance.distance
    for r in routes:
        if not r.stops:
            raise InfeasibleError("constructed an empty route")
        if not cons.ok(len(r.stops), _route_distance(r.stops, d)):
            raise InfeasibleError(f"route violates the {model.value} constraint")


def solve_distance(instance: Instance, m: int) -> tuple[Route, ...]:
    return _solve(instance, m, RoutingModel.DISTANCE)


def solve_capacity(instance: Instance, m: int) -> tuple[Route, ...]:
    return _solve(instance, m, RoutingModel.CAPACITY)


def solve_time_windows(instance: Instance, m: int) -> tuple[Route, ...]:
    return _solve(instance, m, RoutingModel.TIME_WINDOWS)


def routes_routing_cost(routes, instance: Instance) -> float:
    """Team hiring cost plus unit-priced expected travel time."""
    p = instance.params
    travel_time = total_distance(routes, instance) / p.mean_speed
    return len(routes) * p.assignment_cost + p.unit_travel_cost * travel_time


def sweep_team_counts(instance: Instance, model: RoutingModel) -> list[RouteCandidate]:
    """Solve every feasible team count up to floor(N/3), cheapest first."""
    n = instance.n
    upper = n // 3 if n >= 3 else n
    lower = 1
    if model == RoutingModel.CAPACITY:
        lower = min_teams_capacity(instance)
    candidates = []
    for m in range(lower, upper + 1):
        try:
            routes = _solve(instance, m, model)
        except InfeasibleError:
            continue
        candidates.append(RouteCandidate(
            model=model,
            team_count=m,
            routes=routes,
            phi_r=routes_routing_cost(routes, instance),
        ))
    candidates.sort(key=lambda c: (c.phi_r, c.team_count))
    return candidates
