import math

import numpy as np
import pytest

from hsara.model import (
    CostBreakdown,
    Parameters,
    Route,
    Schedule,
    Solution,
    SolverConfig,
    TeamCost,
    inter_schedule,
    recursion_costs,
    routing_cost,
)

from conftest import make_instance, lattice


class TestInterSchedule:
    def test_three_stop_route(self):
        assert inter_schedule((25.0, 120.0, 205.0)) == (25.0, 95.0, 85.0)

    def test_five_stop_route(self):
        assert inter_schedule((16.0, 86.0, 175.0, 250.0, 318.0)) == \
            (16.0, 70.0, 89.0, 75.0, 68.0)

    def test_empty(self):
        assert inter_schedule(()) == ()

    def test_rejects_decreasing(self):
        with pytest.raises(ValueError):
            inter_schedule((10.0, 5.0))
        with pytest.raises(ValueError):
            inter_schedule((-1.0,))


class TestRoutingCost:
    def test_assignment_only(self):
        inst = make_instance([(1.0, 0.0), (2.0, 0.0)], assignment=100.0,
                             unit_travel=0.0)
        sol = Solution(
            routes=(Route(0, (1,)), Route(1, (2,))),
            schedules=(Schedule(0, (1.0,)), Schedule(1, (2.0,))),
        )
        assert routing_cost(sol, inst) == 200.0

    def test_travel_only(self):
        inst = make_instance([(3.0, 4.0)], assignment=0.0, unit_travel=1.0,
                             mean_speed=1.0)
        sol = Solution(routes=(Route(0, (1,)),), schedules=(Schedule(0, (5.0,)),))
        assert routing_cost(sol, inst) == pytest.approx(10.0)

    def test_empty_solution(self):
        inst = make_instance([(1.0, 1.0)])
        assert routing_cost(Solution(routes=(), schedules=()), inst) == 0.0


class TestRecursionCosts:
    def test_wait_at_first_stop(self):
        waits, idles, overtime = recursion_costs((8.0,), (7.0,), (10.0, 0.0), 100.0)
        assert waits == (2.0,)
        assert idles == (0.0,)
        assert overtime == 0.0

    def test_overtime(self):
        waits, idles, overtime = recursion_costs((10.0,), (5.0,), (10.0, 0.0), 10.0)
        assert waits == (0.0,)
        assert idles == (0.0,)
        assert overtime == 5.0

    def test_degenerate_deterministic(self, rng):
        # With z = t = 0 waits stay 0 and overtime is 0 whenever L >= sum(x);
        # idles equal x itself (the team sits out each full gap).
        x = lattice(rng, 5)
        waits, idles, overtime = recursion_costs(
            x, np.zeros(5), np.zeros(6), float(x.sum()) + 1.0
        )
        assert waits == (0.0,) * 5
        assert idles == tuple(x)
        assert overtime == 0.0
        waits, idles, overtime = recursion_costs(
            np.zeros(3), np.zeros(3), np.zeros(4), 50.0
        )
        assert waits == idles == (0.0, 0.0, 0.0)
        assert overtime == 0.0

    def test_complementarity(self, rng):
        for _ in range(200):
            n = int(rng.integers(1, 12))
            waits, idles, _ = recursion_costs(
                rng.random(n) * 30, rng.random(n) * 30, rng.random(n + 1) * 30, 480.0
            )
            for w, i in zip(waits, idles):
                assert w * i == 0.0

    def test_positive_homogeneity(self, rng):
        # Scaling by a power of two is exact in floats, so equality is exact.
        n = 6
        x, z = lattice(rng, n), lattice(rng, n)
        t = lattice(rng, n + 1)
        scale = 4.0
        w1, i1, o1 = recursion_costs(x, z, t, 200.0)
        w2, i2, o2 = recursion_costs(x * scale, z * scale, t * scale, 200.0 * scale)
        assert w2 == tuple(v * scale for v in w1)
        assert i2 == tuple(v * scale for v in i1)
        assert o2 == o1 * scale

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            recursion_costs((1.0,), (1.0, 2.0), (1.0, 1.0), 10.0)
        with pytest.raises(ValueError):
            recursion_costs((1.0,), (1.0,), (1.0,), 10.0)


class TestTypes:
    def test_parameters_invariants(self):
        good = dict(n_customers=1, end_time=480.0, mean_service_time=60.0,
                    sd_service_time=30.0, mean_speed=1.0, assignment_cost=250.0,
                    unit_travel_cost=2.0, unit_wait_cost=10.0, unit_idle_cost=5.0,
                    unit_overtime_cost=15.0, cancel_rate=0.1)
        Parameters(**good)
        for field, bad in [("end_time", 0.0), ("mean_service_time", -1.0),
                           ("sd_service_time", -0.1), ("mean_speed", 0.0),
                           ("unit_wait_cost", -2.0), ("cancel_rate", 1.5)]:
            with pytest.raises(ValueError):
                Parameters(**{**good, field: bad})

    def test_instance_distance_matrix(self, rng):
        pts = [(float(x), float(y)) for x, y in rng.uniform(-25, 25, (12, 2))]
        inst = make_instance(pts)
        d = inst.distance
        assert d.shape == (13, 13)
        assert np.allclose(d, d.T)
        assert np.all(np.diag(d) == 0.0)
        assert d[0, 1] == pytest.approx(math.hypot(*pts[0]))
        # triangle inequality
        for i in range(13):
            for j in range(13):
                for k in range(13):
                    assert d[i, j] <= d[i, k] + d[k, j] + 1e-9

    def test_route_rejects_duplicates(self):
        with pytest.raises(ValueError):
            Route(0, (1, 2, 1))
        with pytest.raises(ValueError):
            Route(0, (0, 1))

    def test_schedule_rejects_decreasing(self):
        with pytest.raises(ValueError):
            Schedule(0, (5.0, 3.0))
        with pytest.raises(ValueError):
            Schedule(0, (-1.0,))

    def test_solution_alignment_and_partition(self):
        inst = make_instance([(1.0, 0.0), (2.0, 0.0), (3.0, 0.0)])
        with pytest.raises(ValueError):
            Solution(routes=(Route(0, (1, 2)),), schedules=(Schedule(0, (1.0,)),))
        sol = Solution(
            routes=(Route(0, (1, 3)), Route(1, (2,))),
            schedules=(Schedule(0, (1.0, 2.0)), Schedule(1, (1.0,))),
        )
        sol.validate(inst)
        missing = Solution(routes=(Route(0, (1, 3)),),
                           schedules=(Schedule(0, (1.0, 2.0)),))
        with pytest.raises(ValueError, match="partition"):
            missing.validate(inst)
        doubled = Solution(
            routes=(Route(0, (1, 2)), Route(1, (2, 3))),
            schedules=(Schedule(0, (1.0, 2.0)), Schedule(1, (1.0, 2.0))),
        )
        with pytest.raises(ValueError, match="partition"):
            doubled.validate(inst)

    def test_cost_breakdown_identity(self):
        teams = [TeamCost(250.0, 10.0, 5.0, 2.0, 1.0),
                 TeamCost(250.0, 20.0, 0.0, 3.0, 0.0)]
        report = CostBreakdown.from_team_costs(teams, replications=100)
        parts = (report.assignment + report.travel + report.waiting
                 + report.idling + report.overtime)
        assert report.total == pytest.approx(parts, rel=1e-9)
        assert report.assignment == 500.0
        assert report.scheduling_cost == pytest.approx(11.0)
        assert report.routing_cost == pytest.approx(530.0)

    def test_solver_config_validation(self):
        with pytest.raises(ValueError):
            SolverConfig(routing_models=())
        with pytest.raises(ValueError):
            SolverConfig(cancellation_lambda=2)
        with pytest.raises(ValueError):
            SolverConfig(mc_replications=0)
        with pytest.raises(ValueError):
            SolverConfig(metaheuristic_level=-1)
