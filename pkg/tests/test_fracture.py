import pytest

from hsara.fracture import route_fracture, route_fracture_step, worst_teams
from hsara.model import (
    CostBreakdown,
    Route,
    RoutingModel,
    SchedulingModel,
    Solution,
    SolverConfig,
    TeamCost,
)
from hsara.scheduling import baseline_schedules
from hsara.simulation import simulate_solution

from conftest import make_instance


def report_with_totals(totals):
    teams = [TeamCost(assignment=0.0, travel=t, waiting=0.0, idling=0.0,
                      overtime=0.0) for t in totals]
    return CostBreakdown.from_team_costs(teams, replications=10)


class TestWorstTeams:
    def test_all_teams(self):
        report = report_with_totals([10.0, 50.0, 30.0])
        assert worst_teams(report, 3) == (0, 1, 2)

    def test_argmax(self):
        report = report_with_totals([10.0, 50.0, 30.0])
        assert worst_teams(report, 1) == (1,)
        assert worst_teams(report, 2) == (1, 2)

    def test_tie_breaks_low_index(self):
        report = report_with_totals([40.0, 40.0, 10.0])
        assert worst_teams(report, 1) == (0,)

    def test_range_checked(self):
        report = report_with_totals([1.0, 2.0])
        with pytest.raises(ValueError):
            worst_teams(report, 0)
        with pytest.raises(ValueError):
            worst_teams(report, 3)


def overloaded_setup():
    """Two tight clusters far apart, all served by one team: heavy overtime."""
    cluster_a = [(60.0 + dx, dy) for dx, dy in
                 [(0.0, 0.0), (1.0, 1.0), (2.0, 0.0), (0.0, 2.0), (1.5, 2.5),
                  (2.5, 1.5)]]
    cluster_b = [(-60.0 + dx, dy) for dx, dy in
                 [(0.0, 0.0), (1.0, 1.0), (2.0, 0.0), (0.0, 2.0), (1.5, 2.5),
                  (2.5, 1.5)]]
    inst = make_instance(cluster_a + cluster_b, p_c=0.0, mean_service=45.0,
                         sd_service=10.0, assignment=50.0, end_time=480.0)
    routes = (Route(0, tuple(range(1, 13))),)
    solution = Solution(routes=routes, schedules=baseline_schedules(routes, inst))
    config = SolverConfig(
        routing_models=(RoutingModel.DISTANCE, RoutingModel.CAPACITY),
        scheduling_model=SchedulingModel.BOTH,
        cancellation_lambda=0,
        metaheuristic_level=3,
        mc_replications=80,
        scheduler_iterations=5,
        master_seed=42,
    )
    return inst, solution, config


class TestFractureStep:
    def test_overloaded_team_is_split(self):
        inst, solution, config = overloaded_setup()
        out, report, improved = route_fracture_step(solution, inst, config)
        assert improved
        assert out.team_count > 1
        out.validate(inst)
        base = simulate_solution(solution, inst, 0, 80, 42, label="rf-eval")
        assert report.total < base.total

    def test_single_team_boundary(self):
        # a tiny, already-good solution: the step must not make it worse
        inst = make_instance([(5.0, 0.0), (6.0, 1.0), (5.0, 2.0)],
                             p_c=0.0, mean_service=30.0, sd_service=5.0,
                             assignment=250.0)
        routes = (Route(0, (1, 2, 3)),)
        solution = Solution(routes=routes,
                            schedules=baseline_schedules(routes, inst))
        config = SolverConfig(mc_replications=60, master_seed=7,
                              metaheuristic_level=1)
        out, report, improved = route_fracture_step(solution, inst, config)
        out.validate(inst)
        if not improved:
            assert out == solution


class TestFractureLoop:
    def test_level_zero_is_identity(self):
        inst, solution, config = overloaded_setup()
        config = SolverConfig(**{**config.__dict__, "metaheuristic_level": 0})
        result = route_fracture(solution, inst, config)
        assert result.solution == solution
        assert len(result.level_totals) == 1

    def test_totals_nonincreasing_and_capped(self):
        inst, solution, config = overloaded_setup()
        result = route_fracture(solution, inst, config)
        totals = result.level_totals
        assert len(totals) <= config.metaheuristic_level + 1
        for a, b in zip(totals, totals[1:]):
            assert b <= a + 1e-9
        result.solution.validate(inst)
