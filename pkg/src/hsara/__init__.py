"""Home-service team routing and appointment scheduling under uncertainty."""

from .model import (
    CostBreakdown,
    Instance,
    Parameters,
    Route,
    RoutingModel,
    Schedule,
    SchedulingModel,
    Solution,
    SolverConfig,
    TeamCost,
    inter_schedule,
    recursion_costs,
    routing_cost,
)
from .instances import (
    DocumentError,
    generate_case_study,
    generate_random,
    load,
    save,
)
from .routing import (
    InfeasibleError,
    min_teams_capacity,
    solve_capacity,
    solve_distance,
    solve_time_windows,
    sweep_team_counts,
)
from .sampling import RngStream
from .scheduling import baseline_schedule, mc_scheduler
from .simulation import (
    TeamTrace,
    recursion_check,
    reroute_decision,
    simulate_route,
    simulate_solution,
)
from .fracture import route_fracture, route_fracture_step, worst_teams
from .pipeline import (
    BenchmarkSpec,
    NoFeasibleSolutionError,
    benchmark,
    render_benchmark_csv,
    solve,
    solve_detail,
)

__version__ = "0.1.0"

__all__ = [
    "BenchmarkSpec",
    "CostBreakdown",
    "DocumentError",
    "InfeasibleError",
    "Instance",
    "NoFeasibleSolutionError",
    "Parameters",
    "RngStream",
    "Route",
    "RoutingModel",
    "Schedule",
    "SchedulingModel",
    "Solution",
    "SolverConfig",
    "TeamCost",
    "TeamTrace",
    "baseline_schedule",
    "benchmark",
    "generate_case_study",
    "generate_random",
    "inter_schedule",
    "load",
    "mc_scheduler",
    "min_teams_capacity",
    "recursion_check",
    "recursion_costs",
    "render_benchmark_csv",
    "reroute_decision",
    "route_fracture",
    "route_fracture_step",
    "routing_cost",
    "save",
    "simulate_route",
    "simulate_solution",
    "solve",
    "solve_capacity",
    "solve_detail",
    "solve_distance",
    "solve_time_windows",
    "sweep_team_counts",
    "worst_teams",
]
