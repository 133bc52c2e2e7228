"""Command line client for the solver library.

Subcommands: generate (case-study or random instance), solve, benchmark,
and serve (start the HTTP service). Every command takes an explicit --seed
and writes deterministic output files, so repeated runs are byte-identical.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .instances import (
    config_to_doc,
    dumps_doc,
    generate_case_study,
    generate_random,
    load,
    save,
)
from .model import RoutingModel, SchedulingModel, SolverConfig
from .pipeline import BenchmarkSpec, benchmark, render_benchmark_csv, solve_detail


def _fail(message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(1)


@click.group()
def main():
    """Home-service routing and appointment scheduling engine."""


@main.command()
@click.option("--random", "random_mode", is_flag=True,
              help="Draw a full random scenario instead of a case study.")
@click.option("--n", type=int, default=None, help="Customer count (case study).")
@click.option("--p-c", type=float, default=None,
              help="Cancellation probability (case study).")
@click.option("--seed", type=int, required=True)
@click.option("--out", type=click.Path(dir_okay=False), default="instance.json",
              show_default=True)
@click.option("--config-out", type=click.Path(dir_okay=False), default=None,
              help="Where to write the drawn solver config (random mode).")
def generate(random_mode, n, p_c, seed, out, config_out):
    """Generate an instance file (plus a config file in random mode)."""
    try:
        if random_mode:
            instance, config = generate_random(seed)
            save(instance, out)
            config_path = config_out or str(Path(out).with_suffix(".config.json"))
            Path(config_path).write_text(dumps_doc(config_to_doc(config)),
                                         encoding="utf-8")
            click.echo(f"wrote {out} and {config_path}")
        else:
            if n is None or p_c is None:
                _fail("case-study generation needs --n and --p-c (or use --random)")
            instance = generate_case_study(n, p_c, seed)
            save(instance, out)
            click.echo(f"wrote {out}")
    except ValueError as exc:
        _fail(str(exc))


def _parse_routing_models(text: str) -> tuple[RoutingModel, ...]:
    names = [part.strip() for part in text.split(",") if part.strip()]
    if not names:
        _fail("--routing-models must name at least one of "
              "distance, capacity, time_windows")
    try:
        return tuple(RoutingModel(name) for name in names)
    except ValueError:
        _fail(f"--routing-models: unknown model in {text!r}")


@main.command()
@click.argument("instance_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--config", "config_file", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Solver config document; flags override it.")
@click.option("--routing-models", default=None,
              help="Comma list of distance,capacity,time_windows.")
@click.option("--scheduling-model",
              type=click.Choice([m.value for m in SchedulingModel]), default=None)
@click.option("--cancellation-lambda", type=click.IntRange(0, 1), default=None)
@click.option("--level", "metaheuristic_level", type=int, default=None,
              help="Metaheuristic level (0 disables it).")
@click.option("--replications", type=int, default=None)
@click.option("--scheduler-iterations", type=int, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--solution-out", type=click.Path(dir_okay=False),
              default="solution.json", show_default=True)
@click.option("--report-out", type=click.Path(dir_okay=False),
              default="report.json", show_default=True)
def solve(instance_file, config_file, routing_models, scheduling_model,
          cancellation_lambda, metaheuristic_level, replications,
          scheduler_iterations, seed, solution_out, report_out):
    """Solve an instance file and write solution and report documents."""
    try:
        instance = load(instance_file, kind="instance")
        base = load(config_file, kind="config") if config_file else SolverConfig()
        config = SolverConfig(
            routing_models=(_parse_routing_models(routing_models)
                            if routing_models is not None else base.routing_models),
            scheduling_model=(SchedulingModel(scheduling_model)
                              if scheduling_model else base.scheduling_model),
            cancellation_lambda=(cancellation_lambda
                                 if cancellation_lambda is not None
                                 else base.cancellation_lambda),
            metaheuristic_level=(metaheuristic_level
                                 if metaheuristic_level is not None
                                 else base.metaheuristic_level),
            mc_replications=(replications if replications is not None
                             else base.mc_replications),
            scheduler_iterations=(scheduler_iterations
                                  if scheduler_iterations is not None
                                  else base.scheduler_iterations),
            master_seed=seed if seed is not None else base.master_seed,
        )
        result = solve_detail(instance, config)
        save(result.solution, solution_out)
        save(result.report, report_out)
        click.echo(
            f"{result.solution.team_count} teams, simulated total "
            f"{result.report.total:.2f}; wrote {solution_out} and {report_out}"
        )
    except ValueError as exc:
        _fail(str(exc))


@main.command(name="benchmark")
@click.argument("spec_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", type=click.Path(dir_okay=False), default="benchmark.csv",
              show_default=True)
@click.option("--seed", type=int, default=None, help="Overrides the spec's seed.")
def benchmark_cmd(spec_file, out, seed):
    """Run a benchmark spec file and write per-trial plus aggregate CSVs."""
    try:
        raw = json.loads(Path(spec_file).read_text(encoding="utf-8"))
        if not isinstance(raw, dict):
            _fail("benchmark spec must be a JSON object")
        try:
            spec = BenchmarkSpec(
                n_values=tuple(raw["n_values"]),
                p_c_values=tuple(raw["p_c_values"]),
                lambdas=tuple(raw.get("lambdas", (0, 1))),
                trials=int(raw["trials"]),
                replications=int(raw["replications"]),
                seed=seed if seed is not None else int(raw.get("seed", 0)),
                routing_models=tuple(
                    RoutingModel(m) for m in raw.get(
                        "routing_models",
                        [m.value for m in RoutingModel],
                    )
                ),
                scheduler_iterations=int(raw.get("scheduler_iterations", 10)),
            )
        except KeyError as exc:
            _fail(f"benchmark spec is missing {exc.args[0]!r}")
        rows, aggregates = benchmark(spec)
        Path(out).write_text(render_benchmark_csv(rows), encoding="utf-8")
        agg_path = str(Path(out).with_suffix(".agg.csv"))
        Path(agg_path).write_text(render_benchmark_csv(aggregates), encoding="utf-8")
        click.echo(f"wrote {out} ({len(rows)} rows) and {agg_path}")
    except json.JSONDecodeError as exc:
        _fail(f"benchmark spec is not valid JSON: {exc.msg}")
    except ValueError as exc:
        _fail(str(exc))


@main.command()
@click.option("--host", default=None, help="Defaults to $HSARA_HOST or 127.0.0.1.")
@click.option("--port", type=int, default=None,
              help="Defaults to $HSARA_PORT or 8000.")
@click.option("--ui-dir", type=click.Path(file_okay=False), default=None,
              help="Static bundle directory served at /.")
def serve(host, port, ui_dir):
    """Start the HTTP service."""
    import os

    import uvicorn

    from .service.app import create_app

    host = host or os.environ.get("HSARA_HOST", "127.0.0.1")
    port = port if port is not None else int(os.environ.get("HSARA_PORT", "8000"))
    uvicorn.run(create_app(ui_dir or os.environ.get("HSARA_UI_DIR")),
                host=host, port=port)


if __name__ == "__main__":
    main()
