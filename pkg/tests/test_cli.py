import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from hsara.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


def read(path):
    return Path(path).read_bytes()


class TestGenerate:
    def test_case_study(self, runner, tmp_path):
        out = tmp_path / "inst.json"
        result = runner.invoke(main, ["generate", "--n", "6", "--p-c", "0.1",
                                      "--seed", "7", "--out", str(out)])
        assert result.exit_code == 0, result.output
        doc = json.loads(out.read_text())
        assert doc["kind"] == "instance"
        assert len(doc["customers"]) == 6

    def test_case_study_deterministic(self, runner, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        for out in (a, b):
            result = runner.invoke(main, ["generate", "--n", "6", "--p-c", "0.1",
                                          "--seed", "7", "--out", str(out)])
            assert result.exit_code == 0
        assert read(a) == read(b)

    def test_random_writes_config(self, runner, tmp_path):
        out = tmp_path / "rand.json"
        result = runner.invoke(main, ["generate", "--random", "--seed", "9",
                                      "--out", str(out)])
        assert result.exit_code == 0, result.output
        doc = json.loads(out.read_text())
        assert doc["params"]["cancel_rate"] in (0.01, 0.05, 0.1)
        config = json.loads((tmp_path / "rand.config.json").read_text())
        assert config["routing_models"]

    def test_case_study_needs_n(self, runner, tmp_path):
        result = runner.invoke(main, ["generate", "--seed", "1",
                                      "--out", str(tmp_path / "x.json")])
        assert result.exit_code != 0
        assert "--n" in result.output

    def test_bad_p_c(self, runner, tmp_path):
        result = runner.invoke(main, ["generate", "--n", "5", "--p-c", "1.5",
                                      "--seed", "1",
                                      "--out", str(tmp_path / "x.json")])
        assert result.exit_code != 0


class TestSolve:
    def _generate(self, runner, tmp_path, n=6):
        out = tmp_path / "inst.json"
        runner.invoke(main, ["generate", "--n", str(n), "--p-c", "0.1",
                             "--seed", "7", "--out", str(out)])
        return out

    def test_solve_and_determinism(self, runner, tmp_path):
        inst = self._generate(runner, tmp_path)
        outputs = []
        for tag in ("one", "two"):
            sol = tmp_path / f"sol-{tag}.json"
            rep = tmp_path / f"rep-{tag}.json"
            result = runner.invoke(main, [
                "solve", str(inst), "--routing-models", "distance,capacity",
                "--scheduling-model", "both", "--level", "1",
                "--replications", "40", "--seed", "11",
                "--solution-out", str(sol), "--report-out", str(rep),
            ])
            assert result.exit_code == 0, result.output
            outputs.append((read(sol), read(rep)))
        assert outputs[0] == outputs[1]
        doc = json.loads(outputs[0][0])
        stops = sorted(c for route in doc["routes"] for c in route)
        assert stops == list(range(1, 7))

    def test_empty_routing_models_rejected(self, runner, tmp_path):
        inst = self._generate(runner, tmp_path)
        result = runner.invoke(main, ["solve", str(inst),
                                      "--routing-models", ""])
        assert result.exit_code != 0
        assert "--routing-models" in result.output

    def test_unknown_model_rejected(self, runner, tmp_path):
        inst = self._generate(runner, tmp_path)
        result = runner.invoke(main, ["solve", str(inst),
                                      "--routing-models", "teleport"])
        assert result.exit_code != 0
        assert "teleport" in result.output

    def test_unreadable_instance(self, runner, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{broken")
        result = runner.invoke(main, ["solve", str(bad)])
        assert result.exit_code != 0

    def test_config_file_with_flag_override(self, runner, tmp_path):
        inst = self._generate(runner, tmp_path)
        config = tmp_path / "config.json"
        config.write_text(json.dumps({
            "schema_version": 1, "kind": "config",
            "routing_models": ["distance"], "scheduling_model": "baseline",
            "cancellation_lambda": 1, "metaheuristic_level": 0,
            "mc_replications": 30, "scheduler_iterations": 5,
            "master_seed": 2,
        }))
        sol = tmp_path / "sol.json"
        rep = tmp_path / "rep.json"
        result = runner.invoke(main, [
            "solve", str(inst), "--config", str(config),
            "--replications", "20",
            "--solution-out", str(sol), "--report-out", str(rep),
        ])
        assert result.exit_code == 0, result.output
        assert json.loads(rep.read_text())["replications"] == 20


class TestBenchmarkCommand:
    def test_writes_reports(self, runner, tmp_path):
        spec = tmp_path / "spec.json"
        spec.write_text(json.dumps({
            "n_values": [6], "p_c_values": [0.1], "lambdas": [0],
            "trials": 2, "replications": 20, "seed": 3,
        }))
        out = tmp_path / "bench.csv"
        result = runner.invoke(main, ["benchmark", str(spec), "--out", str(out)])
        assert result.exit_code == 0, result.output
        lines = out.read_text().splitlines()
        assert lines[0].startswith("model,N,p_C,lambda")
        assert len(lines) == 5  # header + 2 trials x 2 models
        agg = tmp_path / "bench.agg.csv"
        assert len(agg.read_text().splitlines()) == 3

    def test_missing_field_named(self, runner, tmp_path):
        spec = tmp_path / "spec.json"
        spec.write_text(json.dumps({"n_values": [6]}))
        result = runner.invoke(main, ["benchmark", str(spec)])
        assert result.exit_code != 0
        assert "p_c_values" in result.output

    def test_invalid_json(self, runner, tmp_path):
        spec = tmp_path / "spec.json"
        spec.write_text("not json")
        result = runner.invoke(main, ["benchmark", str(spec)])
        assert result.exit_code != 0
