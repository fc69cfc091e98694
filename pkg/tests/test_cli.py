"""Tests for the nerve-recon command line."""

import json

import numpy as np
import pytest

from src.nerve_recon.complex import SimplicialMap
from src.nerve_recon.harness.cli import EXIT_INVALID, EXIT_OK, EXIT_TRIAL_FAILURES, run_cli
from src.nerve_recon.utils.formats import (
    read_complex,
    read_map,
    read_point_cloud,
    write_map,
    write_point_cloud,
)

TINY = """\
scenario = "cli_tiny"
task = "manifold"
trials = 2
seed = 3
allow_infeasible = true

[x]
kind = "circle"
radius = 1.0

[radii]
eps_x = 0.4

[samples]
n_x = {n_x}
"""

FEASIBLE = """\
scenario = "cli_feasible"
task = "manifold"

[x]
kind = "circle"
radius = 1.0

[radii]
eps_x = 0.4
delta_x = 0.1

[samples]
slack = 2
"""

MAP = """\
scenario = "cli_map"
task = "map"
seed = 5
allow_infeasible = true

[x]
kind = "circle"
radius = 1.0

[y]
kind = "circle"
radius = 1.0

[map]
id = "identity"

[radii]
eps_x = 0.1
eps_y = 0.45

[samples]
n_x = 300
n_y = 60
"""


@pytest.fixture
def tiny_config(tmp_path):
    def write(n_x: int):
        path = tmp_path / f"tiny_{n_x}.toml"
        path.write_text(TINY.format(n_x=n_x))
        return str(path)

    return write


@pytest.fixture
def square(tmp_path):
    return write_point_cloud([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]], tmp_path / "square.txt")


# ── config commands ─────────────────────────────────────────────────


class TestConfigCommands:
    def test_bounds(self, tmp_path, capsys):
        path = tmp_path / "feasible.toml"
        path.write_text(FEASIBLE)
        assert run_cli(["bounds", "--config", str(path)]) == EXIT_OK
        out = capsys.readouterr().out
        assert "beta=" in out
        assert "n_x=204" in out

    def test_validate_passes(self, tmp_path, capsys):
        path = tmp_path / "feasible.toml"
        path.write_text(FEASIBLE)
        assert run_cli(["validate", "--config", str(path)]) == EXIT_OK
        assert "overall: pass" in capsys.readouterr().out

    def test_validate_reports_failure(self, tiny_config, capsys):
        assert run_cli(["validate", "--config", tiny_config(10)]) == EXIT_INVALID
        out = capsys.readouterr().out
        assert "sample: FAIL" in out
        assert "overall: FAIL" in out

    def test_missing_config_option(self):
        assert run_cli(["validate"]) == EXIT_INVALID

    def test_absent_config_file(self, tmp_path, capsys):
        assert run_cli(["bounds", "--config", str(tmp_path / "absent.toml")]) == EXIT_INVALID
        assert "invalid config" in capsys.readouterr().err

    def test_unknown_command(self):
        assert run_cli(["frobnicate"]) == EXIT_INVALID


# ── nerve and homology ──────────────────────────────────────────────


class TestComplexCommands:
    def test_nerve_writes_complex(self, square, tmp_path, capsys):
        out = tmp_path / "square.cx"
        code = run_cli(["nerve", "--points", str(square), "--epsilon", "0.6", "--out", str(out)])
        assert code == EXIT_OK
        assert "f_vector=[4, 4, 0]" in capsys.readouterr().out
        assert read_complex(out).f_vector() == (4, 4, 0)

    def test_homology_from_complex_file(self, square, tmp_path, capsys):
        out = tmp_path / "square.cx"
        run_cli(["nerve", "--points", str(square), "--epsilon", "0.6", "--out", str(out)])
        capsys.readouterr()
        assert run_cli(["homology", "--complex", str(out)]) == EXIT_OK
        assert json.loads(capsys.readouterr().out) == {"betti": [1, 1], "torsion": [[], []]}

    def test_homology_from_points(self, square, capsys):
        assert run_cli(["homology", "--points", str(square), "--epsilon", "0.8"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["betti"] == [1, 0]

    def test_nerve_plot(self, square, tmp_path):
        pytest.importorskip("matplotlib")
        svg = tmp_path / "plots" / "square.svg"
        assert run_cli(["nerve", "--points", str(square), "--epsilon", "0.6", "--plot", str(svg)]) == EXIT_OK
        assert svg.read_text().lstrip().startswith("<?xml")

    def test_homology_needs_input(self):
        assert run_cli(["homology"]) == EXIT_INVALID

    def test_bad_point_file(self, tmp_path, capsys):
        path = tmp_path / "broken.txt"
        path.write_text("not a header\n")
        assert run_cli(["nerve", "--points", str(path), "--epsilon", "0.5"]) == EXIT_INVALID
        assert "error" in capsys.readouterr().err


# ── trial commands ──────────────────────────────────────────────────


class TestTrialCommands:
    def test_sample_writes_cloud(self, tiny_config, tmp_path):
        out = tmp_path / "samples"
        assert run_cli(["sample", "--config", tiny_config(40), "--out", str(out)]) == EXIT_OK
        cloud = read_point_cloud(out / "x.txt")
        assert cloud.shape == (40, 2)
        np.testing.assert_allclose(np.linalg.norm(cloud, axis=1), 1.0)

    def test_sample_is_seeded(self, tiny_config, tmp_path):
        config = tiny_config(40)
        run_cli(["sample", "--config", config, "--out", str(tmp_path / "a"), "--seed", "9"])
        run_cli(["sample", "--config", config, "--out", str(tmp_path / "b"), "--seed", "9"])
        assert (tmp_path / "a" / "x.txt").read_text() == (tmp_path / "b" / "x.txt").read_text()

    def test_failed_reconstruct_exit_code(self, tiny_config, tmp_path):
        # three points never carry a 1-cycle
        code = run_cli(["reconstruct", "--config", tiny_config(3), "--out", str(tmp_path)])
        assert code == EXIT_TRIAL_FAILURES
        outcome = json.loads((tmp_path / "cli_tiny_trial0.json").read_text())
        assert outcome["failure_reason"] == "betti_x"
        assert read_point_cloud(tmp_path / "x.txt").shape == (3, 2)
        assert read_complex(tmp_path / "nx.cx").f_vector()[0] == 3
        assert not (tmp_path / "phi.map").exists()

    def test_map_reconstruct_writes_artifacts(self, tmp_path, capsys):
        config = tmp_path / "map.toml"
        config.write_text(MAP)
        code = run_cli(["reconstruct", "--config", str(config), "--out", str(tmp_path)])
        assert code in (EXIT_OK, EXIT_TRIAL_FAILURES)
        outcome = json.loads((tmp_path / "cli_map_trial0.json").read_text())
        assert read_point_cloud(tmp_path / "y.txt").shape == (60, 2)
        assert list(read_complex(tmp_path / "ny.cx").f_vector()) == outcome["f_vector_y"]
        if not outcome["nonempty"]:
            return
        phi, source, target = read_map(tmp_path / "phi.map")
        assert (source, target) == ("nx.cx", "ny.cx")
        assert len(phi) == 300
        if not outcome["simplicial"]:
            return
        capsys.readouterr()
        assert run_cli(["induced", "--map", str(tmp_path / "phi.map")]) == EXIT_OK
        induced = json.loads(capsys.readouterr().out)
        assert induced["multiplier"] == outcome["multiplier"]
        assert induced["invariant_factors"] == outcome["invariant_factors"]

    def test_induced_needs_named_complexes(self, tmp_path):
        path = write_map(SimplicialMap(assignment=(0, 0)), tmp_path / "phi.map")
        assert run_cli(["induced", "--map", str(path)]) == EXIT_INVALID


class TestExperimentCommand:
    def test_max_fail_exceeded(self, tiny_config, tmp_path, capsys):
        code = run_cli(
            ["experiment", "--config", tiny_config(3), "--out", str(tmp_path), "--max-fail", "0"]
        )
        assert code == EXIT_TRIAL_FAILURES
        assert "exceed --max-fail" in capsys.readouterr().err
        assert (tmp_path / "cli_tiny.json").exists()

    def test_max_fail_tolerated(self, tiny_config, tmp_path):
        code = run_cli(
            ["experiment", "--config", tiny_config(3), "--out", str(tmp_path), "--max-fail", "2"]
        )
        assert code == EXIT_OK

    def test_csv_and_trial_override(self, tiny_config, tmp_path, capsys):
        code = run_cli(
            [
                "-v", "experiment", "--config", tiny_config(3), "--out", str(tmp_path),
                "--format", "csv", "--trials", "3",
            ]
        )
        assert code == EXIT_OK
        assert len((tmp_path / "cli_tiny.csv").read_text().splitlines()) == 4
        assert "trial    0" in capsys.readouterr().out
