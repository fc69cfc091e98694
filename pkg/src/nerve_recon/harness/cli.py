"""Command line entry points for the nerve reconstruction pipeline.

Every command returns an exit code; ``run_cli`` maps library errors onto ``EXIT_INVALID``.
"""

import json
import logging
import sys
from pathlib import Path
from typing import Sequence

import click
import numpy as np

from src.nerve_recon.complex import SimplicialComplex, build_cech_nerve
from src.nerve_recon.errors import ConfigError, NerveReconError
from src.nerve_recon.harness.config import ExperimentConfig, load_config
from src.nerve_recon.harness.models import TrialOutcome
from src.nerve_recon.harness.runner import (
    TrialArtifacts,
    prepare_experiment,
    run_experiment,
    run_trial,
    trial_seed,
)
from src.nerve_recon.harness.summary import summarize_report, write_report
from src.nerve_recon.homology import (
    h1_multiplier,
    homology,
    induced_invariant_factors,
    induced_maps,
)
from src.nerve_recon.manifolds import (
    ManifoldModel,
    NoiseModel,
    sample_conditioned,
    sample_uniform,
)
from src.nerve_recon.utils.formats import (
    read_complex,
    read_map,
    read_point_cloud,
    write_complex,
    write_map,
    write_point_cloud,
)
from src.nerve_recon.utils.settings import load_settings

logger = logging.getLogger("src.nerve_recon.harness")

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_TRIAL_FAILURES = 2


def _configure(
    config_path: str | None,
    seed: int | None,
    trials: int | None,
    out: str | None,
    fmt: str | None,
) -> ExperimentConfig:
    if config_path is None:
        raise click.UsageError("--config is required")
    config = load_config(config_path)
    update: dict = {}
    if seed is not None:
        update["seed"] = seed
    if trials is not None:
        update["trials"] = trials
    output = config.output
    if out is not None:
        output = output.model_copy(update={"dir": Path(out)})
    if fmt is not None:
        output = output.model_copy(update={"format": fmt})
    update["output"] = output
    return config.model_copy(update=update)


def _draw(
    model: ManifoldModel, noise: NoiseModel | None, count: int, stream: np.random.SeedSequence
) -> np.ndarray:
    rng = np.random.default_rng(stream)
    if noise is not None:
        return sample_conditioned(model, noise, count, rng)
    return sample_uniform(model, count, rng)


def _write_artifacts(artifacts: TrialArtifacts, out_dir: Path) -> list[Path]:
    written: list[Path] = []
    if artifacts.points_x is not None:
        written.append(write_point_cloud(artifacts.points_x, out_dir / "x.txt"))
    if artifacts.nerve_x is not None:
        written.append(write_complex(artifacts.nerve_x, out_dir / "nx.cx"))
    if artifacts.points_y is not None:
        written.append(write_point_cloud(artifacts.points_y, out_dir / "y.txt"))
    if artifacts.nerve_y is not None:
        written.append(write_complex(artifacts.nerve_y, out_dir / "ny.cx"))
    if artifacts.phi is not None:
        written.append(write_map(artifacts.phi, out_dir / "phi.map", "nx.cx", "ny.cx"))
    return written


def _print_outcome(outcome: TrialOutcome, done: int, total: int) -> None:
    color = "green" if outcome.success else ("red" if outcome.error else "yellow")
    status = "ok" if outcome.success else (outcome.failure_reason or "failure")
    click.secho(
        f"  trial {outcome.trial_index:>4} [{done}/{total}] {status} betti_x={outcome.betti_x} "
        f"betti_y={outcome.betti_y} multiplier={outcome.multiplier} ({outcome.millis:.0f} ms)",
        fg=color,
        dim=outcome.success,
    )


config_option = click.option("--config", "config_path", type=click.Path(dir_okay=False), help="Experiment TOML")
seed_option = click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=None, help="Base seed (u64)")
trials_option = click.option("--trials", type=click.IntRange(min=1), default=None, help="Trial count")
out_option = click.option("--out", type=click.Path(file_okay=False), default=None, help="Output directory")
format_option = click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default=None, help="Report format")


@click.group()
@click.option("--debug/--no-debug", default=False, help="Enable debug logging")
@click.option("-v", "--verbose", is_flag=True, help="Echo per-trial progress")
@click.pass_context
def cli(ctx: click.Context, debug: bool, verbose: bool) -> None:
    """Nerve reconstruction of manifolds and maps from random samples."""
    level = logging.DEBUG if debug else getattr(logging, load_settings().log_level, logging.WARNING)
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )
    ctx.ensure_object(dict)
    ctx.obj["verbose"] = verbose


@cli.command()
@config_option
def bounds(config_path: str | None) -> int:
    """Print beta/gamma, the radius windows and rho for a config."""
    config = _configure(config_path, None, None, None, None)
    plan = prepare_experiment(config.model_copy(update={"allow_infeasible": True}))
    for key, value in plan.bounds.items():
        click.echo(f"{key}={value:.6g}")
    click.echo(f"n_x={plan.n_x}")
    if plan.n_y is not None:
        click.echo(f"n_y={plan.n_y}")
    return EXIT_OK


@cli.command()
@config_option
def validate(config_path: str | None) -> int:
    """Print the hypothesis report; exit 1 if any inequality fails."""
    config = _configure(config_path, None, None, None, None)
    plan = prepare_experiment(config.model_copy(update={"allow_infeasible": True}))
    for line in plan.validation.to_text().splitlines():
        failed = ": FAIL" in line or line == "overall: FAIL"
        click.secho(line, fg="red" if failed else None)
    return EXIT_OK if plan.validation.passed else EXIT_INVALID


@cli.command()
@config_option
@seed_option
@out_option
@click.option("--trial", "trial_index", type=click.IntRange(min=0), default=0, show_default=True)
def sample(config_path: str | None, seed: int | None, out: str | None, trial_index: int) -> int:
    """Write the X (and Y) samples of one trial as point-cloud files."""
    config = _configure(config_path, seed, None, out, None)
    plan = prepare_experiment(config)
    stream_x, stream_y, _, _ = trial_seed(config, trial_index).spawn(4)
    out_dir = config.output.dir
    out_dir.mkdir(parents=True, exist_ok=True)

    path = write_point_cloud(_draw(config.x, plan.noise_x, plan.n_x, stream_x), out_dir / "x.txt")
    click.echo(f"wrote {path}")
    if config.y is not None and plan.n_y is not None:
        path = write_point_cloud(_draw(config.y, plan.noise_y, plan.n_y, stream_y), out_dir / "y.txt")
        click.echo(f"wrote {path}")
    return EXIT_OK


@cli.command()
@click.option("--points", "points_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--epsilon", type=float, required=True)
@click.option("--d-max", type=click.IntRange(min=1), default=2, show_default=True)
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None, help="Complex file")
@click.option("--plot", "plot_path", type=click.Path(dir_okay=False), default=None, help="SVG file")
def nerve(points_path: str, epsilon: float, d_max: int, out_path: str | None, plot_path: str | None) -> int:
    """Build the Čech nerve of a point-cloud file."""
    complex_ = build_cech_nerve(read_point_cloud(points_path), epsilon, d_max)
    click.echo(f"f_vector={list(complex_.f_vector())}")
    if out_path:
        click.echo(f"wrote {write_complex(complex_, out_path)}")
    if plot_path:
        from src.nerve_recon.harness.plots import plot_nerve

        click.echo(f"wrote {plot_nerve(complex_, plot_path)}")
    return EXIT_OK


@cli.command(name="homology")
@click.option("--complex", "complex_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--points", "points_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--epsilon", type=float, default=None)
@click.option("--up-to", type=click.IntRange(min=0), default=1, show_default=True)
def homology_command(
    complex_path: str | None, points_path: str | None, epsilon: float | None, up_to: int
) -> int:
    """Betti numbers and torsion of a complex file or of the nerve of a point cloud."""
    complex_: SimplicialComplex
    if complex_path is not None:
        complex_ = read_complex(complex_path)
    elif points_path is not None and epsilon is not None:
        complex_ = build_cech_nerve(read_point_cloud(points_path), epsilon, up_to + 1)
    else:
        raise click.UsageError("pass --complex, or --points together with --epsilon")
    summary = homology(complex_, up_to)
    click.echo(json.dumps({"betti": summary.betti, "torsion": summary.torsion}))
    return EXIT_OK


@cli.command()
@click.option("--map", "map_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--up-to", type=click.IntRange(min=0), default=1, show_default=True)
def induced(map_path: str, up_to: int) -> int:
    """Induced homology maps of a map file against the complexes named in its header."""
    phi, source_name, target_name = read_map(map_path)
    if not source_name or not target_name:
        raise click.UsageError(f"{map_path} does not name its source and target complexes")
    base = Path(map_path).parent
    source = read_complex(base / source_name)
    target = read_complex(base / target_name)
    maps = induced_maps(phi, source, target, up_to)
    multiplier = None
    if len(maps) > 1:
        try:
            multiplier = h1_multiplier(maps[1])[0]
        except NerveReconError:
            multiplier = None
    payload = {
        "matrices": {str(m.dim): m.matrix for m in maps},
        "invariant_factors": {str(m.dim): induced_invariant_factors(m) for m in maps},
        "multiplier": multiplier,
    }
    click.echo(json.dumps(payload))
    return EXIT_OK


@cli.command()
@config_option
@seed_option
@out_option
@click.option("--trial", "trial_index", type=click.IntRange(min=0), default=0, show_default=True)
def reconstruct(config_path: str | None, seed: int | None, out: str | None, trial_index: int) -> int:
    """Run one pipeline trial; write its outcome, clouds, nerves and reconstruction map."""
    config = _configure(config_path, seed, None, out, None)
    artifacts = TrialArtifacts()
    outcome = run_trial(config, trial_index, artifacts=artifacts)
    out_dir = config.output.dir
    out_dir.mkdir(parents=True, exist_ok=True)
    written = _write_artifacts(artifacts, out_dir)
    path = out_dir / f"{config.scenario}_trial{trial_index}.json"
    path.write_text(outcome.model_dump_json(indent=2) + "\n")
    written.append(path)
    _print_outcome(outcome, 1, 1)
    for item in written:
        click.echo(f"wrote {item}")
    return EXIT_OK if outcome.success else EXIT_TRIAL_FAILURES


@cli.command()
@config_option
@seed_option
@trials_option
@out_option
@format_option
@click.option("--max-fail", type=click.IntRange(min=0), default=None, help="Tolerated failed trials")
@click.option("--workers", type=click.IntRange(min=1), default=None, help="Worker processes")
@click.pass_context
def experiment(
    ctx: click.Context,
    config_path: str | None,
    seed: int | None,
    trials: int | None,
    out: str | None,
    fmt: str | None,
    max_fail: int | None,
    workers: int | None,
) -> int:
    """Run the full Monte Carlo experiment and write the report."""
    config = _configure(config_path, seed, trials, out, fmt)
    hook = _print_outcome if ctx.obj.get("verbose") else None
    report = run_experiment(config, workers=workers, on_trial=hook)
    path = write_report(report, config.output.dir, config.output.format)
    click.secho(summarize_report(report), fg="blue")
    click.echo(f"wrote {path}")
    if max_fail is not None and report.failures > max_fail:
        click.secho(f"{report.failures} failed trials exceed --max-fail {max_fail}", fg="red", err=True)
        return EXIT_TRIAL_FAILURES
    return EXIT_OK


def run_cli(argv: Sequence[str] | None = None) -> int:
    """Invoke the CLI and map failures to exit codes instead of raising."""
    try:
        result = cli.main(args=list(argv) if argv is not None else None, standalone_mode=False)
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return EXIT_INVALID
    except click.ClickException as exc:
        exc.show()
        return EXIT_INVALID
    except ConfigError as exc:
        click.secho(f"invalid config: {exc}", fg="red", err=True)
        return EXIT_INVALID
    except NerveReconError as exc:
        click.secho(f"error: {exc}", fg="red", err=True)
        return EXIT_INVALID
    return int(result) if isinstance(result, int) else EXIT_OK


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
