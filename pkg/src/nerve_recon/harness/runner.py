"""Pipeline runner: one trial end to end, and the Monte Carlo loop over trials.

Every trial draws from its own ``SeedSequence`` child keyed by ``(seed, trial_index)``,
so outcomes do not depend on execution order or worker count.
"""

import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field

import numpy as np

from src.nerve_recon.bounds import (
    CleanParams,
    HypothesisReport,
    NoisyParams,
    gamma_pm,
    rho_clean,
    rho_noisy,
    validate_clean,
    validate_noisy,
    validate_noisy_sample,
    validate_sample,
)
from src.nerve_recon.complex import (
    SimplicialComplex,
    SimplicialMap,
    build_cech_nerve,
    verify_simplicial,
)
from src.nerve_recon.errors import ConfigError, HypothesisError, NerveReconError
from src.nerve_recon.geometry import PointCloud
from src.nerve_recon.harness.collector import ProgressHook, TrialCollector
from src.nerve_recon.harness.config import ExperimentConfig
from src.nerve_recon.harness.models import ExperimentReport, TrialOutcome
from src.nerve_recon.harness.stats import wilson_interval
from src.nerve_recon.homology import (
    h1_multiplier,
    homology,
    induced_invariant_factors,
    induced_maps,
)
from src.nerve_recon.manifolds import (
    ManifoldModel,
    NoiseModel,
    is_alpha_dense,
    omega_lower_bound,
    perturb_images,
    project_cloud,
    sample_conditioned,
    sample_uniform,
)
from src.nerve_recon.reconstruct import (
    build_reconstruction,
    carrier_check,
    check_delta_simplices,
    check_nonempty,
    choose_selector,
    compare_selectors,
    delta_sets,
)
from src.nerve_recon.utils.settings import load_settings

logger = logging.getLogger("src.nerve_recon.harness")

# spawn keys outside the trial-index range
_OMEGA_STREAM_X = 2**63
_OMEGA_STREAM_Y = 2**63 + 1


@dataclass
class ExperimentPlan:
    """Quantities shared by all trials: sample sizes, radii, noise models, validation."""

    n_x: int
    n_y: int | None
    rho: float | None
    validation: HypothesisReport
    bounds: dict[str, float] = field(default_factory=dict)
    noise_x: NoiseModel | None = None
    noise_y: NoiseModel | None = None
    d: float | None = None
    simplex_limit: int | None = None

    @property
    def infeasible(self) -> bool:
        return not self.validation.passed


@dataclass
class TrialArtifacts:
    """Clouds, nerves and reconstruction map of one trial, filled in as the stages run."""

    points_x: PointCloud | None = None
    nerve_x: SimplicialComplex | None = None
    points_y: PointCloud | None = None
    nerve_y: SimplicialComplex | None = None
    phi: SimplicialMap | None = None


def _derived_size(explicit: int | None, bound_key: str, values: dict[str, float], slack: int) -> int:
    if explicit is not None:
        return explicit
    if bound_key not in values:
        raise ConfigError(f"cannot derive a sample size: {bound_key} is undefined for these radii")
    return int(math.floor(values[bound_key])) + slack


def _estimate_omega(
    config: ExperimentConfig, model: ManifoldModel, noise: NoiseModel, stream: int
) -> NoiseModel:
    if not noise.admissible_for(model):
        return noise
    seed = np.random.SeedSequence(config.seed, spawn_key=(stream,))
    try:
        omega = omega_lower_bound(
            model,
            noise,
            config.grid_step(),
            config.oracle.omega_mc_samples,
            np.random.default_rng(seed),
        )
    except NerveReconError as exc:
        raise ConfigError(f"omega estimation failed for {model.label()}: {exc}") from exc
    return noise.model_copy(update={"omega": omega})


def prepare_experiment(config: ExperimentConfig) -> ExperimentPlan:
    """Validate hypotheses, estimate omega in noisy mode and fix sample sizes."""
    radii = config.radii
    samples = config.samples

    if config.task == "manifold":
        if config.mode == "clean":
            initial = validate_sample(config.x, radii.eps_x, radii.delta_x, samples.n_x or 1)
            n_x = _derived_size(samples.n_x, "beta", initial.values, samples.slack)
            report = validate_sample(config.x, radii.eps_x, radii.delta_x, n_x)
            noise_x = None
        else:
            base = config.noise_x()
            assert base is not None
            noise_x = _estimate_omega(config, config.x, base, _OMEGA_STREAM_X)

            def check_x(count: int) -> HypothesisReport:
                return validate_noisy_sample(
                    config.x,
                    base.r,
                    radii.eps_x,
                    radii.delta_x,
                    count,
                    omega=noise_x.omega,
                    grid_step=config.grid_step(),
                )

            n_x = _derived_size(samples.n_x, "gamma_x", check_x(samples.n_x or 1).values, samples.slack)
            report = check_x(n_x)
        plan = ExperimentPlan(n_x=n_x, n_y=None, rho=None, validation=report, noise_x=noise_x)
    else:
        assert config.y is not None
        if config.mode == "clean":
            params: CleanParams | NoisyParams = config.clean_params()
            initial = validate_clean(config.x, config.y, params, samples.n_x or 1, samples.n_y or 1)
            n_x = _derived_size(samples.n_x, "beta_x", initial.values, samples.slack)
            n_y = _derived_size(samples.n_y, "beta_y", initial.values, samples.slack)
            report = validate_clean(config.x, config.y, params, n_x, n_y)
            noise_x = noise_y = None
            d = None
        else:
            params = config.noisy_params()
            base_x, base_y = NoiseModel(r=params.r_x), NoiseModel(r=params.r_y)
            noise_x = _estimate_omega(config, config.x, base_x, _OMEGA_STREAM_X)
            noise_y = _estimate_omega(config, config.y, base_y, _OMEGA_STREAM_Y)

            def check(count_x: int, count_y: int) -> HypothesisReport:
                assert config.y is not None and isinstance(params, NoisyParams)
                return validate_noisy(
                    config.x,
                    config.y,
                    params,
                    count_x,
                    count_y,
                    omega_x=noise_x.omega,
                    omega_y=noise_y.omega,
                    grid_step=config.grid_step(),
                )

            initial = check(samples.n_x or 1, samples.n_y or 1)
            n_x = _derived_size(samples.n_x, "gamma_x", initial.values, samples.slack)
            n_y = _derived_size(samples.n_y, "gamma_y", initial.values, samples.slack)
            report = check(n_x, n_y)
            d = params.d
        plan = ExperimentPlan(
            n_x=n_x,
            n_y=n_y,
            rho=_matching_radius(params, report),
            validation=report,
            noise_x=noise_x,
            noise_y=noise_y,
            d=d,
        )

    plan.bounds = dict(report.values)
    if plan.rho is not None:
        plan.bounds["rho"] = plan.rho
    if config.mode == "noisy" and radii.r_x is not None and "gamma_minus_x" not in plan.bounds:
        try:
            plan.bounds["gamma_minus_x"], plan.bounds["gamma_plus_x"] = gamma_pm(config.x.tau, radii.r_x)
        except NerveReconError:
            pass
    plan.simplex_limit = load_settings().simplex_limit

    if plan.infeasible:
        failed = [row.name for row in report.failures()]
        if not config.allow_infeasible:
            raise ConfigError(f"hypothesis validation failed: {', '.join(failed)}")
        logger.warning("infeasible_override scenario=%s failed=%s", config.scenario, failed)
    logger.info(
        "experiment_prepared scenario=%s n_x=%d n_y=%s rho=%s", config.scenario, plan.n_x, plan.n_y, plan.rho
    )
    return plan


def _matching_radius(params: CleanParams | NoisyParams, report: HypothesisReport) -> float:
    """rho from the validated formulas, or the raw expression under an infeasible override."""
    try:
        return rho_noisy(params) if isinstance(params, NoisyParams) else rho_clean(params)
    except HypothesisError:
        if isinstance(params, NoisyParams):
            raw = params.r_y + params.d
        else:
            raw = params.eps_y - 2.0 * params.kappa * params.eps_x
        if raw <= 0:
            raise ConfigError(f"matching radius {raw:.6g} is not positive") from None
        return raw


def trial_seed(config: ExperimentConfig, trial_index: int) -> np.random.SeedSequence:
    return np.random.SeedSequence(config.seed, spawn_key=(trial_index,))


class _Stopwatch:
    def __init__(self) -> None:
        self.start = time.perf_counter()
        self.last = self.start
        self.laps: dict[str, float] = {}

    def lap(self, name: str) -> None:
        now = time.perf_counter()
        self.laps[name] = round((now - self.last) * 1000.0, 3)
        self.last = now

    def finish(self) -> dict[str, float]:
        self.laps["total"] = round((time.perf_counter() - self.start) * 1000.0, 3)
        return self.laps


def run_trial(
    config: ExperimentConfig,
    trial_index: int,
    plan: ExperimentPlan | None = None,
    artifacts: TrialArtifacts | None = None,
) -> TrialOutcome:
    """Run the full pipeline once; expected probabilistic failures are recorded, not raised.

    Pass ``artifacts`` to keep the clouds, nerves and reconstruction map for export.
    """
    keep = artifacts if artifacts is not None else TrialArtifacts()
    plan = plan or prepare_experiment(config)
    seq = trial_seed(config, trial_index)
    stream_x, stream_y, stream_eval, stream_carrier = seq.spawn(4)
    outcome = TrialOutcome(
        trial_index=trial_index,
        seed=int(seq.generate_state(1, dtype=np.uint64)[0]),
        n_x=plan.n_x,
        n_y=plan.n_y,
    )
    watch = _Stopwatch()
    grid_step = config.grid_step()
    eps_x = config.radii.eps_x
    dim_x, dim_y = config.dims
    up_to = config.up_to

    if plan.noise_x is not None:
        points_x = sample_conditioned(config.x, plan.noise_x, plan.n_x, np.random.default_rng(stream_x))
    else:
        points_x = sample_uniform(config.x, plan.n_x, np.random.default_rng(stream_x))
        if config.oracle.check_density:
            outcome.dense_x = is_alpha_dense(points_x, config.x, eps_x / 2.0, grid_step)
    watch.lap("sample")

    keep.points_x = points_x
    nerve_x = build_cech_nerve(points_x, eps_x, dim_x, plan.simplex_limit)
    keep.nerve_x = nerve_x
    outcome.f_vector_x = list(nerve_x.f_vector())
    watch.lap("nerve")
    homology_x = homology(nerve_x, up_to)
    outcome.betti_x = homology_x.betti
    outcome.torsion_x = homology_x.torsion
    watch.lap("homology")
    betti_ok = homology_x.betti == list(config.x.betti(up_to)) and homology_x.torsion_free

    if config.task == "manifold":
        outcome.success = betti_ok
        outcome.failure_reason = None if betti_ok else "betti_x"
        outcome.timings = watch.finish()
        return outcome

    assert config.y is not None and plan.n_y is not None and plan.rho is not None
    eps_y = config.radii.eps_y
    assert eps_y is not None
    rmap = config.registered_map()
    up_to_y = dim_y - 1

    if plan.noise_y is not None:
        points_y = sample_conditioned(config.y, plan.noise_y, plan.n_y, np.random.default_rng(stream_y))
        images = rmap.apply(project_cloud(config.x, points_x))
        assert plan.d is not None
        images = perturb_images(images, plan.d, np.random.default_rng(stream_eval))
    else:
        points_y = sample_uniform(config.y, plan.n_y, np.random.default_rng(stream_y))
        images = rmap.apply(points_x)
        if config.oracle.check_density:
            outcome.dense_y = is_alpha_dense(points_y, config.y, eps_y / 2.0, grid_step)
    keep.points_y = points_y
    nerve_y = build_cech_nerve(points_y, eps_y, dim_y, plan.simplex_limit)
    keep.nerve_y = nerve_y
    outcome.f_vector_y = list(nerve_y.f_vector())
    homology_y = homology(nerve_y, up_to_y)
    outcome.betti_y = homology_y.betti
    outcome.torsion_y = homology_y.torsion
    betti_ok = (
        betti_ok
        and homology_y.betti == list(config.y.betti(up_to_y))
        and homology_y.torsion_free
    )
    watch.lap("target")

    correspondence = delta_sets(images, points_y, plan.rho)
    nonempty, empty = check_nonempty(correspondence)
    outcome.nonempty = nonempty
    outcome.empty_count = len(empty)
    if not nonempty:
        outcome.failure_reason = "empty_delta"
        outcome.timings = watch.finish()
        return outcome
    if config.oracle.check_delta_simplices:
        outcome.delta_simplices, _ = check_delta_simplices(nerve_x, nerve_y, correspondence)

    selector = choose_selector(correspondence, images, points_y, config.selector)
    phi = build_reconstruction(nerve_x, nerve_y, selector)
    keep.phi = phi
    outcome.simplicial = verify_simplicial(phi, nerve_x, nerve_y)
    watch.lap("reconstruct")
    if not outcome.simplicial:
        logger.info("trial=%d reconstruction not simplicial", trial_index)
        outcome.failure_reason = "not_simplicial"
        outcome.timings = watch.finish()
        return outcome

    maps = induced_maps(phi, nerve_x, nerve_y, up_to, homology_x, homology_y)
    outcome.induced = maps
    outcome.invariant_factors = {m.dim: induced_invariant_factors(m) for m in maps}
    if len(maps) > 1:
        try:
            outcome.multiplier = h1_multiplier(maps[1])[0]
        except NerveReconError:
            outcome.multiplier = None
    watch.lap("induced")

    if config.oracle.compare_selectors:
        comparison = compare_selectors(
            nerve_x, nerve_y, correspondence, images, points_y, up_to, homology_x, homology_y
        )
        outcome.selectors_agree = comparison.identical if comparison is not None else None
    if config.oracle.carrier_samples > 0:
        outcome.carrier = carrier_check(
            phi,
            nerve_x,
            nerve_y,
            config.x,
            rmap.apply,
            eps_x,
            eps_y,
            config.oracle.carrier_samples,
            np.random.default_rng(stream_carrier),
        ).passed
    watch.lap("checks")

    factors_ok = all(
        outcome.invariant_factors.get(dim) == expected
        for dim, expected in rmap.expected_factors.items()
        if dim <= up_to
    )
    multiplier_ok = rmap.expected_multiplier is None or outcome.multiplier == rmap.expected_multiplier
    if not betti_ok:
        outcome.failure_reason = "betti"
    elif not factors_ok:
        outcome.failure_reason = "induced_factors"
    elif not multiplier_ok:
        outcome.failure_reason = "multiplier"
    outcome.success = outcome.failure_reason is None
    outcome.timings = watch.finish()
    return outcome


def _guarded_trial(config: ExperimentConfig, trial_index: int, plan: ExperimentPlan) -> TrialOutcome:
    try:
        return run_trial(config, trial_index, plan)
    except (NerveReconError, MemoryError) as exc:
        logger.warning("trial=%d aborted error=%s: %s", trial_index, type(exc).__name__, exc)
        seq = trial_seed(config, trial_index)
        return TrialOutcome(
            trial_index=trial_index,
            seed=int(seq.generate_state(1, dtype=np.uint64)[0]),
            n_x=plan.n_x,
            n_y=plan.n_y,
            failure_reason="error",
            error=f"{type(exc).__name__}: {exc}",
        )


def target_probability(config: ExperimentConfig) -> float:
    if config.task == "manifold":
        return 1.0 - config.radii.delta_x
    return (1.0 - config.radii.delta_x) * (1.0 - config.radii.delta_y)


def run_experiment(
    config: ExperimentConfig,
    workers: int | None = None,
    on_trial: ProgressHook | None = None,
) -> ExperimentReport:
    """Run ``config.trials`` trials and aggregate them with a Wilson interval."""
    plan = prepare_experiment(config)
    pool_size = load_settings(workers=workers).workers
    collector = TrialCollector(expected=config.trials, on_trial=on_trial)

    if pool_size > 1 and config.trials > 1:
        with ProcessPoolExecutor(max_workers=pool_size) as pool:
            futures = [
                pool.submit(_guarded_trial, config, index, plan) for index in range(config.trials)
            ]
            for future in as_completed(futures):
                collector.record(future.result())
    else:
        for index in range(config.trials):
            collector.record(_guarded_trial(config, index, plan))

    outcomes = collector.finalize()
    successes = sum(1 for outcome in outcomes if outcome.success)
    low, high = wilson_interval(successes, len(outcomes))
    report = ExperimentReport(
        config=config,
        bounds=plan.bounds,
        validation=plan.validation,
        infeasible_override=plan.infeasible,
        n_x=plan.n_x,
        n_y=plan.n_y,
        trials=outcomes,
        successes=successes,
        errors=collector.errors,
        frequency=successes / len(outcomes),
        interval=(low, high),
        target=target_probability(config),
    )
    logger.info(
        "experiment_done scenario=%s successes=%d/%d reasons=%s",
        config.scenario, successes, len(outcomes), collector.failure_reasons(),
    )
    return report
