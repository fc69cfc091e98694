"""Hypothesis validation for the clean and noisy reconstruction settings.

Validators never raise on a violated inequality. Each check becomes a
``HypothesisCheck`` row so callers can log which gate failed for a given configuration.
"""

import logging
import math
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

from src.nerve_recon.bounds.functions import beta, gamma_from, gamma_pm, rho_clean, rho_noisy
from src.nerve_recon.bounds.params import CleanParams, NoisyParams
from src.nerve_recon.errors import NerveReconError
from src.nerve_recon.manifolds import NOISE_REACH_FACTOR, ManifoldModel, covering_number

logger = logging.getLogger("src.nerve_recon.bounds")

LIPSCHITZ_FEASIBILITY_FACTOR = math.sqrt(2.0) - 1.0


class HypothesisCheck(BaseModel):
    """One inequality of a hypothesis bundle, evaluated."""

    model_config = ConfigDict(extra="forbid")

    name: str = Field(description="Stable identifier of the inequality")
    passed: bool
    lhs: float | None = Field(default=None, description="Left-hand side of the strict inequality")
    rhs: float | None = Field(default=None, description="Right-hand side of the strict inequality")
    detail: str = Field(default="", description="Human-readable statement or failure reason")


class HypothesisReport(BaseModel):
    """Pass/fail rows for a hypothesis bundle plus the derived quantities."""

    model_config = ConfigDict(extra="forbid")

    setting: Literal["clean", "noisy"]
    checks: list[HypothesisCheck] = Field(default_factory=list)
    values: dict[str, float] = Field(
        default_factory=dict, description="Computed beta/gamma/rho/window values"
    )

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failures(self) -> list[HypothesisCheck]:
        return [check for check in self.checks if not check.passed]

    def check(self, name: str) -> HypothesisCheck:
        for row in self.checks:
            if row.name == name:
                return row
        raise KeyError(name)

    def to_text(self) -> str:
        """Render as ``key: pass|FAIL lhs=.. rhs=..`` lines followed by ``key=value`` lines."""
        lines = [f"setting: {self.setting}"]
        for row in self.checks:
            status = "pass" if row.passed else "FAIL"
            parts = [f"{row.name}: {status}"]
            if row.lhs is not None:
                parts.append(f"lhs={row.lhs:.6g}")
            if row.rhs is not None:
                parts.append(f"rhs={row.rhs:.6g}")
            if row.detail:
                parts.append(f"# {row.detail}")
            lines.append(" ".join(parts))
        for key, value in self.values.items():
            lines.append(f"{key}={value:.6g}")
        lines.append(f"overall: {'pass' if self.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"


def _strict(name: str, lhs: float, rhs: float, detail: str) -> HypothesisCheck:
    return HypothesisCheck(name=name, passed=bool(lhs < rhs), lhs=lhs, rhs=rhs, detail=detail)


def _radius_check(name: str, model: ManifoldModel, epsilon: float) -> HypothesisCheck:
    return _strict(name, epsilon, model.tau / 2.0, f"epsilon < tau/2 on {model.label()}")


def _sample_check(
    name: str,
    model: ManifoldModel,
    epsilon: float,
    delta: float,
    count: int,
    values: dict[str, float],
    key: str,
) -> HypothesisCheck:
    try:
        bound = beta(model, epsilon, delta)
    except NerveReconError as exc:
        return HypothesisCheck(name=name, passed=False, detail=f"beta undefined: {exc}")
    values[key] = bound
    return HypothesisCheck(
        name=name,
        passed=bool(count > bound),
        lhs=bound,
        rhs=float(count),
        detail="sample count exceeds beta",
    )


def validate_sample(
    model: ManifoldModel, epsilon: float, delta: float, count: int
) -> HypothesisReport:
    """Radius and sample-size checks for a single manifold with on-manifold samples."""
    values: dict[str, float] = {}
    checks = [
        _radius_check("radius", model, epsilon),
        _sample_check("sample", model, epsilon, delta, count, values, "beta"),
    ]
    return HypothesisReport(setting="clean", checks=checks, values=values)


def validate_clean(
    model_x: ManifoldModel,
    model_y: ManifoldModel,
    params: CleanParams,
    count_x: int,
    count_y: int,
) -> HypothesisReport:
    values: dict[str, float] = {}
    checks = [
        _radius_check("radius_x", model_x, params.eps_x),
        _radius_check("radius_y", model_y, params.eps_y),
        _strict(
            "radius_lipschitz",
            4.0 * params.kappa * params.eps_x,
            params.eps_y,
            "4 kappa eps_x < eps_y",
        ),
        _sample_check(
            "sample_x", model_x, params.eps_x, params.delta_x, count_x, values, "beta_x"
        ),
        _sample_check(
            "sample_y", model_y, params.eps_y, params.delta_y, count_y, values, "beta_y"
        ),
    ]
    if checks[2].passed:
        values["rho"] = rho_clean(params)
    report = HypothesisReport(setting="clean", checks=checks, values=values)
    logger.debug(
        "validate_clean passed=%s failed=%s",
        report.passed,
        [row.name for row in report.failures()],
    )
    return report


def _noise_check(name: str, model: ManifoldModel, r: float) -> HypothesisCheck:
    ceiling = NOISE_REACH_FACTOR * model.tau
    return HypothesisCheck(
        name=name,
        passed=bool(0.0 < r < ceiling),
        lhs=r,
        rhs=ceiling,
        detail=f"0 < r < (3 - sqrt 8) tau on {model.label()}",
    )


def _window_check(
    name: str,
    model: ManifoldModel,
    r: float,
    epsilon: float,
    values: dict[str, float],
    suffix: str,
) -> HypothesisCheck:
    try:
        low, high = gamma_pm(model.tau, r)
    except NerveReconError as exc:
        return HypothesisCheck(name=name, passed=False, detail=f"window undefined: {exc}")
    values[f"gamma_minus_{suffix}"] = low
    values[f"gamma_plus_{suffix}"] = high
    return HypothesisCheck(
        name=name,
        passed=bool(low < epsilon < high),
        lhs=epsilon,
        rhs=high,
        detail=f"{low:.6g} < epsilon < {high:.6g}",
    )


def _noisy_sample_check(
    name: str,
    model: ManifoldModel,
    r: float,
    delta: float,
    count: int,
    omega: float | None,
    grid_step: float | None,
    values: dict[str, float],
    suffix: str,
) -> HypothesisCheck:
    if omega is None:
        return HypothesisCheck(name=name, passed=False, detail="omega not estimated")
    step = grid_step if grid_step is not None else r / 8.0
    try:
        cover = covering_number(model, r / 2.0, step)
        bound = gamma_from(omega, cover, delta)
    except NerveReconError as exc:
        return HypothesisCheck(name=name, passed=False, detail=f"gamma undefined: {exc}")
    values[f"cover_{suffix}"] = float(cover)
    values[f"omega_{suffix}"] = omega
    values[f"gamma_{suffix}"] = bound
    return HypothesisCheck(
        name=name,
        passed=bool(count > bound),
        lhs=bound,
        rhs=float(count),
        detail="sample count exceeds gamma",
    )


def validate_noisy_sample(
    model: ManifoldModel,
    r: float,
    epsilon: float,
    delta: float,
    count: int,
    *,
    omega: float | None,
    grid_step: float | None = None,
) -> HypothesisReport:
    """Noise range, radius window and gamma checks for a single manifold."""
    values: dict[str, float] = {}
    checks = [
        _noise_check("noise", model, r),
        _window_check("window", model, r, epsilon, values, "x"),
        _noisy_sample_check("sample", model, r, delta, count, omega, grid_step, values, "x"),
    ]
    return HypothesisReport(setting="noisy", checks=checks, values=values)


def validate_noisy(
    model_x: ManifoldModel,
    model_y: ManifoldModel,
    params: NoisyParams,
    count_x: int,
    count_y: int,
    *,
    omega_x: float | None = None,
    omega_y: float | None = None,
    grid_step: float | None = None,
) -> HypothesisReport:
    """Evaluate the noisy hypothesis bundle.

    Rows: ``lipschitz_feasibility`` (4 kappa tau_x < (sqrt 2 - 1) tau_y), ``noise_x``/``noise_y``,
    ``window_x``/``window_y``, ``noisy_radius_lipschitz``, ``evaluation_noise`` and
    ``sample_x``/``sample_y`` against gamma. Sample rows fail when omega is missing.
    """
    values: dict[str, float] = {}
    eval_ceiling = params.evaluation_noise_ceiling()
    checks = [
        _strict(
            "lipschitz_feasibility",
            4.0 * params.kappa * model_x.tau,
            LIPSCHITZ_FEASIBILITY_FACTOR * model_y.tau,
            "4 kappa tau_x < (sqrt 2 - 1) tau_y",
        ),
        _noise_check("noise_x", model_x, params.r_x),
        _noise_check("noise_y", model_y, params.r_y),
        _window_check("window_x", model_x, params.r_x, params.eps_x, values, "x"),
        _window_check("window_y", model_y, params.r_y, params.eps_y, values, "y"),
        _strict(
            "noisy_radius_lipschitz",
            4.0 * params.kappa * params.inflated_x,
            params.deflated_y,
            "4 kappa (eps_x + r_x) < eps_y - r_y",
        ),
        _strict(
            "evaluation_noise",
            params.d,
            eval_ceiling,
            "d < ((eps_y - r_y) - 2 kappa (eps_x + r_x)) / 2",
        ),
        _noisy_sample_check(
            "sample_x",
            model_x,
            params.r_x,
            params.delta_x,
            count_x,
            omega_x,
            grid_step,
            values,
            "x",
        ),
        _noisy_sample_check(
            "sample_y",
            model_y,
            params.r_y,
            params.delta_y,
            count_y,
            omega_y,
            grid_step,
            values,
            "y",
        ),
    ]
    values["evaluation_noise_ceiling"] = eval_ceiling
    if checks[5].passed and checks[6].passed:
        values["rho"] = rho_noisy(params)
    report = HypothesisReport(setting="noisy", checks=checks, values=values)
    logger.debug(
        "validate_noisy passed=%s failed=%s",
        report.passed,
        [row.name for row in report.failures()],
    )
    return report
