"""Closed-form sample-size bounds and matching radii.

Logarithms are natural throughout. Sample-size comparisons elsewhere use the real-valued
bounds with a strict inequality; nothing here rounds.
"""

import math

from src.nerve_recon.bounds.params import CleanParams, NoisyParams
from src.nerve_recon.errors import DomainError, HypothesisError
from src.nerve_recon.manifolds import (
    NOISE_REACH_FACTOR,
    ManifoldModel,
    NoiseModel,
    covering_number,
)


def unit_ball_volume(k: int, radius: float = 1.0) -> float:
    """Volume of the k-dimensional Euclidean ball."""
    return math.pi ** (k / 2.0) / math.gamma(k / 2.0 + 1.0) * radius**k


def _beta_factor(model: ManifoldModel, epsilon: float, arc_divisor: float, ball_divisor: float) -> float:
    k = model.intrinsic_dim
    tilt = math.cos(math.asin(epsilon / (arc_divisor * model.tau))) ** k
    return model.volume / (tilt * unit_ball_volume(k, epsilon / ball_divisor))


def beta(model: ManifoldModel, epsilon: float, delta: float) -> float:
    """Sample size above which a uniform sample is ``epsilon/2``-dense with probability > 1 - delta."""
    if not 0 < epsilon < model.tau / 2.0:
        raise DomainError(f"epsilon must lie in (0, tau/2) = (0, {model.tau / 2.0:g}), got {epsilon:g}")
    if not 0 < delta <= 1:
        raise DomainError(f"delta must lie in (0, 1], got {delta:g}")
    beta_1 = _beta_factor(model, epsilon, 8.0, 4.0)
    beta_2 = _beta_factor(model, epsilon, 16.0, 8.0)
    return beta_1 * (math.log(beta_2) + math.log(1.0 / delta))


def gamma_pm(tau: float, r: float) -> tuple[float, float]:
    """Endpoints of the admissible nerve-radius window around a tube of radius ``r``."""
    if tau <= 0:
        raise DomainError(f"tau must be positive, got {tau:g}")
    if not 0 < r < NOISE_REACH_FACTOR * tau:
        raise DomainError(
            f"r must lie in (0, (3 - sqrt 8) tau) = (0, {NOISE_REACH_FACTOR * tau:.6g}), got {r:g}"
        )
    discriminant = tau * tau + r * r - 6.0 * tau * r
    if discriminant <= 0:
        raise DomainError(f"window is empty for tau={tau:g}, r={r:g}")
    root = math.sqrt(discriminant)
    return ((tau + r) - root) / 2.0, ((tau + r) + root) / 2.0


def gamma_from(omega: float, cover_count: int, delta: float) -> float:
    if omega <= 0:
        raise DomainError(f"omega must be positive, got {omega:g}")
    if cover_count < 1:
        raise DomainError(f"covering number must be at least 1, got {cover_count}")
    if not 0 < delta <= 1:
        raise DomainError(f"delta must lie in (0, 1], got {delta:g}")
    return (math.log(cover_count) + math.log(1.0 / delta)) / omega


def gamma(
    model: ManifoldModel,
    noise: NoiseModel,
    delta: float,
    grid_step: float | None = None,
    cover_count: int | None = None,
) -> float:
    """Noisy sample-size bound from the Omega lower bound and the ``r/2`` covering number.

    The covering number is the greedy upper bound on a grid of mesh ``grid_step``
    (default ``r/8``) unless ``cover_count`` is supplied.
    """
    if noise.omega is None:
        raise DomainError("omega has not been estimated for this noise model")
    if cover_count is None:
        step = grid_step if grid_step is not None else noise.r / 8.0
        cover_count = covering_number(model, noise.r / 2.0, step)
    return gamma_from(noise.omega, cover_count, delta)


def rho_clean(params: CleanParams) -> float:
    """Matching radius ``eps_y - 2 kappa eps_x``; exceeds ``eps_y / 2`` whenever it is defined."""
    if not 4.0 * params.kappa * params.eps_x < params.eps_y:
        raise HypothesisError(
            f"4 kappa eps_x = {4.0 * params.kappa * params.eps_x:.6g} is not below eps_y = {params.eps_y:.6g}"
        )
    return params.eps_y - 2.0 * params.kappa * params.eps_x


def rho_noisy(params: NoisyParams) -> float:
    """Matching radius ``r_y + d`` under tube and evaluation noise."""
    if not 4.0 * params.kappa * params.inflated_x < params.deflated_y:
        raise HypothesisError(
            f"4 kappa (eps_x + r_x) = {4.0 * params.kappa * params.inflated_x:.6g} is not below "
            f"eps_y - r_y = {params.deflated_y:.6g}"
        )
    ceiling = params.evaluation_noise_ceiling()
    if not params.d < ceiling:
        raise HypothesisError(f"d = {params.d:.6g} is not below {ceiling:.6g}")
    return params.r_y + params.d
