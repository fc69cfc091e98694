"""Grid-based density, covering-number and small-ball-mass oracles.

Each oracle errs on the conservative side: density may report false negatives,
the covering number is an upper bound and the mass bound is a lower bound.
"""

import logging
import math

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.spatial import cKDTree

from src.nerve_recon.errors import DimensionMismatchError, DomainError
from src.nerve_recon.geometry import as_cloud
from src.nerve_recon.manifolds.grids import manifold_grid
from src.nerve_recon.manifolds.models import ManifoldModel, NoiseModel
from src.nerve_recon.manifolds.sampling import SeedLike, sample_conditioned

logger = logging.getLogger("src.nerve_recon.manifolds")

MIN_OMEGA_SAMPLES = 10_000
OMEGA_DEFLATION = 3.0


def is_alpha_dense(
    points: ArrayLike, model: ManifoldModel, alpha: float, grid_step: float
) -> bool:
    """Sufficient check that every manifold point lies within ``alpha`` of a sample.

    Passes iff each grid point has a sample closer than ``alpha - grid_step``.
    """
    if alpha <= 0 or grid_step <= 0:
        raise DomainError(f"alpha and grid_step must be positive, got {alpha}, {grid_step}")
    if 4.0 * grid_step > alpha:
        raise DomainError(f"grid_step={grid_step:g} is too coarse for alpha={alpha:g}")
    cloud = as_cloud(points)
    if cloud.shape[1] != model.ambient_dim:
        raise DimensionMismatchError(
            f"{model.kind} lives in R^{model.ambient_dim}, got points in R^{cloud.shape[1]}"
        )

    grid = manifold_grid(model, grid_step)
    gaps, _ = cKDTree(cloud).query(grid)
    worst = float(np.max(gaps))
    logger.debug("density alpha=%.4f grid=%d worst_gap=%.6f", alpha, len(grid), worst)
    return worst < alpha - grid_step


def covering_number(model: ManifoldModel, nu: float, grid_step: float) -> int:
    """Upper bound on the number of open ``nu``-balls needed to cover the manifold.

    Greedy cover of the grid by balls of radius ``nu - grid_step`` centered at grid
    points; enlarging each to radius ``nu`` then covers the manifold itself.
    """
    if not nu > grid_step > 0:
        raise DomainError(f"need nu > grid_step > 0, got nu={nu:g} grid_step={grid_step:g}")

    grid = manifold_grid(model, grid_step)
    tree = cKDTree(grid)
    reach = nu - grid_step
    covered = np.zeros(len(grid), dtype=bool)
    centers = 0
    for index in range(len(grid)):
        if covered[index]:
            continue
        centers += 1
        hits = tree.query_ball_point(grid[index], reach * (1.0 - 1e-12))
        covered[hits] = True
        covered[index] = True

    logger.debug("covering nu=%.4f grid=%d centers=%d", nu, len(grid), centers)
    return centers


def mass_profile(
    model: ManifoldModel,
    noise: NoiseModel,
    grid_step: float,
    mc_samples: int,
    seed: SeedLike = 0,
) -> NDArray[np.float64]:
    """Empirical measure of ``B_{r/2}(p)`` for every grid point ``p``."""
    draws = sample_conditioned(model, noise, mc_samples, seed)
    grid = manifold_grid(model, grid_step)
    counts = cKDTree(draws).query_ball_point(grid, 0.5 * noise.r, return_length=True)
    return np.asarray(counts, dtype=float) / mc_samples


def omega_lower_bound(
    model: ManifoldModel,
    noise: NoiseModel,
    grid_step: float,
    mc_samples: int,
    seed: SeedLike = 0,
) -> float:
    """Monte Carlo lower bound for ``inf_p mu(B_{r/2}(p))``: grid minimum minus three standard errors."""
    if mc_samples < MIN_OMEGA_SAMPLES:
        raise DomainError(f"mc_samples must be at least {MIN_OMEGA_SAMPLES}, got {mc_samples}")

    profile = mass_profile(model, noise, grid_step, mc_samples, seed)
    lowest = float(profile.min())
    std_error = math.sqrt(max(lowest * (1.0 - lowest), 0.0) / mc_samples)
    bound = lowest - OMEGA_DEFLATION * std_error
    logger.debug(
        "omega r=%.4f grid=%d min_mass=%.6g se=%.3g bound=%.6g",
        noise.r, len(profile), lowest, std_error, bound,
    )
    if bound <= 0:
        raise DomainError(
            f"small-ball mass {lowest:.3g} is indistinguishable from 0 with {mc_samples} samples"
        )
    return bound


def with_estimated_omega(
    model: ManifoldModel,
    noise: NoiseModel,
    grid_step: float,
    mc_samples: int,
    seed: SeedLike = 0,
) -> NoiseModel:
    """Copy of ``noise`` carrying the estimated Omega lower bound."""
    omega = omega_lower_bound(model, noise, grid_step, mc_samples, seed)
    return noise.model_copy(update={"omega": omega})
