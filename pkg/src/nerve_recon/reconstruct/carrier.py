"""Monte Carlo check that ``f`` carries each source ball into the selected target ball."""

import logging
from dataclasses import dataclass
from typing import Callable

import numpy as np
from numpy.typing import NDArray

from src.nerve_recon.complex import SimplicialComplex, SimplicialMap
from src.nerve_recon.errors import DomainError
from src.nerve_recon.manifolds import (
    ManifoldModel,
    SeedLike,
    distance_to_manifold,
    project_cloud,
    uniform_ball_offsets,
)

logger = logging.getLogger("src.nerve_recon.reconstruct")

PointMap = Callable[[NDArray[np.float64]], NDArray[np.float64]]


@dataclass(frozen=True)
class CarrierReport:
    passed: bool
    checked: int
    violations: int
    worst_gap: float


def carrier_check(
    phi: SimplicialMap,
    source: SimplicialComplex,
    target: SimplicialComplex,
    model_x: ManifoldModel,
    f: PointMap,
    eps_x: float,
    eps_y: float,
    samples_per_ball: int,
    seed: SeedLike,
) -> CarrierReport:
    """Sample ``w`` in each ``B(xi, eps_x)`` inside the reach tube; require ``|f(pi(w)) - h(xi)| < eps_y``."""
    if source.points is None or target.points is None:
        raise DomainError("carrier check needs geometric complexes")
    if samples_per_ball < 1:
        raise DomainError(f"samples_per_ball must be positive, got {samples_per_ball}")
    rng = np.random.default_rng(seed)
    checked = violations = 0
    worst = -np.inf
    for vertex, center in enumerate(source.points):
        draws = center + uniform_ball_offsets(rng, samples_per_ball, len(center), eps_x)
        inside = distance_to_manifold(model_x, draws) < model_x.tau
        if model_x.kind == "torus":
            inside &= np.linalg.norm(draws[:, :2], axis=1) > 0
        draws = draws[inside]
        if len(draws) == 0:
            continue
        images = f(project_cloud(model_x, draws))
        gaps = np.linalg.norm(images - target.points[phi.assignment[vertex]], axis=1)
        checked += len(gaps)
        violations += int(np.count_nonzero(gaps >= eps_y))
        worst = max(worst, float(gaps.max()))
    report = CarrierReport(
        passed=violations == 0,
        checked=checked,
        violations=violations,
        worst_gap=float(worst) if checked else 0.0,
    )
    logger.debug(
        "carrier_check checked=%d violations=%d worst=%.4f", checked, violations, report.worst_gap
    )
    return report
