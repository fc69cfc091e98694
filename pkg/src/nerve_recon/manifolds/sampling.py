"""Samplers and the closed-form nearest-point projection for the model manifolds."""

import logging

import numpy as np
from numpy.typing import ArrayLike, NDArray

from src.nerve_recon.errors import DomainError, ProjectionError
from src.nerve_recon.geometry import Point, PointCloud, as_cloud, as_point
from src.nerve_recon.manifolds.models import NOISE_REACH_FACTOR, ManifoldModel, NoiseModel

logger = logging.getLogger("src.nerve_recon.manifolds")

SeedLike = int | np.random.SeedSequence | np.random.Generator


def _rng(seed: SeedLike) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _unit_vectors(rng: np.random.Generator, count: int, dim: int) -> NDArray[np.float64]:
    raw = rng.standard_normal((count, dim))
    norms = np.linalg.norm(raw, axis=1, keepdims=True)
    # redraw zero rows
    while np.any(norms == 0):
        bad = (norms == 0).ravel()
        raw[bad] = rng.standard_normal((int(bad.sum()), dim))
        norms = np.linalg.norm(raw, axis=1, keepdims=True)
    return raw / norms


def uniform_ball_offsets(rng: np.random.Generator, count: int, dim: int, radius: float) -> PointCloud:
    """``count`` offsets uniform in the open ``dim``-ball of the given radius."""
    directions = _unit_vectors(rng, count, dim)
    lengths = radius * rng.random(count) ** (1.0 / dim)
    return directions * lengths[:, None]


def _torus_points(model: ManifoldModel, theta: NDArray[np.float64], phi: NDArray[np.float64]) -> PointCloud:
    assert model.tube_radius is not None
    ring = model.radius + model.tube_radius * np.cos(phi)
    return np.column_stack(
        (ring * np.cos(theta), ring * np.sin(theta), model.tube_radius * np.sin(phi))
    )


def sample_uniform(model: ManifoldModel, count: int, seed: SeedLike) -> PointCloud:
    """``count`` i.i.d. points uniform with respect to Riemannian volume."""
    if count < 1:
        raise DomainError(f"count must be at least 1, got {count}")
    rng = _rng(seed)

    if model.kind == "circle":
        theta = rng.uniform(0.0, 2.0 * np.pi, count)
        return model.radius * np.column_stack((np.cos(theta), np.sin(theta)))

    if model.kind == "sphere":
        return model.radius * _unit_vectors(rng, count, 3)

    # Torus: the area element is (R + r cos phi) dtheta dphi, so phi is drawn by rejection.
    assert model.tube_radius is not None
    ceiling = model.radius + model.tube_radius
    phis: list[NDArray[np.float64]] = []
    accepted = 0
    while accepted < count:
        proposal = rng.uniform(0.0, 2.0 * np.pi, 2 * (count - accepted) + 8)
        weight = (model.radius + model.tube_radius * np.cos(proposal)) / ceiling
        keep = proposal[rng.random(len(proposal)) < weight]
        phis.append(keep)
        accepted += len(keep)
    phi = np.concatenate(phis)[:count]
    theta = rng.uniform(0.0, 2.0 * np.pi, count)
    return _torus_points(model, theta, phi)


def project_cloud(model: ManifoldModel, points: ArrayLike) -> PointCloud:
    """Vectorised :func:`project`; raises if any point is not strictly inside the reach tube."""
    cloud = as_cloud(points)
    if cloud.shape[1] != model.ambient_dim:
        raise ProjectionError(
            f"{model.kind} lives in R^{model.ambient_dim}, got points in R^{cloud.shape[1]}"
        )

    if model.kind in ("circle", "sphere"):
        norms = np.linalg.norm(cloud, axis=1)
        gap = np.abs(norms - model.radius)
        _reject_outside(model, gap)
        return cloud * (model.radius / norms)[:, None]

    assert model.tube_radius is not None
    planar = np.linalg.norm(cloud[:, :2], axis=1)
    if np.any(planar == 0):
        raise ProjectionError("points on the torus axis have no unique nearest point")
    core = np.zeros_like(cloud)
    core[:, :2] = cloud[:, :2] * (model.radius / planar)[:, None]
    normal = cloud - core
    lengths = np.linalg.norm(normal, axis=1)
    _reject_outside(model, np.abs(lengths - model.tube_radius))
    return core + normal * (model.tube_radius / lengths)[:, None]


def _reject_outside(model: ManifoldModel, gap: NDArray[np.float64]) -> None:
    worst = float(gap.max())
    if worst >= model.tau:
        raise ProjectionError(
            f"point at distance {worst:.6g} from {model.label()} is outside the reach tube "
            f"(tau={model.tau:g})"
        )


def project(model: ManifoldModel, point: ArrayLike) -> Point:
    """Nearest point of the manifold to ``point`` (requires distance < tau)."""
    return project_cloud(model, as_point(point)[None, :])[0]


def distance_to_manifold(model: ManifoldModel, points: ArrayLike) -> NDArray[np.float64]:
    cloud = as_cloud(points)
    if model.kind in ("circle", "sphere"):
        return np.abs(np.linalg.norm(cloud, axis=1) - model.radius)
    assert model.tube_radius is not None
    planar = np.linalg.norm(cloud[:, :2], axis=1)
    return np.abs(np.hypot(planar - model.radius, cloud[:, 2]) - model.tube_radius)


def sample_conditioned(
    model: ManifoldModel, noise: NoiseModel, count: int, seed: SeedLike
) -> PointCloud:
    """Draws from the uniform-tube measure: uniform base point plus open r-ball offset."""
    if not noise.r < NOISE_REACH_FACTOR * model.tau:
        raise DomainError(
            f"tube radius r={noise.r:g} violates r < (3 - sqrt 8) tau = "
            f"{NOISE_REACH_FACTOR * model.tau:.6g}"
        )
    rng = _rng(seed)
    base = sample_uniform(model, count, rng)
    return base + uniform_ball_offsets(rng, count, model.ambient_dim, noise.r)


def perturb_images(images: ArrayLike, d: float, seed: SeedLike) -> PointCloud:
    """Displace every image by an independent uniform offset of norm below ``d``."""
    if d <= 0:
        raise DomainError(f"evaluation noise bound must be positive, got {d}")
    cloud = as_cloud(images)
    rng = _rng(seed)
    return cloud + uniform_ball_offsets(rng, len(cloud), cloud.shape[1], d)
