"""Deterministic discretisations whose covering radius on the manifold is at most ``grid_step``."""

import math

import numpy as np

from src.nerve_recon.errors import DomainError
from src.nerve_recon.geometry import PointCloud
from src.nerve_recon.manifolds.models import ManifoldModel

_GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


def manifold_grid(model: ManifoldModel, grid_step: float) -> PointCloud:
    """Grid on the manifold: every manifold point lies within ``grid_step`` of a grid point.

    circle: uniform angles; sphere: Fibonacci lattice with ``grid_step**2 / 2`` area per
    point; torus: uniform grid in both angles.
    """
    if grid_step <= 0:
        raise DomainError(f"grid_step must be positive, got {grid_step}")

    if model.kind == "circle":
        count = max(3, math.ceil(2.0 * math.pi * model.radius / grid_step))
        theta = np.arange(count) * (2.0 * math.pi / count)
        return model.radius * np.column_stack((np.cos(theta), np.sin(theta)))

    if model.kind == "sphere":
        count = max(4, math.ceil(8.0 * math.pi * model.radius**2 / grid_step**2))
        index = np.arange(count, dtype=float)
        z = 1.0 - (2.0 * index + 1.0) / count
        ring = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
        theta = index * _GOLDEN_ANGLE
        return model.radius * np.column_stack((ring * np.cos(theta), ring * np.sin(theta), z))

    assert model.tube_radius is not None
    around = max(3, math.ceil(2.0 * math.pi * (model.radius + model.tube_radius) / grid_step))
    across = max(3, math.ceil(2.0 * math.pi * model.tube_radius / grid_step))
    theta, phi = np.meshgrid(
        np.arange(around) * (2.0 * math.pi / around),
        np.arange(across) * (2.0 * math.pi / across),
        indexing="ij",
    )
    theta, phi = theta.ravel(), phi.ravel()
    ring = model.radius + model.tube_radius * np.cos(phi)
    return np.column_stack(
        (ring * np.cos(theta), ring * np.sin(theta), model.tube_radius * np.sin(phi))
    )
