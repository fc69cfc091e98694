"""Euclidean metric primitives on points and point clouds.

Points are 1-D float arrays; a point cloud is a 2-D ``(count, dim)`` float array.
"""

import logging
from typing import Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.spatial import cKDTree

from src.nerve_recon.errors import DimensionMismatchError, DomainError, EmptyInputError

logger = logging.getLogger("src.nerve_recon.geometry")

Point = NDArray[np.float64]
PointCloud = NDArray[np.float64]

# Relative slack for the KD-tree prefilter; the strict test is redone exactly.
_QUERY_SLACK = 1e-9


def as_point(value: ArrayLike) -> Point:
    point = np.asarray(value, dtype=float)
    if point.ndim != 1:
        raise DimensionMismatchError(f"a point must be one-dimensional, got shape {point.shape}")
    if not np.all(np.isfinite(point)):
        raise DomainError("point coordinates must be finite")
    return point


def as_cloud(values: ArrayLike | Sequence[ArrayLike]) -> PointCloud:
    """Coerce a sequence of points to a ``(count, dim)`` cloud, rejecting ragged input."""
    try:
        cloud = np.asarray(values, dtype=float)
    except ValueError as exc:
        raise DimensionMismatchError(f"points have inconsistent dimensions: {exc}") from exc
    if cloud.size == 0:
        raise EmptyInputError("point cloud is empty")
    if cloud.ndim == 1:
        cloud = cloud.reshape(1, -1)
    if cloud.ndim != 2:
        raise DimensionMismatchError(f"a point cloud must be two-dimensional, got {cloud.shape}")
    if not np.all(np.isfinite(cloud)):
        raise DomainError("point coordinates must be finite")
    return cloud


def distance(p: ArrayLike, q: ArrayLike) -> float:
    """Euclidean distance between two points of the same ambient dimension."""
    a, b = as_point(p), as_point(q)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    return float(np.linalg.norm(a - b))


def pairwise_distances(a: PointCloud, b: PointCloud) -> NDArray[np.float64]:
    """Dense ``(len(a), len(b))`` distance matrix."""
    if a.shape[1] != b.shape[1]:
        raise DimensionMismatchError(f"dimension mismatch: {a.shape[1]} vs {b.shape[1]}")
    return np.linalg.norm(a[:, None, :] - b[None, :, :], axis=2)


def proximity_pairs(points: ArrayLike, threshold: float) -> list[tuple[int, int]]:
    """All index pairs ``(i, j)``, ``i < j``, whose distance is strictly below ``threshold``.

    A KD-tree finds candidates within a slightly inflated radius; each candidate is then
    re-tested with the same norm as :func:`distance`, so the result equals the
    brute-force double loop.
    """
    if threshold <= 0:
        raise DomainError(f"threshold must be positive, got {threshold}")
    cloud = as_cloud(points)
    if len(cloud) < 2:
        return []

    tree = cKDTree(cloud)
    candidates = tree.query_pairs(threshold * (1.0 + _QUERY_SLACK), output_type="ndarray")
    if len(candidates) == 0:
        return []

    lengths = np.linalg.norm(cloud[candidates[:, 0]] - cloud[candidates[:, 1]], axis=1)
    kept = candidates[lengths < threshold]
    kept.sort(axis=1)
    order = np.lexsort((kept[:, 1], kept[:, 0]))
    pairs = [(int(i), int(j)) for i, j in kept[order]]

    logger.debug("proximity_pairs points=%d threshold=%.6f pairs=%d", len(cloud), threshold, len(pairs))
    return pairs
