"""Exact minimum enclosing balls and the Čech intersection test.

The open ε-balls around a set of centers share a point exactly when the smallest ball
enclosing the centers has radius below ε, so simplex membership in a Čech nerve reduces
to one minimum-enclosing-ball computation.
"""

import hashlib
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.typing import ArrayLike

from src.nerve_recon.errors import DomainError, EmptyInputError
from src.nerve_recon.geometry.metric import Point, PointCloud, as_cloud

CONTAINMENT_TOL = 1e-9


@dataclass(frozen=True)
class EnclosingBall:
    """Smallest ball around a point set; ``support`` indexes the points on its boundary."""

    center: Point
    radius: float
    support: tuple[int, ...]

    def contains(self, point: ArrayLike, tol: float = CONTAINMENT_TOL) -> bool:
        return bool(np.linalg.norm(np.asarray(point, dtype=float) - self.center) <= self.radius + tol)


def circumscribed_ball(points: PointCloud, indices: Sequence[int]) -> tuple[Point, float]:
    """Smallest ball having every indexed point on its boundary.

    The center lies in the affine hull of the points; affinely dependent input falls
    back to the least-squares center.
    """
    anchor = points[indices[0]]
    if len(indices) == 1:
        return anchor.copy(), 0.0

    spans = points[list(indices[1:])] - anchor
    gram = spans @ spans.T
    rhs = 0.5 * np.einsum("ij,ij->i", spans, spans)
    try:
        coeffs = np.linalg.solve(gram, rhs)
    except np.linalg.LinAlgError:
        coeffs = np.linalg.lstsq(gram, rhs, rcond=None)[0]
    offset = coeffs @ spans
    radius = max(float(np.linalg.norm(points[i] - anchor - offset)) for i in indices)
    return anchor + offset, radius


def _shuffle_seed(cloud: PointCloud) -> int:
    digest = hashlib.blake2b(np.ascontiguousarray(cloud).tobytes(), digest_size=8).digest()
    return int.from_bytes(digest, "little")


def min_enclosing_ball(points: ArrayLike | Sequence[ArrayLike]) -> EnclosingBall:
    """Unique smallest ball containing all points (move-to-front Welzl recursion).

    The processing order is a permutation seeded from the coordinates themselves, so the
    result is deterministic for a given input order.
    """
    if isinstance(points, (list, tuple)) and len(points) == 0:
        raise EmptyInputError("min_enclosing_ball needs at least one point")
    cloud = as_cloud(points)
    dim = cloud.shape[1]
    scale = max(1.0, float(np.abs(cloud).max()))
    tol = CONTAINMENT_TOL * scale

    if len(cloud) == 1:
        return EnclosingBall(center=cloud[0].copy(), radius=0.0, support=(0,))

    order = list(np.random.default_rng(_shuffle_seed(cloud)).permutation(len(cloud)))

    def outside(index: int, center: Point | None, radius: float) -> bool:
        if center is None:
            return True
        return bool(np.linalg.norm(cloud[index] - center) > radius + tol)

    def move_to_front(end: int, boundary: list[int]) -> tuple[Point | None, float, tuple[int, ...]]:
        if boundary:
            center, radius = circumscribed_ball(cloud, boundary)
            ball: tuple[Point | None, float, tuple[int, ...]] = (center, radius, tuple(boundary))
        else:
            ball = (None, -1.0, ())
        if len(boundary) == dim + 1:
            return ball

        position = 0
        while position < end:
            index = order[position]
            if outside(index, ball[0], ball[1]):
                ball = move_to_front(position, boundary + [index])
                order.pop(position)
                order.insert(0, index)
            position += 1
        return ball

    center, radius, support = move_to_front(len(order), [])
    assert center is not None
    return EnclosingBall(center=center, radius=radius, support=tuple(sorted(support)))


def cech_face_test(centers: ArrayLike | Sequence[ArrayLike], epsilon: float) -> bool:
    """True iff the open ``epsilon``-balls around ``centers`` have a common point."""
    if epsilon <= 0:
        raise DomainError(f"epsilon must be positive, got {epsilon}")
    return min_enclosing_ball(centers).radius < epsilon
