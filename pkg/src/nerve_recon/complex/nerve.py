"""Čech nerve construction and the structural checks on complexes and maps.

The nerve is grown by clique expansion: the 1-skeleton comes from ``proximity_pairs``
at ``2 epsilon`` and each candidate coface must pass the exact ball test. A simplex keeps
a witness point lying strictly inside every ball of its vertices; a new vertex whose
ball also contains the witness is accepted without a fresh enclosing-ball solve.
"""

import logging
from typing import Sequence

import numpy as np
from numpy.typing import ArrayLike

from src.nerve_recon.complex.models import Simplex, SimplicialComplex, SimplicialMap
from src.nerve_recon.errors import DomainError, SimplexLimitExceeded
from src.nerve_recon.geometry import (
    Point,
    PointCloud,
    as_cloud,
    cech_face_test,
    min_enclosing_ball,
    proximity_pairs,
)
from src.nerve_recon.utils.settings import load_settings

logger = logging.getLogger("src.nerve_recon.complex")


def _strict_witness(cloud: PointCloud, simplex: Sequence[int], center: Point, epsilon: float) -> Point | None:
    reach = np.linalg.norm(cloud[list(simplex)] - center, axis=1).max()
    return center if reach < epsilon else None


def build_cech_nerve(
    points: ArrayLike,
    epsilon: float,
    d_max: int,
    simplex_limit: int | None = None,
) -> SimplicialComplex:
    """Čech nerve of the open ``epsilon``-balls around ``points``, truncated at ``d_max``."""
    if epsilon <= 0:
        raise DomainError(f"epsilon must be positive, got {epsilon}")
    if d_max < 1:
        raise DomainError(f"d_max must be at least 1, got {d_max}")
    cloud = as_cloud(points)
    limit = load_settings().simplex_limit if simplex_limit is None else simplex_limit
    count = len(cloud)
    if count > limit:
        raise SimplexLimitExceeded(limit, 0)

    pairs = proximity_pairs(cloud, 2.0 * epsilon) if count > 1 else []
    upper: list[set[int]] = [set() for _ in range(count)]
    for i, j in pairs:
        upper[i].add(j)
    total = count + len(pairs)
    if total > limit:
        raise SimplexLimitExceeded(limit, 1)

    levels: list[list[Simplex]] = [[(i,) for i in range(count)], list(pairs)]
    # simplex -> (common upper neighbours, witness)
    frontier: dict[Simplex, tuple[set[int], Point | None]] = {}
    for i, j in pairs:
        midpoint = 0.5 * (cloud[i] + cloud[j])
        frontier[(i, j)] = (upper[i] & upper[j], _strict_witness(cloud, (i, j), midpoint, epsilon))

    for dim in range(2, d_max + 1):
        level: list[Simplex] = []
        next_frontier: dict[Simplex, tuple[set[int], Point | None]] = {}
        for simplex in levels[-1]:
            common, witness = frontier[simplex]
            for vertex in sorted(common):
                candidate = simplex + (vertex,)
                if witness is not None and np.linalg.norm(cloud[vertex] - witness) < epsilon:
                    new_witness: Point | None = witness
                else:
                    ball = min_enclosing_ball(cloud[list(candidate)])
                    if not ball.radius < epsilon:
                        continue
                    new_witness = _strict_witness(cloud, candidate, ball.center, epsilon)
                level.append(candidate)
                if dim < d_max:
                    next_frontier[candidate] = (common & upper[vertex], new_witness)
        total += len(level)
        if total > limit:
            raise SimplexLimitExceeded(limit, dim)
        levels.append(level)
        frontier = next_frontier
        if not level:
            levels.extend([] for _ in range(d_max - dim))
            break

    nerve = SimplicialComplex(simplices=levels, d_max=d_max, points=cloud, epsilon=epsilon)
    logger.debug(
        "nerve_built eps=%.4f points=%d f_vector=%s", epsilon, count, nerve.f_vector()
    )
    return nerve


def verify_complex(complex_: SimplicialComplex) -> bool:
    """True iff the complex is downward closed and, for nerves, every simplex passes the ball test."""
    vertices = complex_.simplices[0]
    if complex_.points is not None and vertices != [(i,) for i in range(len(complex_.points))]:
        logger.debug("verify_complex missing sample vertices")
        return False
    for dim, level in enumerate(complex_.simplices):
        for simplex in level:
            if len(simplex) != dim + 1 or any(a >= b for a, b in zip(simplex, simplex[1:])):
                logger.debug("verify_complex malformed simplex=%s", simplex)
                return False
            if dim == 0:
                continue
            for drop in range(dim + 1):
                face = simplex[:drop] + simplex[drop + 1 :]
                if face not in complex_:
                    logger.debug("verify_complex missing face=%s of simplex=%s", face, simplex)
                    return False
            if complex_.points is not None and complex_.epsilon is not None:
                if not cech_face_test(complex_.points[list(simplex)], complex_.epsilon):
                    logger.debug("verify_complex ball test failed simplex=%s", simplex)
                    return False
    return True


def verify_simplicial(
    phi: SimplicialMap, source: SimplicialComplex, target: SimplicialComplex
) -> bool:
    """True iff ``phi`` is total on the source vertices and sends every simplex to a target simplex."""
    if len(phi) != source.vertex_count:
        logger.debug(
            "verify_simplicial assignment_size=%d source_vertices=%d", len(phi), source.vertex_count
        )
        return False
    if any(v < 0 or v >= target.vertex_count for v in phi.assignment):
        return False
    for simplex in source.iter_simplices():
        image = phi.image(simplex)
        if not target.has_simplex(image):
            logger.debug("verify_simplicial simplex=%s image=%s not in target", simplex, image)
            return False
    return True
