"""The Δ-correspondence between source images and target samples."""

import logging
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from src.nerve_recon.complex import Simplex, SimplicialComplex, as_simplex
from src.nerve_recon.errors import DimensionMismatchError, DomainError
from src.nerve_recon.geometry import as_cloud

logger = logging.getLogger("src.nerve_recon.reconstruct")

# Rows of the distance matrix evaluated per block.
_BLOCK_ROWS = 512


@dataclass(frozen=True)
class Correspondence:
    """``sets[i]``: sorted target indices strictly within ``rho`` of image ``i``."""

    sets: tuple[tuple[int, ...], ...]
    rho: float

    def __len__(self) -> int:
        return len(self.sets)

    def empty_indices(self) -> list[int]:
        return [i for i, members in enumerate(self.sets) if not members]

    def union(self, vertices: Simplex) -> Simplex:
        return as_simplex(j for v in vertices for j in self.sets[v])


def delta_sets(images: ArrayLike, targets: ArrayLike, rho: float) -> Correspondence:
    """Exact strict-ball membership sets; empty sets are kept and reported later."""
    if rho <= 0:
        raise DomainError(f"rho must be positive, got {rho}")
    source = as_cloud(images)
    target = as_cloud(targets)
    if source.shape[1] != target.shape[1]:
        raise DimensionMismatchError(
            f"images live in R^{source.shape[1]}, targets in R^{target.shape[1]}"
        )

    sets: list[tuple[int, ...]] = []
    for start in range(0, len(source), _BLOCK_ROWS):
        block = source[start : start + _BLOCK_ROWS]
        distances = np.linalg.norm(block[:, None, :] - target[None, :, :], axis=2)
        sets.extend(tuple(int(j) for j in np.flatnonzero(row < rho)) for row in distances)

    correspondence = Correspondence(sets=tuple(sets), rho=rho)
    logger.debug(
        "delta_sets images=%d targets=%d rho=%.4f empty=%d",
        len(source),
        len(target),
        rho,
        len(correspondence.empty_indices()),
    )
    return correspondence


def check_nonempty(correspondence: Correspondence) -> tuple[bool, list[int]]:
    """Whether every Δ set is non-empty, plus the offending source indices."""
    empty = correspondence.empty_indices()
    if empty:
        logger.info("empty_delta count=%d first=%d", len(empty), empty[0])
    return not empty, empty


def check_delta_simplices(
    source: SimplicialComplex, target: SimplicialComplex, correspondence: Correspondence
) -> tuple[bool, list[Simplex]]:
    """For every source simplex the union of its vertices' Δ sets must span a target simplex."""
    if len(correspondence) != source.vertex_count:
        raise DimensionMismatchError(
            f"correspondence covers {len(correspondence)} vertices, complex has {source.vertex_count}"
        )
    offending: list[Simplex] = []
    for simplex in source.iter_simplices():
        spanned = correspondence.union(simplex)
        if not spanned or not target.has_simplex(spanned):
            offending.append(simplex)
    if offending:
        logger.info("delta_simplex_failures count=%d first=%s", len(offending), offending[0])
    return not offending, offending
