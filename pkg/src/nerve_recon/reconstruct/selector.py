"""Selectors ``h`` and the simplicial reconstruction ``phi_h``."""

import logging
from dataclasses import dataclass
from typing import Literal

import numpy as np
from numpy.typing import ArrayLike

from src.nerve_recon.complex import SimplicialComplex, SimplicialMap, verify_simplicial
from src.nerve_recon.errors import DimensionMismatchError, DomainError, HypothesisError
from src.nerve_recon.geometry import as_cloud
from src.nerve_recon.homology import HomologySummary, InducedMap, induced_maps
from src.nerve_recon.reconstruct.correspondence import Correspondence

logger = logging.getLogger("src.nerve_recon.reconstruct")

SelectorPolicy = Literal["nearest", "first"]


@dataclass(frozen=True)
class Selector:
    assignment: tuple[int, ...]
    policy: SelectorPolicy


def choose_selector(
    correspondence: Correspondence,
    images: ArrayLike,
    targets: ArrayLike,
    policy: SelectorPolicy = "nearest",
) -> Selector:
    """Pick ``h(i)`` from each Δ set: closest target (ties to smaller index) or smallest index."""
    empty = correspondence.empty_indices()
    if empty:
        raise HypothesisError(f"{len(empty)} Δ sets are empty (first at source index {empty[0]})")
    if policy not in ("nearest", "first"):
        raise DomainError(f"unknown selector policy {policy!r}")

    if policy == "first":
        return Selector(assignment=tuple(members[0] for members in correspondence.sets), policy=policy)

    source = as_cloud(images)
    target = as_cloud(targets)
    chosen = []
    for point, members in zip(source, correspondence.sets):
        candidates = np.asarray(members)
        distances = np.linalg.norm(target[candidates] - point, axis=1)
        chosen.append(int(candidates[int(np.argmin(distances))]))
    return Selector(assignment=tuple(chosen), policy=policy)


def build_reconstruction(
    source: SimplicialComplex, target: SimplicialComplex, selector: Selector
) -> SimplicialMap:
    """Vertex map of ``phi_h``; simpliciality is left to ``verify_simplicial``."""
    if len(selector.assignment) != source.vertex_count:
        raise DimensionMismatchError(
            f"selector covers {len(selector.assignment)} vertices, complex has {source.vertex_count}"
        )
    if any(not 0 <= v < target.vertex_count for v in selector.assignment):
        raise DimensionMismatchError("selector points outside the target vertex set")
    return SimplicialMap(assignment=selector.assignment)


@dataclass(frozen=True)
class SelectorComparison:
    identical: bool
    nearest: list[InducedMap]
    first: list[InducedMap]


def compare_selectors(
    source: SimplicialComplex,
    target: SimplicialComplex,
    correspondence: Correspondence,
    images: ArrayLike,
    targets: ArrayLike,
    up_to: int,
    source_homology: HomologySummary,
    target_homology: HomologySummary,
) -> SelectorComparison | None:
    """Induced matrices of ``phi_h`` under both policies in shared bases.

    Returns ``None`` when either reconstruction fails to be simplicial.
    """
    maps: dict[str, list[InducedMap]] = {}
    policies: tuple[SelectorPolicy, ...] = ("nearest", "first")
    for policy in policies:
        selector = choose_selector(correspondence, images, targets, policy)
        phi = build_reconstruction(source, target, selector)
        if not verify_simplicial(phi, source, target):
            logger.info("selector_not_simplicial policy=%s", policy)
            return None
        maps[policy] = induced_maps(phi, source, target, up_to, source_homology, target_homology)
    identical = all(a.matrix == b.matrix for a, b in zip(maps["nearest"], maps["first"]))
    if not identical:
        logger.warning("selector_mismatch nearest=%s first=%s", maps["nearest"], maps["first"])
    return SelectorComparison(identical=identical, nearest=maps["nearest"], first=maps["first"])
