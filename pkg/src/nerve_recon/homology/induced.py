"""Matrices of the maps induced on homology by simplicial maps.

Matrices act on the free quotient of each homology group: column ``j`` holds the free
coordinates, in the target's generator basis, of the image of the source's ``j``-th free
generator.
"""

import logging

from pydantic import BaseModel, ConfigDict, Field

from src.nerve_recon.complex import SimplicialComplex, SimplicialMap, verify_simplicial
from src.nerve_recon.errors import DomainError, NonSimplicialMapError
from src.nerve_recon.homology.homology import HomologySummary, homology
from src.nerve_recon.homology.reduction import Chain
from src.nerve_recon.homology.snf import smith_normal_form

logger = logging.getLogger("src.nerve_recon.homology")


class InducedMap(BaseModel):
    """Integer matrix of ``phi_*`` in one dimension (rows: target generators)."""

    model_config = ConfigDict(extra="forbid")

    dim: int
    matrix: list[list[int]] = Field(description="Row-major, target rank x source rank")
    source_betti: int
    target_betti: int
    source_torsion: list[int] = Field(default_factory=list)
    target_torsion: list[int] = Field(default_factory=list)

    @property
    def shape(self) -> tuple[int, int]:
        return self.target_betti, self.source_betti

    def column(self, j: int) -> list[int]:
        return [row[j] for row in self.matrix]


def _permutation_sign(values: list[int]) -> int:
    inversions = sum(
        1 for i in range(len(values)) for j in range(i + 1, len(values)) if values[i] > values[j]
    )
    return -1 if inversions % 2 else 1


def chain_image(
    phi: SimplicialMap, source: SimplicialComplex, target: SimplicialComplex, dim: int, chain: Chain
) -> Chain:
    """Push a ``dim``-chain through ``phi``; collapsed simplices contribute zero."""
    out: Chain = {}
    for cell, value in chain.items():
        images = [phi.assignment[v] for v in source.simplices[dim][cell]]
        if len(set(images)) < len(images):
            continue
        simplex = tuple(sorted(images))
        index = target.index_of(simplex)
        if index is None:
            raise NonSimplicialMapError(f"image {simplex} of {source.simplices[dim][cell]} is not in the target")
        updated = out.get(index, 0) + _permutation_sign(images) * value
        if updated:
            out[index] = updated
        else:
            out.pop(index, None)
    return out


def induced_map(
    phi: SimplicialMap,
    source: SimplicialComplex,
    target: SimplicialComplex,
    dim: int,
    source_homology: HomologySummary | None = None,
    target_homology: HomologySummary | None = None,
) -> InducedMap:
    """Matrix of ``phi_*`` on the free part of ``H_dim``.

    Pass precomputed summaries to pin the generator bases; otherwise both are computed
    up to ``dim``.
    """
    if not verify_simplicial(phi, source, target):
        raise NonSimplicialMapError("vertex assignment does not send simplices to simplices")
    if source_homology is None:
        source_homology = homology(source, dim)
    if target_homology is None:
        target_homology = homology(target, dim)
    if dim > source_homology.up_to or dim > target_homology.up_to:
        raise DomainError(f"homology bases do not reach dimension {dim}")

    source_basis = source_homology.basis
    target_basis = target_homology.basis
    columns = [
        target_basis.free_class(dim, chain_image(phi, source, target, dim, generator))
        for generator in source_basis.free_generator_chains(dim)
    ]
    rows = target_homology.betti[dim]
    matrix = [[column[i] for column in columns] for i in range(rows)]
    logger.debug("induced_map dim=%d matrix=%s", dim, matrix)
    return InducedMap(
        dim=dim,
        matrix=matrix,
        source_betti=source_homology.betti[dim],
        target_betti=rows,
        source_torsion=list(source_homology.torsion[dim]),
        target_torsion=list(target_homology.torsion[dim]),
    )


def induced_maps(
    phi: SimplicialMap,
    source: SimplicialComplex,
    target: SimplicialComplex,
    up_to: int,
    source_homology: HomologySummary | None = None,
    target_homology: HomologySummary | None = None,
) -> list[InducedMap]:
    """Induced matrices in every dimension ``0..up_to`` sharing one pair of bases."""
    source_homology = source_homology or homology(source, up_to)
    target_homology = target_homology or homology(target, up_to)
    return [
        induced_map(phi, source, target, dim, source_homology, target_homology)
        for dim in range(up_to + 1)
    ]


def h1_multiplier(induced: InducedMap) -> tuple[int, bool]:
    """Magnitude of the 1x1 matrix on ``H_1``; the sign is always reported ambiguous."""
    if induced.dim != 1:
        raise DomainError(f"multiplier is defined on H_1, got dimension {induced.dim}")
    if induced.source_torsion or induced.target_torsion:
        raise DomainError("H_1 has torsion")
    if induced.source_betti != 1 or induced.target_betti != 1:
        raise DomainError(
            f"H_1 ranks must both be 1, got {induced.source_betti} -> {induced.target_betti}"
        )
    return abs(induced.matrix[0][0]), True


def induced_invariant_factors(induced: InducedMap) -> list[int]:
    """Basis-free summary of an induced matrix: its nonzero Smith invariants."""
    if not induced.matrix or not induced.matrix[0]:
        return []
    return smith_normal_form(induced.matrix, track_columns=False).invariant_factors
