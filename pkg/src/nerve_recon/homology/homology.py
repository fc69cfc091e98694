"""Integer homology of simplicial complexes with explicit generators.

The chain complex is first shrunk with ``reduction``; Smith normal forms of the two
residual boundaries around each dimension then give the Betti numbers, the torsion
coefficients, a generator basis and a coordinate map for arbitrary cycles.
"""

import logging
from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr

from src.nerve_recon.complex import SimplicialComplex
from src.nerve_recon.errors import DomainError, InconsistentSystemError
from src.nerve_recon.homology.matrices import IntArray, chain_from_dict, matmul
from src.nerve_recon.homology.reduction import Chain, ReducedComplex, reduce_chain_complex
from src.nerve_recon.homology.snf import SNFResult, smith_normal_form

logger = logging.getLogger("src.nerve_recon.homology")


@dataclass
class DimensionBasis:
    """Coordinates for residual ``dim``-cycles.

    ``boundary_rank`` is the rank of the outgoing boundary and ``boundary_snf`` the
    row-tracked SNF of the incoming boundary written in cycle coordinates.
    """

    dim: int
    cells: list[int]
    cycle_coords: IntArray  # V_A^{-1}: chain -> (boundary part, cycle part)
    boundary_rank: int
    boundary_snf: SNFResult
    generators: IntArray  # columns: residual chains of the adapted cycle basis

    @property
    def cycle_rank(self) -> int:
        return len(self.cells) - self.boundary_rank

    @property
    def image_rank(self) -> int:
        return self.boundary_snf.rank

    @property
    def factors(self) -> list[int]:
        return self.boundary_snf.invariant_factors

    @property
    def betti(self) -> int:
        return self.cycle_rank - self.image_rank

    @property
    def torsion(self) -> list[int]:
        return [f for f in self.factors if f > 1]

    def coordinates(self, chain: Chain) -> list[int]:
        """Coordinates of a residual cycle in the adapted basis (torsion part first)."""
        dense = np.array(chain_from_dict(chain, self.cells), dtype=object).reshape(-1, 1)
        split = matmul(self.cycle_coords, dense)[:, 0]
        if any(value != 0 for value in split[: self.boundary_rank]):
            raise InconsistentSystemError(f"chain is not a cycle in dimension {self.dim}")
        cycle_part = np.array(list(split[self.boundary_rank :]), dtype=object).reshape(-1, 1)
        return [int(v) for v in matmul(self.boundary_snf.u, cycle_part)[:, 0]]

    def free_coordinates(self, chain: Chain) -> list[int]:
        return self.coordinates(chain)[self.image_rank :]


def _dimension_basis(reduced: ReducedComplex, dim: int) -> DimensionBasis:
    outgoing = reduced.boundary_array(dim)
    # residual top cells are mostly cycles of the truncated complex; only the image matters
    incoming = reduced.boundary_array(dim + 1, nonzero_only=True)
    out_snf = smith_normal_form(outgoing)
    assert out_snf.v is not None and out_snf.v_inv is not None
    rank = out_snf.rank
    kernel = out_snf.v[:, rank:]
    split = matmul(out_snf.v_inv, incoming)
    in_cycle_coords = split[rank:, :]
    if any(value != 0 for value in split[:rank, :].flat):
        raise InconsistentSystemError(f"boundary of dimension {dim + 1} is not a cycle")
    in_snf = smith_normal_form(in_cycle_coords, track_columns=False)
    logger.debug(
        "dimension_basis dim=%d cells=%d boundary_rank=%d image_columns=%d",
        dim,
        len(reduced.alive[dim]),
        rank,
        incoming.shape[1],
    )
    return DimensionBasis(
        dim=dim,
        cells=reduced.basis(dim),
        cycle_coords=out_snf.v_inv,
        boundary_rank=rank,
        boundary_snf=in_snf,
        generators=matmul(kernel, in_snf.u_inv),
    )


@dataclass
class HomologyBasis:
    """Reduced chain complex plus per-dimension coordinate systems."""

    complex_: SimplicialComplex
    reduced: ReducedComplex
    dims: list[DimensionBasis]

    def free_generator_chains(self, dim: int) -> list[Chain]:
        """Free generators lifted to chains on the original complex."""
        basis = self.dims[dim]
        chains = []
        for column in range(basis.image_rank, basis.cycle_rank):
            residual = {
                cell: int(basis.generators[row, column])
                for row, cell in enumerate(basis.cells)
                if basis.generators[row, column] != 0
            }
            chains.append(self.reduced.lift(dim, residual))
        return chains

    def free_class(self, dim: int, chain: Chain) -> list[int]:
        """Free coordinates of the homology class of an original ``dim``-cycle."""
        return self.dims[dim].free_coordinates(self.reduced.project(dim, chain))


def _chain_labels(complex_: SimplicialComplex, dim: int, chain: Chain) -> dict[str, int]:
    return {
        " ".join(str(v) for v in complex_.simplices[dim][cell]): value
        for cell, value in sorted(chain.items())
    }


class HomologySummary(BaseModel):
    """Betti numbers, torsion and generator chains of dimensions ``0..up_to``."""

    model_config = ConfigDict(extra="forbid")

    up_to: int
    betti: list[int] = Field(description="Free rank per dimension")
    torsion: list[list[int]] = Field(description="Invariant factors > 1 per dimension")
    generators: list[list[dict[str, int]]] = Field(
        default_factory=list,
        description="Free generator chains per dimension, keyed by space-joined simplex",
    )
    _basis: HomologyBasis | None = PrivateAttr(default=None)

    @property
    def basis(self) -> HomologyBasis:
        if self._basis is None:
            raise DomainError("homology basis is not attached to this summary")
        return self._basis

    @property
    def torsion_free(self) -> bool:
        return all(not factors for factors in self.torsion)


def homology(complex_: SimplicialComplex, up_to: int) -> HomologySummary:
    """Integer homology in dimensions ``0..up_to``; needs simplices up to ``up_to + 1``."""
    if up_to < 0:
        raise DomainError(f"up_to must be non-negative, got {up_to}")
    if up_to > complex_.d_max - 1:
        raise DomainError(
            f"homology up to dimension {up_to} needs d_max >= {up_to + 1}, got {complex_.d_max}"
        )
    reduced = reduce_chain_complex(complex_, up_to + 1)
    dims = [_dimension_basis(reduced, dim) for dim in range(up_to + 1)]
    basis = HomologyBasis(complex_=complex_, reduced=reduced, dims=dims)

    summary = HomologySummary(
        up_to=up_to,
        betti=[d.betti for d in dims],
        torsion=[d.torsion for d in dims],
        generators=[
            [_chain_labels(complex_, dim, chain) for chain in basis.free_generator_chains(dim)]
            for dim in range(up_to + 1)
        ],
    )
    summary._basis = basis
    logger.debug("homology betti=%s torsion=%s", summary.betti, summary.torsion)
    return summary
