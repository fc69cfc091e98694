"""Integer simplicial homology and induced maps."""

from src.nerve_recon.homology.homology import HomologyBasis, HomologySummary, homology
from src.nerve_recon.homology.induced import (
    InducedMap,
    chain_image,
    h1_multiplier,
    induced_invariant_factors,
    induced_map,
    induced_maps,
)
from src.nerve_recon.homology.matrices import IntegerMatrix, boundary_matrix, matmul
from src.nerve_recon.homology.reduction import ReducedComplex, reduce_chain_complex
from src.nerve_recon.homology.snf import SNFResult, invariant_factors, smith_normal_form

__all__ = [
    "HomologyBasis",
    "HomologySummary",
    "InducedMap",
    "IntegerMatrix",
    "ReducedComplex",
    "SNFResult",
    "boundary_matrix",
    "chain_image",
    "h1_multiplier",
    "homology",
    "induced_invariant_factors",
    "induced_map",
    "induced_maps",
    "invariant_factors",
    "matmul",
    "reduce_chain_complex",
    "smith_normal_form",
]
