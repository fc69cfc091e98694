"""Čech nerves, abstract simplicial complexes and simplicial maps."""

from src.nerve_recon.complex.models import Simplex, SimplicialComplex, SimplicialMap, as_simplex
from src.nerve_recon.complex.nerve import build_cech_nerve, verify_complex, verify_simplicial

__all__ = [
    "Simplex",
    "SimplicialComplex",
    "SimplicialMap",
    "as_simplex",
    "build_cech_nerve",
    "verify_complex",
    "verify_simplicial",
]
