"""Δ-correspondence, selectors and the simplicial reconstruction of a map."""

from src.nerve_recon.reconstruct.carrier import CarrierReport, PointMap, carrier_check
from src.nerve_recon.reconstruct.correspondence import (
    Correspondence,
    check_delta_simplices,
    check_nonempty,
    delta_sets,
)
from src.nerve_recon.reconstruct.selector import (
    Selector,
    SelectorComparison,
    SelectorPolicy,
    build_reconstruction,
    choose_selector,
    compare_selectors,
)

__all__ = [
    "CarrierReport",
    "Correspondence",
    "PointMap",
    "Selector",
    "SelectorComparison",
    "SelectorPolicy",
    "build_reconstruction",
    "carrier_check",
    "check_delta_simplices",
    "check_nonempty",
    "choose_selector",
    "compare_selectors",
    "delta_sets",
]
