"""Sample-size bounds, matching radii and hypothesis validation."""

from src.nerve_recon.bounds.functions import (
    beta,
    gamma,
    gamma_from,
    gamma_pm,
    rho_clean,
    rho_noisy,
    unit_ball_volume,
)
from src.nerve_recon.bounds.params import CleanParams, NoisyParams
from src.nerve_recon.bounds.validation import (
    LIPSCHITZ_FEASIBILITY_FACTOR,
    HypothesisCheck,
    HypothesisReport,
    validate_clean,
    validate_noisy,
    validate_noisy_sample,
    validate_sample,
)

__all__ = [
    "CleanParams",
    "HypothesisCheck",
    "HypothesisReport",
    "LIPSCHITZ_FEASIBILITY_FACTOR",
    "NoisyParams",
    "beta",
    "gamma",
    "gamma_from",
    "gamma_pm",
    "rho_clean",
    "rho_noisy",
    "unit_ball_volume",
    "validate_clean",
    "validate_noisy",
    "validate_noisy_sample",
    "validate_sample",
]
