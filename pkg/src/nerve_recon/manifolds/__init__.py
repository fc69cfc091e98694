from src.nerve_recon.manifolds.grids import manifold_grid
from src.nerve_recon.manifolds.models import (
    NOISE_REACH_FACTOR,
    ManifoldKind,
    ManifoldModel,
    NoiseModel,
)
from src.nerve_recon.manifolds.oracles import (
    covering_number,
    is_alpha_dense,
    mass_profile,
    omega_lower_bound,
    with_estimated_omega,
)
from src.nerve_recon.manifolds.sampling import (
    SeedLike,
    distance_to_manifold,
    perturb_images,
    project,
    project_cloud,
    sample_conditioned,
    sample_uniform,
    uniform_ball_offsets,
)

__all__ = [
    "NOISE_REACH_FACTOR",
    "ManifoldKind",
    "ManifoldModel",
    "NoiseModel",
    "SeedLike",
    "covering_number",
    "distance_to_manifold",
    "is_alpha_dense",
    "manifold_grid",
    "mass_profile",
    "omega_lower_bound",
    "perturb_images",
    "project",
    "project_cloud",
    "sample_conditioned",
    "sample_uniform",
    "uniform_ball_offsets",
    "with_estimated_omega",
]
