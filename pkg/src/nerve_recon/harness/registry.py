"""Registry of reference maps with known Lipschitz constants and induced homology.

Every map is defined on all ambient points off the relevant axis, so it can be applied
to projected samples directly.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Literal

import numpy as np
from numpy.typing import NDArray

from src.nerve_recon.errors import ConfigError
from src.nerve_recon.manifolds import ManifoldKind, ManifoldModel, SeedLike, sample_uniform

logger = logging.getLogger("src.nerve_recon.harness")

MapId = Literal["identity", "circle-degree-k", "constant", "torus-to-circle", "sphere-antipodal"]

AUDIT_REL_TOL = 1e-12


@dataclass(frozen=True)
class RegisteredMap:
    """A reference map ``f`` between two model manifolds and its ground truth."""

    map_id: MapId
    kappa: float
    apply: Callable[[NDArray[np.float64]], NDArray[np.float64]]
    expected_factors: dict[int, list[int]] = field(default_factory=dict)
    expected_multiplier: int | None = None


def _require(model: ManifoldModel, kinds: tuple[ManifoldKind, ...], role: str, map_id: str) -> None:
    if model.kind not in kinds:
        raise ConfigError(f"{map_id} needs a {' or '.join(kinds)} as {role}, got {model.kind}")


def _unit_factors(model: ManifoldModel, up_to: int) -> dict[int, list[int]]:
    return {d: [1] * b for d, b in enumerate(model.betti(up_to))}


def resolve_map(
    map_id: MapId, model_x: ManifoldModel, model_y: ManifoldModel, degree: int = 2
) -> RegisteredMap:
    """Instantiate a registry map for concrete source and target models."""
    up_to = model_x.intrinsic_dim
    scale = model_y.radius / model_x.radius

    if map_id == "identity":
        _require(model_x, ("circle", "sphere"), "source", map_id)
        if model_y.kind != model_x.kind:
            raise ConfigError(f"identity needs matching kinds, got {model_x.kind} -> {model_y.kind}")
        return RegisteredMap(
            map_id=map_id,
            kappa=scale,
            apply=lambda points: points * scale,
            expected_factors=_unit_factors(model_x, up_to),
            expected_multiplier=1 if model_x.kind == "circle" else None,
        )

    if map_id == "circle-degree-k":
        _require(model_x, ("circle",), "source", map_id)
        _require(model_y, ("circle",), "target", map_id)
        if degree < 1:
            raise ConfigError(f"degree must be at least 1, got {degree}")

        def wrap(points: NDArray[np.float64]) -> NDArray[np.float64]:
            angle = degree * np.arctan2(points[:, 1], points[:, 0])
            return model_y.radius * np.column_stack([np.cos(angle), np.sin(angle)])

        return RegisteredMap(
            map_id=map_id,
            kappa=degree * scale,
            apply=wrap,
            expected_factors={0: [1], 1: [degree]},
            expected_multiplier=degree,
        )

    if map_id == "constant":
        anchor = np.zeros(model_y.ambient_dim)
        anchor[0] = model_y.radius if model_y.kind != "torus" else model_y.radius + (model_y.tube_radius or 0.0)
        factors = {d: [] for d in range(up_to + 1)}
        factors[0] = [1]
        return RegisteredMap(
            map_id=map_id,
            kappa=0.0,
            apply=lambda points: np.tile(anchor, (len(points), 1)),
            expected_factors=factors,
            expected_multiplier=0 if model_x.kind == "circle" and model_y.kind == "circle" else None,
        )

    if map_id == "torus-to-circle":
        _require(model_x, ("torus",), "source", map_id)
        _require(model_y, ("circle",), "target", map_id)
        assert model_x.tube_radius is not None
        inner = model_x.radius - model_x.tube_radius

        def core_angle(points: NDArray[np.float64]) -> NDArray[np.float64]:
            planar = points[:, :2]
            return model_y.radius * planar / np.linalg.norm(planar, axis=1)[:, None]

        return RegisteredMap(
            map_id=map_id,
            kappa=model_y.radius / inner,
            apply=core_angle,
            expected_factors={0: [1], 1: [1]},
        )

    if map_id == "sphere-antipodal":
        _require(model_x, ("sphere",), "source", map_id)
        _require(model_y, ("sphere",), "target", map_id)
        return RegisteredMap(
            map_id=map_id,
            kappa=scale,
            apply=lambda points: -points * scale,
            expected_factors={0: [1], 1: [], 2: [1]},
        )

    raise ConfigError(f"unknown map id {map_id!r}")


@dataclass(frozen=True)
class LipschitzAudit:
    pairs: int
    violations: int
    worst_ratio: float


def audit_lipschitz(
    rmap: RegisteredMap, model_x: ManifoldModel, pairs: int = 100_000, seed: SeedLike = 0
) -> LipschitzAudit:
    """Count sampled pairs with ``|f(x) - f(x')| > kappa |x - x'|``."""
    rng = np.random.default_rng(seed)
    left = sample_uniform(model_x, pairs, rng)
    right = sample_uniform(model_x, pairs, rng)
    spans = np.linalg.norm(left - right, axis=1)
    images = np.linalg.norm(rmap.apply(left) - rmap.apply(right), axis=1)
    allowed = rmap.kappa * spans * (1.0 + AUDIT_REL_TOL) + AUDIT_REL_TOL
    violations = int(np.count_nonzero(images > allowed))
    positive = spans > 0
    worst = float(np.max(images[positive] / spans[positive])) if np.any(positive) else 0.0
    logger.debug(
        "lipschitz_audit map=%s kappa=%.4f worst=%.6f violations=%d",
        rmap.map_id, rmap.kappa, worst, violations,
    )
    return LipschitzAudit(pairs=pairs, violations=violations, worst_ratio=worst)
