"""Pydantic models for parametric manifolds and tube-noise measures."""

import math
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

NOISE_REACH_FACTOR = 3.0 - math.sqrt(8.0)

ManifoldKind = Literal["circle", "sphere", "torus"]

_INTRINSIC_DIM: dict[str, int] = {"circle": 1, "sphere": 2, "torus": 2}
_AMBIENT_DIM: dict[str, int] = {"circle": 2, "sphere": 3, "torus": 3}
_BETTI: dict[str, tuple[int, ...]] = {
    "circle": (1, 1),
    "sphere": (1, 0, 1),
    "torus": (1, 2, 1),
}


class ManifoldModel(BaseModel):
    """A circle, round sphere or torus of revolution with closed-form reach and volume."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    kind: ManifoldKind = Field(description="Manifold family")
    radius: float = Field(gt=0, description="Circle/sphere radius, or torus center-circle radius R")
    tube_radius: float | None = Field(
        default=None, gt=0, description="Torus tube radius r_t (torus only, R > 2 r_t)"
    )

    @model_validator(mode="after")
    def _check_shape(self) -> "ManifoldModel":
        if self.kind == "torus":
            if self.tube_radius is None:
                raise ValueError("torus requires tube_radius")
            if not self.radius > 2.0 * self.tube_radius:
                raise ValueError(
                    f"torus requires R > 2 r_t, got R={self.radius} r_t={self.tube_radius}"
                )
        elif self.tube_radius is not None:
            raise ValueError(f"tube_radius is only meaningful for a torus, not a {self.kind}")
        return self

    @property
    def intrinsic_dim(self) -> int:
        return _INTRINSIC_DIM[self.kind]

    @property
    def ambient_dim(self) -> int:
        return _AMBIENT_DIM[self.kind]

    @property
    def volume(self) -> float:
        """Riemannian k-volume."""
        if self.kind == "circle":
            return 2.0 * math.pi * self.radius
        if self.kind == "sphere":
            return 4.0 * math.pi * self.radius**2
        assert self.tube_radius is not None
        return 4.0 * math.pi**2 * self.radius * self.tube_radius

    @property
    def tau(self) -> float:
        """Reach; the condition number is ``1 / tau``."""
        if self.kind == "torus":
            assert self.tube_radius is not None
            return self.tube_radius
        return self.radius

    @property
    def diameter(self) -> float:
        if self.kind == "torus":
            assert self.tube_radius is not None
            return 2.0 * (self.radius + self.tube_radius)
        return 2.0 * self.radius

    def betti(self, up_to: int | None = None) -> tuple[int, ...]:
        """Betti numbers of the manifold in dimensions ``0..up_to``."""
        numbers = _BETTI[self.kind]
        if up_to is None:
            return numbers
        return tuple(numbers[d] if d < len(numbers) else 0 for d in range(up_to + 1))

    def label(self) -> str:
        if self.kind == "torus":
            return f"torus(R={self.radius:g}, r={self.tube_radius:g})"
        return f"{self.kind}(R={self.radius:g})"


class NoiseModel(BaseModel):
    """Uniform-in-ambient-tube measure: uniform base point plus a uniform offset in the r-ball."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    r: float = Field(gt=0, description="Tube radius")
    kind: Literal["uniform_tube"] = Field(default="uniform_tube")
    omega: float | None = Field(
        default=None, gt=0, description="Lower bound on the inf of mu(B_{r/2}(p)) over the manifold"
    )

    def admissible_for(self, model: ManifoldModel) -> bool:
        return self.r < NOISE_REACH_FACTOR * model.tau
