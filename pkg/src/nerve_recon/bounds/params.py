"""Radius, Lipschitz and probability parameters for the clean and noisy reconstructions."""

from pydantic import BaseModel, ConfigDict, Field


class CleanParams(BaseModel):
    """Nerve radii, Lipschitz bound and failure probabilities for on-manifold samples."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    eps_x: float = Field(gt=0, description="Nerve radius on the domain sample")
    eps_y: float = Field(gt=0, description="Nerve radius on the target sample")
    kappa: float = Field(ge=0, description="Declared Lipschitz bound of the map")
    delta_x: float = Field(gt=0, le=1, description="Failure probability budget for X")
    delta_y: float = Field(gt=0, le=1, description="Failure probability budget for Y")


class NoisyParams(CleanParams):
    """Clean parameters plus tube radii and the evaluation-noise bound."""

    r_x: float = Field(gt=0, description="Tube radius of the domain noise")
    r_y: float = Field(gt=0, description="Tube radius of the target noise")
    d: float = Field(gt=0, description="Bound on the evaluation noise of the map")

    @property
    def inflated_x(self) -> float:
        return self.eps_x + self.r_x

    @property
    def deflated_y(self) -> float:
        return self.eps_y - self.r_y

    def evaluation_noise_ceiling(self) -> float:
        """Right-hand side of the bound on ``d``."""
        return (self.deflated_y - 2.0 * self.kappa * self.inflated_x) / 2.0
