"""Pydantic records for trial outcomes and experiment reports."""

from pydantic import BaseModel, ConfigDict, Field

from src.nerve_recon.bounds import HypothesisReport
from src.nerve_recon.harness.config import ExperimentConfig
from src.nerve_recon.homology import InducedMap

TIMING_FIELD = "timings"


class TrialOutcome(BaseModel):
    """Everything observed in one pipeline run."""

    model_config = ConfigDict(extra="forbid")

    trial_index: int = Field(description="Position of the trial in the experiment")
    seed: int = Field(description="64-bit entropy of the trial's seed stream")
    n_x: int = 0
    n_y: int | None = None
    dense_x: bool | None = Field(default=None, description="Grid density oracle on X (None = skipped)")
    dense_y: bool | None = None
    betti_x: list[int] = Field(default_factory=list)
    betti_y: list[int] | None = None
    torsion_x: list[list[int]] = Field(default_factory=list)
    torsion_y: list[list[int]] | None = None
    f_vector_x: list[int] = Field(default_factory=list)
    f_vector_y: list[int] | None = None
    nonempty: bool | None = Field(default=None, description="Every Δ set non-empty")
    empty_count: int = 0
    delta_simplices: bool | None = Field(default=None, description="Every Δ_σ spans a target simplex")
    simplicial: bool | None = None
    induced: list[InducedMap] = Field(default_factory=list)
    invariant_factors: dict[int, list[int]] = Field(default_factory=dict)
    multiplier: int | None = Field(default=None, description="|H_1 multiplier| when both ranks are 1")
    selectors_agree: bool | None = None
    carrier: bool | None = None
    success: bool = False
    failure_reason: str | None = None
    error: str | None = Field(default=None, description="Exception text if the trial aborted")
    timings: dict[str, float] = Field(default_factory=dict, description="Stage durations in ms")

    @property
    def millis(self) -> float:
        return self.timings.get("total", 0.0)


class ExperimentReport(BaseModel):
    """Config echo, bound values, validation result and aggregated trial statistics."""

    model_config = ConfigDict(extra="forbid")

    config: ExperimentConfig
    bounds: dict[str, float] = Field(default_factory=dict, description="beta/gamma/rho/window values used")
    validation: HypothesisReport
    infeasible_override: bool = Field(
        default=False, description="Validation failed and the run proceeded under allow_infeasible"
    )
    n_x: int
    n_y: int | None = None
    trials: list[TrialOutcome] = Field(default_factory=list)
    successes: int = 0
    errors: int = 0
    frequency: float = Field(default=0.0, ge=0.0, le=1.0)
    interval: tuple[float, float] = (0.0, 1.0)
    target: float = Field(default=0.0, description="Probability lower bound promised by the bounds")

    @property
    def failures(self) -> int:
        return len(self.trials) - self.successes
