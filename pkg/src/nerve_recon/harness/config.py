"""Experiment configuration: TOML documents validated into pydantic models."""

import tomllib
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from src.nerve_recon.bounds import CleanParams, NoisyParams
from src.nerve_recon.errors import ConfigError, NerveReconError
from src.nerve_recon.harness.registry import MapId, RegisteredMap, resolve_map
from src.nerve_recon.manifolds import ManifoldModel, NoiseModel
from src.nerve_recon.reconstruct import SelectorPolicy


class MapSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    id: MapId = Field(description="Registry map identifier")
    degree: int = Field(default=2, ge=1, description="Winding number for circle-degree-k")
    kappa: float | None = Field(
        default=None, ge=0, description="Declared Lipschitz bound (defaults to the registry value)"
    )


class RadiusSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    eps_x: float = Field(gt=0, description="Nerve radius on X")
    eps_y: float | None = Field(default=None, gt=0, description="Nerve radius on Y")
    delta_x: float = Field(default=0.1, gt=0, le=1)
    delta_y: float = Field(default=0.1, gt=0, le=1)
    r_x: float | None = Field(default=None, gt=0, description="Tube radius of the X noise")
    r_y: float | None = Field(default=None, gt=0, description="Tube radius of the Y noise")
    d: float | None = Field(default=None, gt=0, description="Evaluation-noise bound")
    d_fraction: float | None = Field(
        default=None, gt=0, lt=1, description="Set d to this fraction of its admissible ceiling"
    )


class SampleSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n_x: int | None = Field(default=None, ge=1, description="Fixed X sample size (default: bound + slack)")
    n_y: int | None = Field(default=None, ge=1, description="Fixed Y sample size (default: bound + slack)")
    slack: int = Field(default=1, ge=1, description="Added to floor(bound) when sizes are derived")


class OracleSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    grid_step: float | None = Field(default=None, gt=0, description="Mesh of the verification grids")
    omega_mc_samples: int = Field(default=20_000, ge=10_000)
    carrier_samples: int = Field(default=0, ge=0, description="Samples per ball for carrier checks (0 = off)")
    check_density: bool = True
    check_delta_simplices: bool = True
    compare_selectors: bool = False


class OutputSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    dir: Path = Field(default=Path("results"))
    format: Literal["json", "csv"] = "json"
    plots: bool = False


class ExperimentConfig(BaseModel):
    """Complete description of a Monte Carlo experiment."""

    model_config = ConfigDict(extra="forbid")

    scenario: str = Field(description="Scenario name used in report file names")
    task: Literal["manifold", "map"] = "map"
    mode: Literal["clean", "noisy"] = "clean"
    x: ManifoldModel
    y: ManifoldModel | None = None
    map: MapSettings | None = None
    radii: RadiusSettings
    samples: SampleSettings = Field(default_factory=SampleSettings)
    oracle: OracleSettings = Field(default_factory=OracleSettings)
    output: OutputSettings = Field(default_factory=OutputSettings)
    selector: SelectorPolicy = "nearest"
    trials: int = Field(default=100, ge=1)
    seed: int = Field(default=0, ge=0, lt=2**64)
    d_max: int | None = Field(default=None, ge=1)
    allow_infeasible: bool = Field(
        default=False, description="Run even when hypothesis validation fails (recorded in the report)"
    )

    @model_validator(mode="after")
    def _check_task(self) -> "ExperimentConfig":
        if self.task == "map":
            if self.y is None or self.map is None:
                raise ValueError("map task needs both [y] and [map] sections")
            if self.radii.eps_y is None:
                raise ValueError("map task needs radii.eps_y")
            registered = resolve_map(self.map.id, self.x, self.y, self.map.degree)
            if self.map.kappa is not None and self.map.kappa < registered.kappa * (1.0 - 1e-12):
                raise ValueError(
                    f"declared kappa={self.map.kappa:g} is below the Lipschitz constant "
                    f"{registered.kappa:g} of {self.map.id}"
                )
        if self.mode == "noisy":
            if self.radii.r_x is None:
                raise ValueError("noisy mode needs radii.r_x")
            if self.task == "map":
                if self.radii.r_y is None:
                    raise ValueError("noisy map task needs radii.r_y")
                if (self.radii.d is None) == (self.radii.d_fraction is None):
                    raise ValueError("noisy map task needs exactly one of radii.d, radii.d_fraction")
        return self

    # ── derived quantities ──

    @property
    def up_to(self) -> int:
        return self.x.intrinsic_dim

    @property
    def dims(self) -> tuple[int, int]:
        """Nerve truncation for X and Y (intrinsic dimension + 1 unless overridden)."""
        dim_y = self.y.intrinsic_dim if self.y is not None else 0
        if self.d_max is not None:
            return self.d_max, self.d_max
        return self.x.intrinsic_dim + 1, max(dim_y, self.up_to) + 1

    def registered_map(self) -> RegisteredMap:
        if self.map is None or self.y is None:
            raise ConfigError("manifold task has no map")
        return resolve_map(self.map.id, self.x, self.y, self.map.degree)

    def kappa(self) -> float:
        declared = self.map.kappa if self.map is not None else None
        return declared if declared is not None else self.registered_map().kappa

    def grid_step(self) -> float:
        if self.oracle.grid_step is not None:
            return self.oracle.grid_step
        radii = [self.radii.eps_x, self.radii.eps_y or self.radii.eps_x]
        if self.radii.r_x is not None:
            radii.append(self.radii.r_x)
        if self.radii.r_y is not None:
            radii.append(self.radii.r_y)
        return min(radii) / 16.0

    def noise_x(self) -> NoiseModel | None:
        return NoiseModel(r=self.radii.r_x) if self.mode == "noisy" and self.radii.r_x else None

    def noise_y(self) -> NoiseModel | None:
        return NoiseModel(r=self.radii.r_y) if self.mode == "noisy" and self.radii.r_y else None

    def clean_params(self) -> CleanParams:
        if self.radii.eps_y is None:
            raise ConfigError("radii.eps_y is required for map parameters")
        return CleanParams(
            eps_x=self.radii.eps_x,
            eps_y=self.radii.eps_y,
            kappa=self.kappa(),
            delta_x=self.radii.delta_x,
            delta_y=self.radii.delta_y,
        )

    def noisy_params(self) -> NoisyParams:
        clean = self.clean_params()
        if self.radii.r_x is None or self.radii.r_y is None:
            raise ConfigError("noisy parameters need radii.r_x and radii.r_y")
        d = self.radii.d
        if d is None:
            assert self.radii.d_fraction is not None
            ceiling = (
                (clean.eps_y - self.radii.r_y) - 2.0 * clean.kappa * (clean.eps_x + self.radii.r_x)
            ) / 2.0
            if ceiling <= 0:
                raise ConfigError(f"evaluation-noise ceiling is {ceiling:.6g}; no admissible d")
            d = self.radii.d_fraction * ceiling
        return NoisyParams(**clean.model_dump(), r_x=self.radii.r_x, r_y=self.radii.r_y, d=d)


def _format_validation(exc: ValidationError) -> str:
    problems = []
    for error in exc.errors():
        location = ".".join(str(part) for part in error["loc"]) or "<root>"
        problems.append(f"{location}: {error['msg']}")
    return "; ".join(problems)


def parse_config(data: dict[str, Any]) -> ExperimentConfig:
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(f"invalid experiment config: {_format_validation(exc)}") from exc
    except NerveReconError as exc:
        raise ConfigError(f"invalid experiment config: {exc}") from exc


def load_config(path: str | Path) -> ExperimentConfig:
    """Read and validate a TOML experiment config."""
    source = Path(path)
    try:
        with source.open("rb") as handle:
            data = tomllib.load(handle)
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {source}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"config file {source} is not valid TOML: {exc}") from exc
    return parse_config(data)
