"""Configuration management for SteerLab."""
import json
import logging
from pathlib import Path
from typing import Any, Dict, Literal, Optional, Union

import numpy as np
from pydantic import AliasChoices, BaseModel, ConfigDict, Field, field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from src.protocol.scenarios import Case, Objective, ScenarioConfig, parse_mr
from src.quantum.channel import ReservoirParams

logger = logging.getLogger(__name__)


class Settings(BaseSettings):
    """Application settings loaded from environment variables (prefix STEERLAB_)."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="STEERLAB_",
        extra="ignore"
    )

    # Execution
    threads: int = Field(default=0, description="Worker processes for sweeps (0 = all cores)")
    debug: bool = Field(default=False, description="Enable debug logging")
    output_dir: str = Field(default="output", description="Directory for figure CSV files")

    # Reservoir defaults
    gamma0: float = Field(default=1.0, gt=0, description="Excited-state decay rate")
    lambda_: float = Field(
        default=0.1,
        gt=0,
        validation_alias=AliasChoices("STEERLAB_LAMBDA", "lambda_"),
        description="Reservoir spectral width"
    )

    # Grid resolutions
    curve_points: int = Field(default=600, description="Points per 1-D curve")
    surface_points: int = Field(default=120, description="Points per axis of a 2-D surface")

    @field_validator("threads")
    def validate_threads(cls, v: int) -> int:
        """Thread cap must be non-negative."""
        if v < 0:
            raise ValueError(f"threads must be >= 0, got {v}")
        return v

    @field_validator("curve_points", "surface_points")
    def validate_resolution(cls, v: int) -> int:
        """A curve or surface axis needs at least two points."""
        if v < 2:
            raise ValueError(f"Grid resolution must be >= 2, got {v}")
        return v

    @property
    def reservoir(self) -> ReservoirParams:
        return ReservoirParams(gamma0=self.gamma0, lam=self.lambda_)


# Global settings instance
settings = Settings()


class SweepConfig(BaseModel):
    """
    One time sweep. Keys match the CLI flags with dashes turned into underscores.
    """

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    case: Case = Case.A
    p: float = Field(default=0.8, ge=0.0, le=1.0)
    m: float = Field(default=0.0, ge=0.0, lt=1.0)
    mr: Union[float, Literal["analytic", "numeric"]] = "analytic"
    gamma0: float = Field(default_factory=lambda: settings.gamma0, gt=0)
    lam: float = Field(default_factory=lambda: settings.lambda_, gt=0, alias="lambda")
    t_start: float = Field(default=0.0, ge=0.0)
    t_end: float = Field(default=30.0, ge=0.0)
    t_steps: int = Field(default_factory=lambda: settings.curve_points, ge=1)
    objective: Objective = Objective.CONCURRENCE
    allow_markovian: bool = False
    out: str = "-"

    @field_validator("mr", mode="before")
    def validate_mr(cls, v):
        return parse_mr(v)

    @model_validator(mode="after")
    def check_time_grid(self) -> "SweepConfig":
        """Grid must be nonempty and strictly increasing."""
        if self.t_steps > 1 and not self.t_end > self.t_start:
            raise ValueError(f"t_end ({self.t_end}) must exceed t_start ({self.t_start}) for {self.t_steps} steps")
        return self

    @property
    def reservoir(self) -> ReservoirParams:
        return ReservoirParams(gamma0=self.gamma0, lam=self.lam)

    def scenario(self) -> ScenarioConfig:
        return ScenarioConfig(
            case=self.case,
            p=self.p,
            m=self.m,
            mr=self.mr,
            objective=self.objective,
            reservoir=self.reservoir,
        )

    def time_grid(self) -> np.ndarray:
        if self.t_steps == 1:
            return np.array([self.t_start])
        return np.linspace(self.t_start, self.t_end, self.t_steps)


def load_sweep_config(path: Optional[str] = None, overrides: Optional[Dict[str, Any]] = None) -> SweepConfig:
    """
    Build a SweepConfig from an optional JSON file and explicit overrides.

    Args:
        path: JSON file whose keys are SweepConfig fields (``lambda`` for the width)
        overrides: Values given on the command line; None entries are ignored

    Returns:
        Validated SweepConfig

    Raises:
        OSError: the file cannot be read
        ValueError: the file is not valid JSON or a value is out of range
    """
    data: Dict[str, Any] = {}
    if path:
        with open(Path(path), 'r', encoding='utf-8') as f:
            data = json.load(f)
        if not isinstance(data, dict):
            raise ValueError(f"Config file {path} must hold a JSON object")
        logger.debug(f"Loaded sweep config from {path}: {sorted(data)}")

    for key, value in (overrides or {}).items():
        if value is not None:
            data[key] = value

    return SweepConfig.model_validate(data)
