"""Run configuration: flags > --config file > HENSELKIT_CONFIG > defaults."""

from __future__ import annotations

import os
from pathlib import Path
from typing import Any, Literal

import yaml
from pydantic import BaseModel, Field, ValidationError, field_validator

from henselkit.lib.errors import ConfigError
from henselkit.series.tower import DEFAULT_PRECISION, DEFAULT_RAMIFICATION, TowerDescriptor


class TrialCounts(BaseModel):
    """How many random cases each property suite draws."""

    random_problems: int = Field(50, ge=1)
    random_pairs: int = Field(100, ge=1)
    separated_samples: int = Field(200, ge=1)
    parser_round_trips: int = Field(100, ge=1)


class RunConfig(BaseModel):
    precision: list[int] = Field([DEFAULT_PRECISION], description="Terms kept per level")
    ramification: list[int] = Field([DEFAULT_RAMIFICATION], description="d_i per level")
    seed: int = Field(0, description="Seed for every randomized suite")
    trials: TrialCounts = Field(default_factory=TrialCounts)
    output_format: Literal["json", "pretty"] = "json"
    retry_precision: bool = False

    @field_validator("precision", "ramification")
    @classmethod
    def validate_levels(cls, v: list[int]) -> list[int]:
        if not v:
            raise ValueError("at least one entry is required")
        if any(n < 1 for n in v):
            raise ValueError("entries must be positive")
        return v

    def tower(self, height: int) -> TowerDescriptor:
        """Stage of the given height with this configuration's per-level settings."""
        return TowerDescriptor.build(height, self.ramification, self.precision)

    def doubled(self) -> RunConfig:
        return self.model_copy(update={"precision": [2 * n for n in self.precision]})


def load_config(path: str | Path) -> RunConfig:
    """Read a YAML or JSON config file."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"Config file not found: {path}")
    try:
        with path.open() as f:
            data = yaml.safe_load(f) or {}
    except yaml.YAMLError as e:
        raise ConfigError(f"Invalid YAML in {path}: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError(f"{path} does not hold a mapping")
    return _validate(data, str(path))


def _validate(data: dict[str, Any], origin: str) -> RunConfig:
    try:
        return RunConfig(**data)
    except ValidationError as e:
        raise ConfigError(f"Config from {origin} is invalid: {e}") from e


def resolve_config(path: str | Path | None = None, **overrides: Any) -> RunConfig:
    """Apply the precedence rules; ``None`` overrides are ignored."""
    source = path or os.getenv("HENSELKIT_CONFIG")
    config = load_config(source) if source else RunConfig()
    changes = {k: v for k, v in overrides.items() if v is not None}
    if not changes:
        return config
    return _validate({**config.model_dump(), **changes}, "command-line flags")
