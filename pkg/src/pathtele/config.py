"""Strict experiment configuration (YAML or JSON file plus flag overrides)."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any, Literal, Optional

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from .protocol import NoiseModel

EXPERIMENTS = ("teleport-six", "sweep-visibility", "characterize-source")
DEFAULT_GRID = (0.0, 0.25, 0.5, 0.75, 0.83, 1.0)


class ConfigError(ValueError):
    pass


class NoiseConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    werner_p: float = Field(1.0, ge=0.0, le=1.0)
    path_visibility: float = Field(1.0, ge=0.0, le=1.0)
    path1_depolarizing: float = Field(0.0, ge=0.0, le=1.0)

    def model(self) -> NoiseModel:
        return NoiseModel(self.werner_p, self.path_visibility, self.path1_depolarizing)


class ExperimentConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    experiment: Literal["teleport-six", "sweep-visibility", "characterize-source"]
    noise: NoiseConfig = Field(default_factory=NoiseConfig)
    mode: Literal["exact", "sampled"] = "exact"
    n_events: Optional[int] = Field(None, ge=1)
    seed: Optional[int] = Field(None, ge=0, lt=2 ** 64)
    out: Optional[str] = None
    format: Literal["csv", "json"] = "csv"
    visibility_grid: list[float] = Field(default_factory=lambda: list(DEFAULT_GRID))

    @field_validator("visibility_grid")
    @classmethod
    def _grid_in_range(cls, grid: list[float]) -> list[float]:
        if len(grid) < 2:
            raise ValueError("visibility_grid needs at least 2 points")
        bad = [v for v in grid if not 0.0 <= v <= 1.0]
        if bad:
            raise ValueError(f"visibility_grid values outside [0, 1]: {bad}")
        return grid

    @model_validator(mode="after")
    def _sampled_needs_events_and_seed(self) -> "ExperimentConfig":
        if self.mode == "sampled" and (self.n_events is None or self.seed is None):
            raise ValueError("sampled mode requires n_events and seed")
        return self

    def digest(self) -> str:
        """SHA-256 of the canonical config, excluding the output path."""
        payload = self.model_dump(exclude={"out"})
        return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()


def _set_path(data: dict, dotted: str, value: Any) -> None:
    *parents, leaf = dotted.split(".")
    node = data
    for key in parents:
        node = node.setdefault(key, {})
        if not isinstance(node, dict):
            raise ConfigError(f"{key!r} must be a mapping")
    node[leaf] = value


def load_config(path: Optional[str], experiment: str, overrides: dict[str, Any]) -> ExperimentConfig:
    """Read ``path`` (if any), apply dotted-key ``overrides`` (None = unset), validate."""
    data: dict[str, Any] = {}
    if path is not None:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        try:
            loaded = yaml.safe_load(text)
        except yaml.YAMLError as exc:
            raise ConfigError(f"cannot parse config {path}: {exc}") from exc
        if loaded is None:
            loaded = {}
        if not isinstance(loaded, dict):
            raise ConfigError("config file must hold a mapping at top level")
        data = loaded
    if data.setdefault("experiment", experiment) != experiment:
        raise ConfigError(f"config is for {data['experiment']!r}, not {experiment!r}")
    for key, value in overrides.items():
        if value is not None:
            _set_path(data, key, value)
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(str(exc)) from exc
