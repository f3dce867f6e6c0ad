"""Configuration management for rcdkit."""

import json
import logging
import os
from fractions import Fraction
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from rcdkit.core.errors import RcdkitError
from rcdkit.core.rational import parse_rat

logger = logging.getLogger(__name__)

_ENV_OVERRIDES = {
    "RCDKIT_WORKERS": "workers",
    "RCDKIT_SEED": "seed",
}


class RcdkitConfig(BaseModel):
    """Defaults for campaigns and float-mode analysis."""

    epsilon: str = "1e-9"
    trials: int = Field(1000, ge=1)
    seed: int = 42
    n_min: int = Field(2, ge=1)
    n_max: int = Field(5, ge=1, le=10)
    oracle_max_n: int = Field(10, ge=1, le=10)
    workers: int = Field(1, ge=1, le=64)
    keep_reports: int = Field(200, ge=1)

    @field_validator("epsilon")
    @classmethod
    def _epsilon_is_decimal(cls, value: str) -> str:
        try:
            parsed = parse_rat(value, allow_decimal=True)
        except RcdkitError as e:
            raise ValueError(str(e))
        if parsed < 0:
            raise ValueError("epsilon must be nonnegative")
        return value

    @model_validator(mode="after")
    def _ordered_range(self) -> "RcdkitConfig":
        if self.n_min > self.n_max:
            raise ValueError(f"n_min {self.n_min} exceeds n_max {self.n_max}")
        return self

    @property
    def tolerance(self) -> Fraction:
        return parse_rat(self.epsilon, allow_decimal=True)


class ConfigManager:
    """Manages rcdkit configuration."""

    def __init__(self, config_path: Optional[Path] = None):
        self.config_path = config_path or Path.home() / ".rcdkit" / "config.json"
        self.config_path.parent.mkdir(parents=True, exist_ok=True)

    def load(self) -> RcdkitConfig:
        """Load configuration from file (defaults when missing or corrupted), then env overrides."""
        data = {}
        if self.config_path.exists():
            try:
                with open(self.config_path, "r") as f:
                    data = json.load(f)
                RcdkitConfig(**data)
            except (OSError, ValueError, TypeError) as e:
                logger.warning("ignoring unreadable config %s: %s", self.config_path, e)
                data = {}

        for env, key in _ENV_OVERRIDES.items():
            raw = os.getenv(env)
            if raw is not None:
                data[key] = raw
        try:
            return RcdkitConfig(**data)
        except ValidationError as e:
            logger.warning("ignoring invalid environment override: %s", e.errors()[0]["msg"])
            return RcdkitConfig()

    def save(self, config: RcdkitConfig):
        """Save configuration to file."""
        with open(self.config_path, "w") as f:
            json.dump(config.model_dump(), f, indent=2)

    def update(self, **kwargs):
        """Update specific config values."""
        config = self.load()
        for key, value in kwargs.items():
            if hasattr(config, key):
                setattr(config, key, value)
        self.save(config)
