from pathlib import Path

import yaml
from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, PositiveInt, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class ToleranceConfig(BaseModel):
    """Numerical tolerances used across the library.

    Attributes:
        rank_tol: Eigenvalues of A at or below ``rank_tol * lambda_max`` are treated as zero.
        eq_tol: Relative tolerance for matrix and scalar equality, scaled by operand norms.
        opt_tol: Stop threshold for the sphere optimizer (relative improvement per sweep).
        geo_tol: Scale-relative tolerance for comparing planar sets.
        radius_tol: Budget for comparing two independent optimizer runs.
    """

    model_config = ConfigDict(frozen=True)

    rank_tol: PositiveFloat = 1e-10
    eq_tol: PositiveFloat = 1e-9
    opt_tol: PositiveFloat = 1e-8
    geo_tol: PositiveFloat = 5e-2
    radius_tol: PositiveFloat = 1e-4


class SampleConfig(BaseModel):
    """Sampling and optimizer effort for range and radius computations."""

    model_config = ConfigDict(frozen=True)

    n_x: PositiveInt = 2048
    n_angles: PositiveInt = 720
    n_starts: PositiveInt = 32
    max_iter: PositiveInt = 500
    seed: int = 0
    # Support refinement passes per grid angle; 0 keeps the raw sampled union.
    refine_sweeps: int = Field(default=4, ge=0)
    line_iters: PositiveInt = 30
    workers: PositiveInt | None = None


class Config(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="semirange_",
        env_file=".env",
        env_nested_delimiter="__",
        extra="ignore",
    )

    tolerance: ToleranceConfig = Field(default_factory=ToleranceConfig)
    sampling: SampleConfig = Field(default_factory=SampleConfig)

    # SEMIRANGE_THREADS caps worker parallelism
    threads: PositiveInt | None = None

    # Search depth for nilpotency indices
    max_index: PositiveInt = 8

    log_level: str = "WARNING"

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        valid_levels = {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}
        if v.upper() not in valid_levels:
            return "WARNING"
        return v.upper()

    @property
    def effective_sampling(self) -> SampleConfig:
        """Sampling config with the thread cap applied."""
        if self.threads is None or self.sampling.workers is not None:
            return self.sampling
        return self.sampling.model_copy(update={"workers": self.threads})


def deep_merge(base: dict, update: dict) -> dict:
    """Recursively merges two dictionaries.
    Overriding a single tolerance in YAML keeps the other tolerances from the environment.
    """
    for key, value in update.items():
        if isinstance(value, dict) and key in base and isinstance(base[key], dict):
            base[key] = deep_merge(base[key], value)
        else:
            base[key] = value
    return base


def get_config(override_yaml: Path | None = None) -> Config:
    # 1. Initialize from Environment Variables / .env
    conf_dict = Config().model_dump()

    # 2. Apply YAML Overrides (Merging instead of overwriting)
    if override_yaml and override_yaml.exists():
        with open(override_yaml) as f:
            yaml_data = yaml.safe_load(f)
            if yaml_data:
                conf_dict = deep_merge(conf_dict, yaml_data)

    # Re-validate the merged dictionary into the Config model
    return Config(**conf_dict)


settings = get_config()
