"""
Configuration Management for linkforge
Settings groups read from the environment, .env and ~/.linkforge/.env
"""

from pathlib import Path
from typing import Literal, Optional

from dotenv import load_dotenv
from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

# Load global .env from ~/.linkforge/.env if it exists
load_dotenv(Path.home() / ".linkforge" / ".env")


class NumericsConfig(BaseSettings):
    """Tolerances and backend selection"""

    model_config = SettingsConfigDict(
        env_file=(".env", str(Path.home() / ".linkforge" / ".env")),
        env_file_encoding="utf-8",
        extra="ignore",
    )
    eps: float = Field(default=1e-9, validation_alias="LINKFORGE_EPS")
    backend: Literal["exact", "approx"] = Field(
        default="exact", validation_alias="LINKFORGE_BACKEND"
    )
    rank_tol: float = Field(default=1e-8, validation_alias="LINKFORGE_RANK_TOL")
    realness_tol: float = Field(
        default=1e-6, validation_alias="LINKFORGE_REALNESS_TOL"
    )

    @field_validator("eps", "rank_tol", "realness_tol")
    @classmethod
    def _positive(cls, value: float) -> float:
        if value <= 0:
            raise ValueError("tolerance must be positive")
        return value


class SynthesisConfig(BaseSettings):
    """Linkage synthesis and ordering search"""

    model_config = SettingsConfigDict(
        env_file=".env", env_file_encoding="utf-8", extra="ignore"
    )
    search_budget: int = Field(default=2000, validation_alias="LINKFORGE_SEARCH_BUDGET")
    search_seed: int = Field(default=0, validation_alias="LINKFORGE_SEARCH_SEED")
    mobility_trials: int = Field(
        default=10, validation_alias="LINKFORGE_MOBILITY_TRIALS"
    )


class RenderConfig(BaseSettings):
    """SVG output"""

    model_config = SettingsConfigDict(
        env_file=".env", env_file_encoding="utf-8", extra="ignore"
    )
    precision: int = Field(default=12, validation_alias="LINKFORGE_SVG_PRECISION")
    trace_samples: int = Field(default=400, validation_alias="LINKFORGE_TRACE_SAMPLES")
    padding: float = Field(default=0.1, validation_alias="LINKFORGE_SVG_PADDING")
    size: int = Field(default=800, validation_alias="LINKFORGE_SVG_SIZE")
    joint_radius: float = Field(
        default=0.012, validation_alias="LINKFORGE_SVG_JOINT_RADIUS"
    )


class LoggingConfig(BaseSettings):
    """Logging configuration"""

    model_config = SettingsConfigDict(
        env_file=".env", env_file_encoding="utf-8", extra="ignore"
    )
    log_level: str = Field(default="WARNING", validation_alias="LINKFORGE_LOG_LEVEL")
    log_file: Optional[str] = Field(default=None, validation_alias="LINKFORGE_LOG_FILE")


class LinkforgeConfig(BaseSettings):
    """Main configuration combining all settings groups"""

    model_config = SettingsConfigDict(
        env_file=".env", env_file_encoding="utf-8", extra="ignore"
    )

    numerics: NumericsConfig = Field(default_factory=NumericsConfig)
    synthesis: SynthesisConfig = Field(default_factory=SynthesisConfig)
    render: RenderConfig = Field(default_factory=RenderConfig)
    logging: LoggingConfig = Field(default_factory=LoggingConfig)


# Global config instance
_config: Optional[LinkforgeConfig] = None


def get_config() -> LinkforgeConfig:
    """Get global configuration instance"""
    global _config
    if _config is None:
        _config = LinkforgeConfig()
    return _config


def reload_config() -> LinkforgeConfig:
    """Reload configuration from environment"""
    global _config
    _config = None
    return get_config()


def approx_eps() -> float:
    """Tolerance used by every approximate zero, realness and conjugacy test."""
    return get_config().numerics.eps
