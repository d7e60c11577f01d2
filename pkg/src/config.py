"""Application configuration."""
from functools import lru_cache
from pathlib import Path

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Settings loaded from environment variables (prefix CHRONNET_)."""

    # Construction / measurement parallelism
    threads: int = Field(default=1, ge=1)

    # MCD14ML ingestion
    min_confidence: float = 75.0

    # Output
    output_dir: Path = Path("artifacts")
    log_level: str = "INFO"

    # Randomness
    default_seed: int = 42

    model_config = SettingsConfigDict(
        env_prefix="CHRONNET_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
