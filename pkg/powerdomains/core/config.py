"""Application configuration."""

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings."""

    model_config = SettingsConfigDict(
        env_prefix="POWERDOMAINS_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Project
    PROJECT_NAME: str = "powerdomains"
    DEBUG: bool = True

    # Output
    COLOR: bool = True

    # Law checking defaults
    DEFAULT_SEED: int = 42
    DEFAULT_MAX_POINTS: int = 3
    WEIGHT_DENOMINATOR_BOUND: int = 16
    ALLOW_INFINITY: bool = False
    JOBS: int = 1

    # Logging
    LOG_LEVEL: str = "WARNING"


settings = Settings()
