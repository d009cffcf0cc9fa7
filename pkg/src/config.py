import os
from typing import Literal, Self

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

__all__ = ("AppSettings",)


class AppSettings(BaseSettings):
    """Runtime settings of the command-line tool.

    Read from `SQUINT_*` environment variables or a `.env` file; command-line flags take precedence.
    """
    threads: int = Field(default_factory=lambda: os.cpu_count() or 1, ge=1)
    """Default number of worker threads for sweep points"""
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "INFO"
    """Root logging level"""

    model_config = SettingsConfigDict(
        env_prefix="SQUINT_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        env_nested_delimiter="__",
        extra="ignore",
    )

    @classmethod
    def load(cls) -> Self:
        """Load application settings from environment variables."""
        return cls()
