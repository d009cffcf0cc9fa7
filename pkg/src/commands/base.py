import argparse
from collections.abc import Callable

from pydantic import BaseModel, ConfigDict

from src.experiments import CouplingMode, ScenarioConfig

__all__ = (
    "EXIT_OK",
    "EXIT_VALIDATION_FAILED",
    "Command",
)

EXIT_OK = 0
EXIT_VALIDATION_FAILED = 4


class Command(BaseModel):
    """One CLI subcommand."""
    name: str
    """Subcommand name"""
    help: str
    """One-line description"""
    default_mode: CouplingMode
    """Coupling mode of the built-in scenario used without --config"""
    handler: Callable[[ScenarioConfig, argparse.Namespace, int], int]
    """Runs the command and returns the exit status"""

    model_config = ConfigDict(frozen=True)

    def default_scenario(self) -> ScenarioConfig:
        return ScenarioConfig.model_validate({"coupling_mode": self.default_mode.value})
