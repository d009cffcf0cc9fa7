from .base import Command
from .figures import fig1a_command, fig1b_command, fig2_command, fig3_command, sweep_command
from .validation import validate_command

__all__ = (
    "Command",
    "get_commands",
)


def get_commands() -> tuple[Command, ...]:
    return fig1a_command, fig1b_command, fig2_command, fig3_command, sweep_command, validate_command
