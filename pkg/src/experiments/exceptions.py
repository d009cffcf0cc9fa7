from src.core.exceptions import ConfigError, NumericalError, SquintError

__all__ = (
    "ScenarioParseError",
    "ScenarioValidationError",
    "OutputError",
    "NonFiniteResult",
)


class ScenarioParseError(ConfigError):
    """Exception raised when a scenario file cannot be read or parsed.

    Attributes:
        line: 1-based line of the syntax error, if known
    """

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.line = line


class ScenarioValidationError(ConfigError):
    """Exception raised when a scenario violates a field constraint.

    Attributes:
        field: Dotted key of the first offending field
    """

    def __init__(self, message: str, field: str):
        super().__init__(message)
        self.field = field


class OutputError(SquintError):
    """Exception raised when a result file cannot be written.

    Attributes:
        path: Destination path
    """

    def __init__(self, message: str, path: str):
        super().__init__(message)
        self.path = path


class NonFiniteResult(NumericalError):
    """Exception raised when a runner evaluates a NaN or infinite cell.

    Attributes:
        runner: Runner that produced the row
        row: 0-based row index
    """

    def __init__(self, message: str, runner: str, row: int):
        super().__init__(message)
        self.runner = runner
        self.row = row
