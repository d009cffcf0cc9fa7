import csv
import io
import logging
from pathlib import Path

from src.experiments.exceptions import OutputError
from src.experiments.models import SweepResult

__all__ = (
    "format_csv",
    "emit_csv",
)

logger = logging.getLogger(__name__)

SIGNIFICANT_DIGITS = 12


def _write(result: SweepResult, stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(result.columns)
    for row in result.rows:
        writer.writerow([f"{value:.{SIGNIFICANT_DIGITS}g}" for value in row])


def format_csv(result: SweepResult) -> str:
    """CSV text: header, one row per sweep point, 12 significant digits, LF line endings."""
    buffer = io.StringIO()
    _write(result, buffer)
    return buffer.getvalue()


def emit_csv(result: SweepResult, path: str | Path) -> None:
    """
    Write a result as CSV.

    Args:
        result: Runner output
        path: Destination file; parent directories are created

    Raises:
        OutputError: If the file cannot be written
    """
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8", newline="") as f:
            _write(result, f)
    except OSError as e:
        raise OutputError(f"Cannot write results to '{path}': {e}", path=str(path))
    logger.info("Wrote %d rows to %s", len(result.rows), path)
