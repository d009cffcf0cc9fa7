import argparse
import logging
import sys
from pathlib import Path

from src.commands.base import EXIT_OK, EXIT_VALIDATION_FAILED, Command
from src.experiments import CouplingMode, OutputError, ScenarioConfig, validate

__all__ = ("validate_command",)

logger = logging.getLogger(__name__)


def _handle(cfg: ScenarioConfig, args: argparse.Namespace, threads: int) -> int:
    report = validate(cfg, threads=threads)
    text = report.model_dump_json(indent=2) + "\n"
    sys.stdout.write(text)
    if args.out:
        path = Path(args.out)
        try:
            path.write_text(text, encoding="utf-8")
        except OSError as e:
            raise OutputError(f"Cannot write report to '{path}': {e}", path=str(path))
    if not report.passed:
        for check in report.failures:
            logger.error(
                "Check failed: %s (measured %.3e, tolerance %.3e)", check.name, check.measured, check.tolerance,
            )
        return EXIT_VALIDATION_FAILED
    return EXIT_OK


validate_command = Command(
    name="validate",
    help="Run the invariant suite and print a JSON report.",
    default_mode=CouplingMode.WEAK_UNITY,
    handler=_handle,
)
