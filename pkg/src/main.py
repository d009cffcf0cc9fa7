import argparse
import logging
import sys
from collections.abc import Sequence

from pydantic import ValidationError

from src import __version__, commands, config
from src.core.exceptions import ConfigError, DomainError, NumericalError
from src.experiments import OutputError, load_scenario

__all__ = (
    "EXIT_OUTPUT_ERROR",
    "EXIT_CONFIG_ERROR",
    "EXIT_NUMERICAL_ERROR",
    "build_parser",
    "main",
)

logger = logging.getLogger(__name__)

EXIT_OUTPUT_ERROR = 1
EXIT_CONFIG_ERROR = 2
EXIT_NUMERICAL_ERROR = 3


def _positive_int(minimum: int):
    def parse(value: str) -> int:
        number = int(value)
        if number < minimum:
            raise argparse.ArgumentTypeError(f"must be at least {minimum}, got {number}")
        return number

    return parse


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="squint",
        description="Beam squint in wideband mutually coupled arrays: figure data, sweeps and validation.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in commands.get_commands():
        sub = subparsers.add_parser(command.name, help=command.help, description=command.help)
        sub.add_argument("--config", help="Scenario TOML file with flat dotted keys")
        sub.add_argument("--out", help="Output file; CSV goes to stdout when omitted")
        sub.add_argument("--points", type=_positive_int(2), help="Number of sweep points")
        sub.add_argument("--threads", type=_positive_int(1), help="Worker threads (overrides SQUINT_THREADS)")
        sub.add_argument("--db", action="store_true", help="Add dB columns for every linear SNR column")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """
    Command-line entry point.

    Returns:
        Exit status: 0 success, 1 output error, 2 configuration error,
        3 numerical or domain error, 4 validation failure
    """
    args = build_parser().parse_args(argv)
    try:
        settings = config.AppSettings.load()
    except ValidationError as e:
        logging.basicConfig(level=logging.INFO)
        logger.error("Invalid environment settings: %s", e)
        return EXIT_CONFIG_ERROR
    logging.basicConfig(
        level=settings.log_level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    command = next(c for c in commands.get_commands() if c.name == args.command)
    threads = args.threads or settings.threads
    try:
        cfg = load_scenario(args.config) if args.config else command.default_scenario()
        return command.handler(cfg, args, threads)
    except (ConfigError, ValidationError) as e:
        logger.error("Configuration error: %s", e)
        return EXIT_CONFIG_ERROR
    except (NumericalError, DomainError) as e:
        logger.error("Numerical error: %s", e)
        return EXIT_NUMERICAL_ERROR
    except OutputError as e:
        logger.error("Output error: %s", e)
        return EXIT_OUTPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
