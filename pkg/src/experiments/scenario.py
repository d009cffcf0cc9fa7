import json
import logging
import re
import tomllib
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from src.core.utils import get_sha256hash
from src.experiments.exceptions import ScenarioParseError, ScenarioValidationError
from src.experiments.models import ScenarioConfig

__all__ = (
    "parse_scenario",
    "load_scenario",
    "dump_scenario",
    "scenario_hash",
)

logger = logging.getLogger(__name__)

_LINE_PATTERN = re.compile(r"line (\d+)")


def parse_scenario(text: str) -> ScenarioConfig:
    """
    Parse and validate scenario TOML text.

    Raises:
        ScenarioParseError: If the text is not valid TOML
        ScenarioValidationError: If a field violates its constraint
    """
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as e:
        line = getattr(e, "lineno", None)
        if line is None and (match := _LINE_PATTERN.search(str(e))):
            line = int(match.group(1))
        raise ScenarioParseError(f"Invalid scenario syntax: {e}", line=line)
    try:
        return ScenarioConfig.model_validate(data)
    except ValidationError as e:
        error = e.errors()[0]
        field = ".".join(str(part) for part in error["loc"]) or "<scenario>"
        raise ScenarioValidationError(f"Invalid scenario field '{field}': {error['msg']}", field=field)


def load_scenario(path: str | Path) -> ScenarioConfig:
    """
    Load a scenario file with flat dotted keys and fill mode-dependent defaults.

    Args:
        path: TOML file path

    Returns:
        Validated ScenarioConfig

    Raises:
        ScenarioParseError: If the file cannot be read or parsed
        ScenarioValidationError: If a field violates its constraint
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ScenarioParseError(f"Cannot read scenario file '{path}': {e}")
    cfg = parse_scenario(text)
    logger.info("Loaded %s scenario from %s", cfg.coupling_mode.value, path)
    return cfg


def _flatten(data: dict[str, Any], prefix: str = "") -> list[tuple[str, Any]]:
    items = []
    for key, value in data.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            items.extend(_flatten(value, f"{name}."))
        else:
            items.append((name, value))
    return items


def _format_value(value: Any) -> str:
    match value:
        case bool():
            return "true" if value else "false"
        case int():
            return str(value)
        case float():
            return repr(value)
        case str():
            return json.dumps(value)
        case list():
            return "[" + ", ".join(_format_value(item) for item in value) + "]"
    raise TypeError(f"Unsupported scenario value {value!r}")


def dump_scenario(cfg: ScenarioConfig) -> str:
    """
    Normalized scenario text: one `dotted.key = value` line per field, complex values as strings.

    Loading the output yields an equal config, and dumping that again yields identical text.
    """
    data = cfg.model_dump(mode="json", exclude_none=True)
    return "".join(f"{key} = {_format_value(value)}\n" for key, value in _flatten(data))


def scenario_hash(cfg: ScenarioConfig) -> str:
    """SHA-256 of the normalized scenario text."""
    return get_sha256hash(dump_scenario(cfg))
