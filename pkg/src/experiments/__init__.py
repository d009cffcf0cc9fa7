from .exceptions import NonFiniteResult, OutputError, ScenarioParseError, ScenarioValidationError
from .models import CheckResult, CouplingMode, ScenarioConfig, SweepKind, SweepResult, SweepSpec, ValidationReport
from .output import emit_csv, format_csv
from .pool import WorkerPool
from .response import FrequencyResponse, design_bank, frequency_response, frequency_responses, weak_scalars
from .scenario import dump_scenario, load_scenario, parse_scenario, scenario_hash
from .use_cases import (
    run_fig1a,
    run_fig1b,
    run_fig2,
    run_fig3,
    run_sweep,
    validate,
)

__all__ = (
    "NonFiniteResult",
    "OutputError",
    "ScenarioParseError",
    "ScenarioValidationError",
    "CheckResult",
    "CouplingMode",
    "ScenarioConfig",
    "SweepKind",
    "SweepResult",
    "SweepSpec",
    "ValidationReport",
    "emit_csv",
    "format_csv",
    "WorkerPool",
    "FrequencyResponse",
    "design_bank",
    "frequency_response",
    "frequency_responses",
    "weak_scalars",
    "dump_scenario",
    "load_scenario",
    "parse_scenario",
    "scenario_hash",
    "run_fig1a",
    "run_fig1b",
    "run_fig2",
    "run_fig3",
    "run_sweep",
    "validate",
)
