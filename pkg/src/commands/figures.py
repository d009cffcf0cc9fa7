import argparse
import sys
from collections.abc import Callable

from src.commands.base import EXIT_OK, Command
from src.experiments import (
    CouplingMode,
    ScenarioConfig,
    SweepResult,
    emit_csv,
    format_csv,
    run_fig1a,
    run_fig1b,
    run_fig2,
    run_fig3,
    run_sweep,
)

__all__ = (
    "fig1a_command",
    "fig1b_command",
    "fig2_command",
    "fig3_command",
    "sweep_command",
)


def _table_handler(
    runner: Callable[..., SweepResult],
) -> Callable[[ScenarioConfig, argparse.Namespace, int], int]:
    def handle(cfg: ScenarioConfig, args: argparse.Namespace, threads: int) -> int:
        result = runner(cfg, points=args.points, threads=threads)
        if args.db:
            result = result.with_db_columns()
        if args.out:
            emit_csv(result, args.out)
        else:
            sys.stdout.write(format_csv(result))
        return EXIT_OK

    return handle


fig1a_command = Command(
    name="fig1a",
    help="Instantaneous SNR versus frequency, weakly coupled array (CONV, TTD).",
    default_mode=CouplingMode.WEAK_UNITY,
    handler=_table_handler(run_fig1a),
)
fig1b_command = Command(
    name="fig1b",
    help="Average SNR versus bandwidth, weakly coupled array (closed form, approximation, quadrature).",
    default_mode=CouplingMode.WEAK_UNITY,
    handler=_table_handler(run_fig1b),
)
fig2_command = Command(
    name="fig2",
    help="Instantaneous SNR versus frequency, tightly coupled array (POP, TD-I, TD-II, optimal delays).",
    default_mode=CouplingMode.TIGHT_DEFAULT,
    handler=_table_handler(run_fig2),
)
fig3_command = Command(
    name="fig3",
    help="Squint loss versus bandwidth for weakly and tightly coupled arrays.",
    default_mode=CouplingMode.TIGHT_DEFAULT,
    handler=_table_handler(run_fig3),
)
sweep_command = Command(
    name="sweep",
    help="Frequency or bandwidth sweep of the scenario's beamformers.",
    default_mode=CouplingMode.TIGHT_DEFAULT,
    handler=_table_handler(run_sweep),
)
