import numpy as np

from src.experiments.models import ScenarioConfig, SweepKind, SweepResult
from src.experiments.pool import WorkerPool
from src.experiments.response import design_bank
from src.experiments.use_cases.base import SweepUseCase
from src.experiments.use_cases.fig2 import instantaneous_row, snr_column
from src.metrics import band_average

__all__ = (
    "SweepRunUseCase",
    "get_sweep_use_case",
    "run_sweep",
)


class SweepRunUseCase(SweepUseCase):
    """
    Generic sweep over the scenario's grid for the scenario's beamformers.

    Frequency sweeps report instantaneous SNR per beamformer and the matched-filter
    bound; bandwidth sweeps report the same quantities averaged over a band
    of each width around f_c.
    """

    runner = "sweep"

    def __call__(self, cfg: ScenarioConfig, points: int | None = None) -> SweepResult:
        if points is not None:
            cfg = cfg.with_points(points)
        sweep = cfg.sweep
        self._log_start(cfg, sweep.points)
        bank = design_bank(cfg, cfg.beamformers)
        names = [snr_column(kind) for kind in cfg.beamformers] + ["snr_matched_filter"]
        grid = [float(x) for x in sweep.grid]

        if sweep.kind is SweepKind.FREQUENCY:
            rows = self._pool.map(lambda f: [f, *instantaneous_row(f, cfg, bank)], grid)
            columns = ["freq_hz", *names]
        else:

            def evaluate(width: float) -> list[float]:
                average = band_average(
                    lambda f: np.array(instantaneous_row(f, cfg, bank)),
                    cfg.band.with_width(width),
                    cfg.quadrature,
                )
                return [width, *(float(v) for v in average)]

            rows = self._pool.map(evaluate, grid)
            columns = ["bandwidth_hz", *(f"avg_{name}" for name in names)]
        return self._result(columns, rows, self._metadata(cfg, sweep.points))


def get_sweep_use_case(pool: WorkerPool) -> SweepRunUseCase:
    """
    Factory function to get a SweepRunUseCase instance.

    Args:
        pool: Worker pool evaluating the sweep grid

    Returns:
        SweepRunUseCase bound to the pool
    """
    return SweepRunUseCase(pool)


def run_sweep(cfg: ScenarioConfig, points: int | None = None, threads: int = 1) -> SweepResult:
    with WorkerPool(threads) as pool:
        return get_sweep_use_case(pool)(cfg, points)
