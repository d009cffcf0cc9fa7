import numpy as np

from src.experiments.models import ScenarioConfig, SweepResult
from src.experiments.pool import WorkerPool
from src.experiments.response import weak_scalars
from src.experiments.use_cases.base import SweepUseCase
from src.metrics import avg_snr_corollary1, avg_snr_numeric, avg_snr_theorem1, conv_wc_snr_profile

__all__ = (
    "Fig1bUseCase",
    "get_fig1b_use_case",
    "run_fig1b",
)

MIN_WIDTH_FRACTION = 1e-3
MAX_WIDTH_FRACTION = 0.4
DEFAULT_POINTS = 64


class Fig1bUseCase(SweepUseCase):
    """Average CONV SNR of a weakly coupled array versus bandwidth by closed form, approximation and quadrature."""

    runner = "fig1b"

    def __call__(self, cfg: ScenarioConfig, points: int | None = None) -> SweepResult:
        points = points or DEFAULT_POINTS
        self._log_start(cfg, points)
        aoa = cfg.link.aoa
        geometry = cfg.geometry
        scalars = weak_scalars(cfg)
        center = cfg.band.center
        widths = np.geomspace(MIN_WIDTH_FRACTION * center, MAX_WIDTH_FRACTION * center, points)

        def evaluate(width: float) -> list[float]:
            band = cfg.band.with_width(width)
            numeric = avg_snr_numeric(
                lambda freqs: conv_wc_snr_profile(freqs, band, aoa, geometry, scalars),
                band,
                cfg.quadrature,
                vectorized=True,
            )
            return [
                width,
                avg_snr_theorem1(band, aoa, geometry, scalars),
                avg_snr_corollary1(width, aoa, geometry, scalars, band.power_per_tone),
                numeric,
            ]

        rows = self._pool.map(evaluate, [float(w) for w in widths])
        return self._result(
            ["bandwidth_hz", "avg_snr_theorem", "avg_snr_corollary", "avg_snr_numeric"],
            rows,
            self._metadata(cfg, points),
        )


def get_fig1b_use_case(pool: WorkerPool) -> Fig1bUseCase:
    """
    Factory function to get a Fig1bUseCase instance.

    Args:
        pool: Worker pool evaluating the bandwidth grid

    Returns:
        Fig1bUseCase bound to the pool
    """
    return Fig1bUseCase(pool)


def run_fig1b(cfg: ScenarioConfig, points: int | None = None, threads: int = 1) -> SweepResult:
    with WorkerPool(threads) as pool:
        return get_fig1b_use_case(pool)(cfg, points)
