import numpy as np

from src.beamform import conv_weights
from src.experiments.models import ScenarioConfig, SweepResult
from src.experiments.pool import WorkerPool
from src.experiments.response import frequency_response, weak_scalars
from src.experiments.use_cases.base import SweepUseCase
from src.metrics import snr_conv_wc_closed, snr_conv_wc_direct, snr_instantaneous, snr_ttd_wc

__all__ = (
    "Fig1aUseCase",
    "get_fig1a_use_case",
    "run_fig1a",
)

SPAN_FRACTION = 0.1  # grid covers f_c ± 0.1 f_c
DEFAULT_POINTS = 1024


class Fig1aUseCase(SweepUseCase):
    """
    Instantaneous SNR versus frequency of a weakly coupled array.

    Columns: closed-form CONV SNR, the same by direct summation, CONV SNR from the
    general combiner formula, and the squint-free TTD SNR.
    """

    runner = "fig1a"

    def __call__(self, cfg: ScenarioConfig, points: int | None = None) -> SweepResult:
        points = points or DEFAULT_POINTS
        self._log_start(cfg, points)
        band = cfg.band
        aoa = cfg.link.aoa
        freqs = np.linspace((1.0 - SPAN_FRACTION) * band.center, (1.0 + SPAN_FRACTION) * band.center, points)
        binned = cfg.with_bin_width(float(freqs[1] - freqs[0]))
        scalars = weak_scalars(binned)
        weights = conv_weights(band.center, aoa, cfg.geometry)
        ttd = snr_ttd_wc(scalars, cfg.geometry.n_elements, band.power_per_tone).snr

        def evaluate(f: float) -> list[float]:
            response = frequency_response(f, binned)
            return [
                f,
                snr_conv_wc_closed(f, band, aoa, cfg.geometry, scalars).snr,
                snr_conv_wc_direct(f, band, aoa, cfg.geometry, scalars).snr,
                snr_instantaneous(weights, response.state, response.noise, band.power_per_tone).snr,
                ttd,
            ]

        rows = self._pool.map(evaluate, [float(f) for f in freqs])
        return self._result(
            ["freq_hz", "snr_conv_closed", "snr_conv_direct", "snr_conv_instantaneous", "snr_ttd_wc"],
            rows,
            self._metadata(cfg, points),
        )


def get_fig1a_use_case(pool: WorkerPool) -> Fig1aUseCase:
    """
    Factory function to get a Fig1aUseCase instance.

    Args:
        pool: Worker pool evaluating the frequency grid

    Returns:
        Fig1aUseCase bound to the pool
    """
    return Fig1aUseCase(pool)


def run_fig1a(cfg: ScenarioConfig, points: int | None = None, threads: int = 1) -> SweepResult:
    with WorkerPool(threads) as pool:
        return get_fig1a_use_case(pool)(cfg, points)
