import logging
import math

import numpy as np

from src.beamform import BeamformerBank, BeamformerKind
from src.experiments.models import ScenarioConfig, SweepResult
from src.experiments.pool import WorkerPool
from src.experiments.response import design_bank, frequency_responses, tight_counterpart
from src.experiments.use_cases.base import SweepUseCase
from src.metrics import (
    BandSpec,
    WeakScalars,
    avg_snr_theorem1,
    band_average,
    crossing_bandwidth,
    snr_instantaneous,
    squint_loss,
    wc_crossing_bandwidth,
)

__all__ = (
    "Fig3UseCase",
    "get_fig3_use_case",
    "run_fig3",
    "aoa_label",
    "tc_pop_losses",
)

logger = logging.getLogger(__name__)

MIN_WIDTH_FRACTION = 0.01
MAX_WIDTH_FRACTION = 1.2
DEFAULT_POINTS = 64
LOSS_LEVEL = 50.0  # %
_TC_KINDS = (BeamformerKind.POP, BeamformerKind.TD_OPT)


def aoa_label(aoa: float) -> str:
    return f"{round(math.degrees(aoa))}deg"


def tc_pop_losses(
    band: BandSpec,
    cfg: ScenarioConfig,
    aoas: list[float],
    banks: list[BeamformerBank],
) -> list[float]:
    """
    Squint loss of POP against the per-frequency optimal-delay beamformer for every angle.

    All angles share one integrand, so impedances and noise are evaluated once per node.
    """
    p_t = band.power_per_tone

    def integrand(f: float) -> np.ndarray:
        values = []
        for response, bank in zip(frequency_responses(f, cfg, aoas), banks):
            for w in bank.all_weights(response.state, response.noise):
                values.append(snr_instantaneous(w, response.state, response.noise, p_t).snr)
        return np.array(values)

    averages = band_average(integrand, band, cfg.quadrature).reshape(len(aoas), len(_TC_KINDS))
    return [squint_loss(avg_opt, avg_pop).percent for avg_pop, avg_opt in averages]


class Fig3UseCase(SweepUseCase):
    """
    Squint loss versus bandwidth for CONV in a weakly coupled array and POP in a
    tightly coupled array, for every configured angle of arrival.

    Weakly coupled losses use the closed-form average with unit scalars at λ_c/2
    spacing; tightly coupled losses integrate the instantaneous SNR numerically.
    """

    runner = "fig3"

    def __call__(self, cfg: ScenarioConfig, points: int | None = None) -> SweepResult:
        points = points or DEFAULT_POINTS
        tc_cfg = tight_counterpart(cfg)
        self._log_start(tc_cfg, points)
        aoas = list(cfg.aoa_set)
        weak = cfg.weak_geometry
        unit = WeakScalars()
        reference = float(weak.n_elements)
        banks = [design_bank(tc_cfg, _TC_KINDS, aoa) for aoa in aoas]
        center = cfg.band.center
        widths = np.geomspace(MIN_WIDTH_FRACTION * center, MAX_WIDTH_FRACTION * center, points)

        def evaluate(width: float) -> list[float]:
            band = BandSpec(center=center, width=width)
            wc = [squint_loss(reference, avg_snr_theorem1(band, aoa, weak, unit)).percent for aoa in aoas]
            tc = tc_pop_losses(tc_cfg.band.with_width(width), tc_cfg, aoas, banks)
            return [width, *wc, *tc]

        rows = self._pool.map(evaluate, [float(w) for w in widths])
        columns = [
            "bandwidth_hz",
            *(f"loss_wc_conv_{aoa_label(aoa)}" for aoa in aoas),
            *(f"loss_tc_pop_{aoa_label(aoa)}" for aoa in aoas),
        ]
        result = self._result(columns, rows, {})
        crossings = {
            f"crossing_{name}": f"{crossing_bandwidth(widths, result.column(name), LOSS_LEVEL):.6g}"
            for name in columns[1:]
        }
        exact = {
            f"crossing_wc_conv_{aoa_label(aoa)}_exact": f"{wc_crossing_bandwidth(aoa, weak, center, LOSS_LEVEL):.6g}"
            for aoa in aoas
        }
        for key, value in {**crossings, **exact}.items():
            logger.info("%s: %s Hz", key, value)
        return result.model_copy(update={"metadata": self._metadata(tc_cfg, points, **crossings, **exact)})


def get_fig3_use_case(pool: WorkerPool) -> Fig3UseCase:
    """
    Factory function to get a Fig3UseCase instance.

    Args:
        pool: Worker pool evaluating the bandwidth grid

    Returns:
        Fig3UseCase bound to the pool
    """
    return Fig3UseCase(pool)


def run_fig3(cfg: ScenarioConfig, points: int | None = None, threads: int = 1) -> SweepResult:
    with WorkerPool(threads) as pool:
        return get_fig3_use_case(pool)(cfg, points)
