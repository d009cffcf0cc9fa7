import numpy as np

from src.beamform import BeamformerBank, BeamformerKind
from src.experiments.models import ScenarioConfig, SweepResult
from src.experiments.pool import WorkerPool
from src.experiments.response import design_bank, frequency_response
from src.experiments.use_cases.base import SweepUseCase
from src.metrics import matched_filter_snr, snr_instantaneous

__all__ = (
    "FIG2_KINDS",
    "Fig2UseCase",
    "get_fig2_use_case",
    "run_fig2",
    "snr_column",
    "instantaneous_row",
)

SPAN_FRACTION = 0.6  # grid covers f_c ± 0.6 f_c
DEFAULT_POINTS = 1024
FIG2_KINDS = (BeamformerKind.POP, BeamformerKind.TD_I, BeamformerKind.TD_II, BeamformerKind.TD_OPT)


def snr_column(kind: BeamformerKind, prefix: str = "snr") -> str:
    return f"{prefix}_{kind.value.replace('-', '_')}"


def instantaneous_row(f: float, cfg: ScenarioConfig, bank: BeamformerBank) -> list[float]:
    """Per-beamformer SNR at f followed by the matched-filter bound."""
    response = frequency_response(f, cfg)
    p_t = cfg.band.power_per_tone
    values = [
        snr_instantaneous(w, response.state, response.noise, p_t).snr
        for w in bank.all_weights(response.state, response.noise)
    ]
    values.append(matched_filter_snr(response.state, response.noise, p_t).snr)
    return values


class Fig2UseCase(SweepUseCase):
    """Instantaneous SNR of POP, TD-I, TD-II and the per-frequency optimal delays over a wide band."""

    runner = "fig2"

    def __call__(self, cfg: ScenarioConfig, points: int | None = None) -> SweepResult:
        points = points or DEFAULT_POINTS
        self._log_start(cfg, points)
        center = cfg.band.center
        freqs = np.linspace((1.0 - SPAN_FRACTION) * center, (1.0 + SPAN_FRACTION) * center, points)
        binned = cfg.with_bin_width(float(freqs[1] - freqs[0]))
        bank = design_bank(binned, FIG2_KINDS)
        rows = self._pool.map(lambda f: [f, *instantaneous_row(f, binned, bank)], [float(f) for f in freqs])
        return self._result(
            ["freq_hz", *(snr_column(kind) for kind in FIG2_KINDS), "snr_matched_filter"],
            rows,
            self._metadata(cfg, points),
        )


def get_fig2_use_case(pool: WorkerPool) -> Fig2UseCase:
    """
    Factory function to get a Fig2UseCase instance.

    Args:
        pool: Worker pool evaluating the frequency grid

    Returns:
        Fig2UseCase bound to the pool
    """
    return Fig2UseCase(pool)


def run_fig2(cfg: ScenarioConfig, points: int | None = None, threads: int = 1) -> SweepResult:
    with WorkerPool(threads) as pool:
        return get_fig2_use_case(pool)(cfg, points)
