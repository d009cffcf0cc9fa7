import logging
from collections.abc import Callable
from functools import lru_cache
from typing import Any

import numpy as np
import scipy.special
from numpy.typing import NDArray

from src.core.utils import SPEED_OF_LIGHT, sinc
from src.impedance import ArrayGeometry
from src.metrics.exceptions import IntegrationError
from src.metrics.models import BandSpec, QuadratureSpec, SnrSample, WeakScalars

__all__ = (
    "gauss_legendre_rule",
    "band_average",
    "avg_snr_numeric",
    "avg_snr_theorem1",
    "avg_snr_corollary1",
)

logger = logging.getLogger(__name__)


@lru_cache(maxsize=8)
def gauss_legendre_rule(nodes: int) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Gauss–Legendre nodes and weights on [−1, 1]."""
    x, w = scipy.special.roots_legendre(nodes)
    return x, w


def _as_values(output: Any) -> NDArray[np.float64]:
    if isinstance(output, SnrSample):
        return np.asarray(output.snr, dtype=float)
    return np.asarray(output, dtype=float)


def _composite_mean(
    fn: Callable[[Any], Any],
    lower: float,
    upper: float,
    panels: int,
    quad: QuadratureSpec,
    vectorized: bool,
) -> NDArray[np.float64]:
    x, w = gauss_legendre_rule(quad.nodes)
    edges = np.linspace(lower, upper, panels + 1)
    half = 0.5 * np.diff(edges)
    mids = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mids[:, None] + half[:, None] * x[None, :]).ravel()
    if vectorized:
        values = _as_values(fn(nodes))
    else:
        values = np.stack([_as_values(fn(float(f))) for f in nodes])
    values = values.reshape(panels, quad.nodes, *values.shape[1:])
    # fixed order: weighted sum inside each panel, then numpy's pairwise sum over panels
    panel_sums = np.einsum("j,pj...->p...", w, values) * half.reshape(-1, *([1] * (values.ndim - 2)))
    return np.sum(panel_sums, axis=0) / (upper - lower)


def band_average(
    fn: Callable[[Any], Any],
    band: BandSpec,
    quad: QuadratureSpec | None = None,
    *,
    vectorized: bool = False,
) -> NDArray[np.float64]:
    """
    Average of a scalar or vector-valued function over [f_c − Δf/2, f_c + Δf/2].

    Composite Gauss–Legendre with dyadic panel refinement until successive
    estimates agree to `quad.rtol` in every component.

    Args:
        fn: Integrand; returns a float, an array or an SnrSample
        band: Integration band
        quad: Quadrature settings
        vectorized: fn accepts an array of frequencies

    Returns:
        Band average with the integrand's shape

    Raises:
        IntegrationError: If the panel budget is exhausted before convergence
    """
    quad = quad or QuadratureSpec()
    if band.width == 0:
        if vectorized:
            return _as_values(fn(np.array([band.center])))[0]
        return _as_values(fn(band.center))
    panels = quad.initial_panels
    previous = _composite_mean(fn, band.lower, band.upper, panels, quad, vectorized)
    gap = np.inf
    while panels < quad.max_panels:
        panels *= 2
        current = _composite_mean(fn, band.lower, band.upper, panels, quad, vectorized)
        scale = np.maximum(np.abs(current), np.finfo(float).tiny)
        gap = float(np.max(np.abs(current - previous) / scale))
        logger.debug("band average Δf=%.6g Hz: %d panels, relative gap %.3e", band.width, panels, gap)
        if gap <= quad.rtol:
            return current
        previous = current
    raise IntegrationError(
        f"Band average over Δf={band.width:.6g} Hz did not converge within {quad.max_panels} panels",
        estimate=float(np.max(previous)),
        gap=gap,
    )


def avg_snr_numeric(
    snr_fn: Callable[[Any], Any],
    band: BandSpec,
    quad: QuadratureSpec | None = None,
    *,
    vectorized: bool = False,
) -> float:
    """
    Average SNR (1/Δf)∫ SNR(f) df by adaptive composite Gauss–Legendre quadrature.

    Args:
        snr_fn: Frequency → SnrSample (or float; array → array when vectorized)
        band: Averaging band, Δf = 0 returns snr_fn(f_c)
        quad: Quadrature settings
        vectorized: snr_fn accepts an array of frequencies

    Returns:
        Average linear SNR
    """
    return float(band_average(snr_fn, band, quad, vectorized=vectorized))


def avg_snr_theorem1(
    band: BandSpec,
    aoa: float,
    geometry: ArrayGeometry,
    scalars: WeakScalars,
    sinc_fn: Callable[[Any], Any] = sinc,
) -> float:
    """
    Closed-form average CONV SNR of a weakly coupled array.

    factor · [1 + 2 Σ_{m=1}^{N−1} (1 − m/N) sinc(π(δ/c) m Δf sin φ)],
    factor = |γ|²σ_c²P_T/σ_n², sinc(x) = sin(x)/x.

    Args:
        band: Averaging band
        aoa: Angle of arrival, rad
        geometry: Array geometry
        scalars: Weakly coupled scalars
        sinc_fn: Sinc convention (replaceable for mutation checks)

    Returns:
        Average linear SNR
    """
    n = geometry.n_elements
    m = np.arange(1, n)
    alpha = np.pi * geometry.spacing / SPEED_OF_LIGHT * band.width * np.sin(aoa)
    series = 1.0 + 2.0 * np.sum((1.0 - m / n) * sinc_fn(alpha * m))
    return float(scalars.factor(band.power_per_tone) * series)


def avg_snr_corollary1(
    eps: float,
    aoa: float,
    geometry: ArrayGeometry,
    scalars: WeakScalars,
    p_t: float = 1.0,
) -> float:
    """
    Small-bandwidth approximation of the closed-form average.

    N·factor·[1 − (1/36)(πδε sin φ / c)² (N−1)(N+1)]
    """
    n = geometry.n_elements
    x = np.pi * geometry.spacing * eps * np.sin(aoa) / SPEED_OF_LIGHT
    return float(n * scalars.factor(p_t) * (1.0 - x**2 * (n - 1) * (n + 1) / 36.0))
