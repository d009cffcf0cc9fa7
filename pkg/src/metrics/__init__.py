from .averaging import (
    avg_snr_corollary1,
    avg_snr_numeric,
    avg_snr_theorem1,
    band_average,
    gauss_legendre_rule,
)
from .exceptions import IntegrationError, NumericalDegeneracy
from .loss import crossing_bandwidth, squint_loss, wc_crossing_bandwidth
from .models import BandSpec, QuadratureSpec, SnrSample, SquintLoss, WeakScalars
from .snr import (
    array_factor,
    conv_wc_snr_profile,
    matched_filter_snr,
    snr_conv_wc_closed,
    snr_conv_wc_direct,
    snr_instantaneous,
    snr_ttd_wc,
    squint_phase,
)

__all__ = (
    "avg_snr_corollary1",
    "avg_snr_numeric",
    "avg_snr_theorem1",
    "band_average",
    "gauss_legendre_rule",
    "IntegrationError",
    "NumericalDegeneracy",
    "crossing_bandwidth",
    "squint_loss",
    "wc_crossing_bandwidth",
    "BandSpec",
    "QuadratureSpec",
    "SnrSample",
    "SquintLoss",
    "WeakScalars",
    "array_factor",
    "conv_wc_snr_profile",
    "matched_filter_snr",
    "snr_conv_wc_closed",
    "snr_conv_wc_direct",
    "snr_instantaneous",
    "snr_ttd_wc",
    "squint_phase",
)
