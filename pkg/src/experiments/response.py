import logging
from collections.abc import Iterable, Sequence

from pydantic import BaseModel, ConfigDict

from src.beamform import BeamformerBank, BeamformerKind
from src.channel import ChannelState, channel_state, coupling_matrix, gamma_scalar, unity_channel_state
from src.core.base_types import Frequency
from src.experiments.models import ScenarioConfig
from src.impedance import ImpedanceSet, array_impedance_matrix, check_passivity, get_mutual_model
from src.metrics import WeakScalars
from src.noise import NoiseCovariance, noise_covariance, unity_noise_covariance, weakly_coupled_scalars

__all__ = (
    "FrequencyResponse",
    "frequency_response",
    "frequency_responses",
    "design_bank",
    "weak_scalars",
    "tight_counterpart",
)

logger = logging.getLogger(__name__)


class FrequencyResponse(BaseModel):
    """Channel and noise of one scenario at one frequency and angle of arrival."""
    freq: Frequency
    aoa: float
    state: ChannelState
    noise: NoiseCovariance
    z_set: ImpedanceSet | None = None
    """Impedances; None for unity scenarios"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


def frequency_responses(f: float, cfg: ScenarioConfig, aoas: Sequence[float]) -> list[FrequencyResponse]:
    """
    Responses at one frequency for several angles of arrival.

    Impedances, P(f) and R_n(f) do not depend on the angle and are computed once.
    """
    n = cfg.geometry.n_elements
    if cfg.is_unity:
        noise = unity_noise_covariance(f, n)
        return [
            FrequencyResponse(freq=f, aoa=aoa, state=unity_channel_state(f, aoa, cfg.geometry), noise=noise)
            for aoa in aoas
        ]
    model = get_mutual_model(cfg.mutual_model)
    z_set = array_impedance_matrix(cfg.geometry, model, f)
    coupling = coupling_matrix(z_set, cfg.link)
    noise = noise_covariance(z_set, cfg.link, cfg.effective_noise, coupling=coupling)
    responses = []
    for aoa in aoas:
        link = cfg.link.model_copy(update={"aoa": aoa})
        state = channel_state(f, cfg.geometry, model, link, z_set=z_set, coupling=coupling)
        responses.append(FrequencyResponse(freq=f, aoa=aoa, state=state, noise=noise, z_set=z_set))
    return responses


def frequency_response(f: float, cfg: ScenarioConfig, aoa: float | None = None) -> FrequencyResponse:
    """Response at one frequency; the angle defaults to the link's angle of arrival."""
    return frequency_responses(f, cfg, [cfg.link.aoa if aoa is None else aoa])[0]


def design_bank(cfg: ScenarioConfig, kinds: Iterable[BeamformerKind], aoa: float | None = None) -> BeamformerBank:
    """
    Design the requested beamformers at the band centre f_c.

    Args:
        cfg: Scenario
        kinds: Strategies
        aoa: Beamforming angle; defaults to the link's angle of arrival

    Returns:
        BeamformerBank
    """
    center = frequency_response(cfg.band.center, cfg, aoa)
    if center.z_set is not None:
        check_passivity(center.z_set)
    return BeamformerBank.design(
        kinds,
        center.aoa,
        cfg.geometry,
        center.state,
        center.noise,
        td_delays=cfg.td_delays,
    )


def weak_scalars(cfg: ScenarioConfig) -> WeakScalars:
    """
    Frequency-flat scalars γ, σ_c², σ_n² of the scenario at f_c.

    Unity scenarios return unit scalars; otherwise the scalars are evaluated from
    the configured impedances, which is meaningful only for the `zero` model.
    """
    if cfg.is_unity:
        return WeakScalars()
    if cfg.mutual_model != "zero":
        logger.warning("Closed-form weakly coupled SNR requested for mutual model '%s'", cfg.mutual_model)
    f_c = cfg.band.center
    z_set = array_impedance_matrix(cfg.geometry, get_mutual_model(cfg.mutual_model), f_c)
    gamma = gamma_scalar(f_c, cfg.link, z_set.z_self_tx, z_set.z_self_rx)
    sigma_c2, sigma_n2 = weakly_coupled_scalars(z_set, cfg.link, cfg.effective_noise)
    return WeakScalars(gamma=gamma, sigma_c2=sigma_c2, sigma_n2=sigma_n2)


def tight_counterpart(cfg: ScenarioConfig) -> ScenarioConfig:
    """
    The scenario itself if it models coupling, else a tight-default scenario
    with the same element count, band, link, noise and angle set.
    """
    if not cfg.is_unity:
        return cfg
    return ScenarioConfig.model_validate(
        {
            "coupling_mode": "tight-default",
            "geometry": {"n_elements": cfg.geometry.n_elements},
            "band": cfg.band.model_dump(),
            "link": cfg.link.model_dump(),
            "noise": cfg.noise.model_dump(),
            "aoa_set": list(cfg.aoa_set),
        },
    )
