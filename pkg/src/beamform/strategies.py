from collections.abc import Iterable, Sequence
from typing import Self

import numpy as np
from numpy.typing import ArrayLike

from src.beamform.exceptions import InvalidBeamformer
from src.beamform.models import Beamformer, BeamformerKind, WeightVector
from src.beamform.weights import (
    conv_weights,
    optimal_delays,
    pop_weights,
    td1_geometric_delays,
    td2_center_delays,
    td_generic_weights,
)
from src.channel import ChannelState
from src.impedance import ArrayGeometry
from src.noise import NoiseCovariance

__all__ = ("BeamformerBank",)


class BeamformerBank:
    """
    Set of beamformers designed once at f_c and evaluated at any frequency.

    Attributes:
        beamformers: Designed beamformers, in request order
    """

    def __init__(self, beamformers: Sequence[Beamformer]):
        self.beamformers = tuple(beamformers)

    @classmethod
    def design(
        cls,
        kinds: Iterable[BeamformerKind],
        aoa: float,
        geometry: ArrayGeometry,
        center_state: ChannelState,
        center_noise: NoiseCovariance,
        td_delays: ArrayLike | None = None,
    ) -> Self:
        """
        Fix the design data of every requested strategy.

        Args:
            kinds: Strategies to design
            aoa: Beamforming angle, rad
            geometry: Array geometry
            center_state: Channel at the design frequency f_c
            center_noise: Noise covariance at f_c
            td_delays: Delays for TD_GENERIC, s

        Returns:
            BeamformerBank with one Beamformer per kind

        Raises:
            InvalidBeamformer: If TD_GENERIC is requested without N delays
        """
        f_c = center_state.freq
        designed = []
        for kind in kinds:
            match kind:
                case BeamformerKind.CONV:
                    weights = conv_weights(f_c, aoa, geometry).weights
                    designed.append(Beamformer(kind=kind, design_freq=f_c, design_weights=weights))
                case BeamformerKind.POP:
                    weights = pop_weights(f_c, center_state, center_noise).weights
                    designed.append(Beamformer(kind=kind, design_freq=f_c, design_weights=weights))
                case BeamformerKind.TTD_WC | BeamformerKind.TD_I:
                    designed.append(Beamformer(kind=kind, delays=td1_geometric_delays(aoa, geometry)))
                case BeamformerKind.TD_II:
                    delays = td2_center_delays(f_c, center_state, center_noise)
                    designed.append(Beamformer(kind=kind, design_freq=f_c, delays=delays))
                case BeamformerKind.TD_GENERIC:
                    if td_delays is None or len(td_delays) != geometry.n_elements:
                        raise InvalidBeamformer(f"td-generic requires exactly {geometry.n_elements} delays.")
                    designed.append(Beamformer(kind=kind, delays=np.asarray(td_delays, dtype=float)))
                case BeamformerKind.TD_OPT:
                    designed.append(Beamformer(kind=kind))
        return cls(designed)

    @property
    def kinds(self) -> tuple[BeamformerKind, ...]:
        return tuple(bf.kind for bf in self.beamformers)

    @staticmethod
    def weights(beamformer: Beamformer, state: ChannelState, rn: NoiseCovariance) -> WeightVector:
        """
        Weights of one beamformer at the frequency of `state`.

        Args:
            beamformer: Designed beamformer
            state: Channel at the evaluation frequency
            rn: Noise covariance at the evaluation frequency

        Returns:
            WeightVector at state.freq
        """
        f = state.freq
        if beamformer.kind.is_phase_controlled:
            return WeightVector(freq=f, weights=beamformer.design_weights)
        if beamformer.kind is BeamformerKind.TD_OPT:
            return td_generic_weights(optimal_delays(f, state, rn), f)
        return td_generic_weights(beamformer.delays, f)

    def all_weights(self, state: ChannelState, rn: NoiseCovariance) -> list[WeightVector]:
        """Weights of every beamformer in the bank at the frequency of `state`."""
        return [self.weights(bf, state, rn) for bf in self.beamformers]
