from .exceptions import DesignFrequencyMismatch, InvalidBeamformer
from .models import Beamformer, BeamformerKind, WeightVector
from .strategies import BeamformerBank
from .weights import (
    conv_weights,
    optimal_delays,
    pop_weights,
    td1_geometric_delays,
    td2_center_delays,
    td_generic_weights,
    ttd_wc_weights,
)
