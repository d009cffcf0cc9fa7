from .circuit import (
    SeriesRlc,
    array_impedance_matrix,
    check_passivity,
    chu_quality_factor,
    chu_self_impedance,
    chu_series_rlc,
    mutual_impedance,
)
from .models import TX_RADIUS_FACTOR, AntennaElement, ArrayGeometry, ImpedanceSet
from .mutual import SERIES_RESISTANCE, CmsClosedFormModel, MutualImpedanceModel, ZeroCouplingModel, get_mutual_model
