from .channel import (
    channel_state,
    coupling_matrix,
    gamma_scalar,
    path_gain,
    steering_vector,
    unity_channel_state,
)
from .exceptions import SingularCoupling, SingularSource
from .models import ChannelState, LinkConfig
