from .covariance import noise_covariance, unity_noise_covariance, weakly_coupled_scalars
from .exceptions import ModelInconsistency, SingularNoiseCovariance
from .models import DEFAULT_NOISE_BANDWIDTH, NoiseConfig, NoiseCovariance
