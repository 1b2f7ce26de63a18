# --------------------------------------------------------
# Licensed under The MIT License
# --------------------------------------------------------

import math
from dataclasses import dataclass

from common import DEFAULT_NOISE_FIGURE_DB, DEFAULT_NOISE_PSD_DBM_HZ
from utils.exceptions import ConfigError
from utils.math_utils import dbm_to_watt


@dataclass(frozen=True)
class NoiseConfig:
    psd_dbm_hz: float = DEFAULT_NOISE_PSD_DBM_HZ
    noise_figure_db: float = DEFAULT_NOISE_FIGURE_DB

    def __post_init__(self):
        if self.psd_dbm_hz >= 0:
            raise ConfigError(
                "Noise PSD should be negative (dBm/Hz). Got: {}".format(self.psd_dbm_hz)
            )

    @classmethod
    def from_opts(cls, opts) -> "NoiseConfig":
        return cls(
            psd_dbm_hz=getattr(opts, "noise.psd_dbm_hz", DEFAULT_NOISE_PSD_DBM_HZ),
            noise_figure_db=getattr(opts, "noise.nf_db", DEFAULT_NOISE_FIGURE_DB),
        )


def noise_power_dbm(bandwidth_hz: float, config: NoiseConfig = NoiseConfig()) -> float:
    if bandwidth_hz <= 0:
        raise ConfigError("Bandwidth should be positive. Got: {}".format(bandwidth_hz))
    return config.psd_dbm_hz + config.noise_figure_db + 10.0 * math.log10(bandwidth_hz)


def noise_power(bandwidth_hz: float, config: NoiseConfig = NoiseConfig()) -> float:
    """Thermal noise plus receiver noise figure over ``bandwidth_hz``, in watts."""
    return dbm_to_watt(noise_power_dbm(bandwidth_hz, config))
