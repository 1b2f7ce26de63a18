# --------------------------------------------------------
# Licensed under The MIT License
# --------------------------------------------------------

import math
from dataclasses import dataclass

from common import DEFAULT_MIN_DISTANCE_M, DEFAULT_PL0_DB, DEFAULT_PL_EXPONENT
from utils.exceptions import GeometryError
from utils.math_utils import db_to_lin

# relative slack for positions that land on the inner ring
_REL_TOL = 1e-9


@dataclass(frozen=True)
class PathLossConfig:
    """Log-distance model: ``PL0_dB - 10 * eta * log10(d / d0)``.

    Only distances of at least ``min_distance_m`` are accepted.
    """

    pl0_db: float = DEFAULT_PL0_DB
    eta: float = DEFAULT_PL_EXPONENT
    d0_m: float = 1.0
    min_distance_m: float = DEFAULT_MIN_DISTANCE_M

    @classmethod
    def from_opts(cls, opts) -> "PathLossConfig":
        return cls(
            pl0_db=getattr(opts, "channel.pl0_db", DEFAULT_PL0_DB),
            eta=getattr(opts, "channel.eta", DEFAULT_PL_EXPONENT),
            d0_m=getattr(opts, "channel.d0_m", 1.0),
            min_distance_m=getattr(opts, "cell.min_distance_m", DEFAULT_MIN_DISTANCE_M),
        )


def path_loss_db(distance_m: float, config: PathLossConfig = PathLossConfig()) -> float:
    return config.pl0_db - 10.0 * config.eta * math.log10(distance_m / config.d0_m)


def path_loss(distance_m: float, config: PathLossConfig = PathLossConfig()) -> float:
    """Linear power gain at ``distance_m`` (always in (0, 1] for d >= d0)."""
    floor = config.min_distance_m * (1.0 - _REL_TOL)
    if distance_m <= 0.0 or distance_m < floor:
        raise GeometryError(
            "geometry violation: distance {} m is below the minimum distance {} m".format(
                distance_m, config.min_distance_m
            )
        )
    return db_to_lin(path_loss_db(distance_m, config))
