# --------------------------------------------------------
# Licensed under The MIT License
# --------------------------------------------------------

import argparse

from common import (
    DEFAULT_CELL_RADIUS_M,
    DEFAULT_MIN_DISTANCE_M,
    DEFAULT_NOISE_FIGURE_DB,
    DEFAULT_NOISE_PSD_DBM_HZ,
    DEFAULT_PL0_DB,
    DEFAULT_PL_EXPONENT,
    DEFAULT_SPEED_MPS,
)

from .fading import sample_fading
from .geometry import CellGeometry, UserState, advance_mobility, place_user
from .model import ChannelModel, ChannelSample
from .noise import NoiseConfig, noise_power, noise_power_dbm
from .path_loss import PathLossConfig, path_loss, path_loss_db


def arguments_channel(parser: argparse.ArgumentParser) -> argparse.ArgumentParser:
    group = parser.add_argument_group(
        title="Channel arguments", description="Cell geometry, mobility, path loss and noise"
    )
    group.add_argument(
        "--cell.radius-m", type=float, default=DEFAULT_CELL_RADIUS_M, help="Cell radius"
    )
    group.add_argument(
        "--cell.min-distance-m",
        type=float,
        default=DEFAULT_MIN_DISTANCE_M,
        help="Minimum user distance from the base station",
    )
    group.add_argument(
        "--channel.pl0-db",
        type=float,
        default=DEFAULT_PL0_DB,
        help="Path gain at the reference distance (dB)",
    )
    group.add_argument(
        "--channel.eta",
        type=float,
        default=DEFAULT_PL_EXPONENT,
        help="Path-loss exponent",
    )
    group.add_argument(
        "--channel.d0-m", type=float, default=1.0, help="Reference distance"
    )
    group.add_argument(
        "--noise.psd-dbm-hz",
        type=float,
        default=DEFAULT_NOISE_PSD_DBM_HZ,
        help="Thermal noise power spectral density",
    )
    group.add_argument(
        "--noise.nf-db",
        type=float,
        default=DEFAULT_NOISE_FIGURE_DB,
        help="Receiver noise figure",
    )
    group.add_argument(
        "--mobility.speed-mps",
        type=float,
        default=DEFAULT_SPEED_MPS,
        help="Random-waypoint speed",
    )
    return parser
