# --------------------------------------------------------
# Licensed under The MIT License
# --------------------------------------------------------

from dataclasses import dataclass
from typing import List

from common import DEFAULT_SLOT_S, DEFAULT_SPEED_MPS
from utils.common_utils import (
    STREAM_FADING,
    STREAM_MOBILITY,
    STREAM_PLACEMENT,
    make_rng,
)

from .fading import sample_fading
from .geometry import CellGeometry, UserState, advance_mobility, place_user
from .noise import NoiseConfig
from .path_loss import PathLossConfig, path_loss


@dataclass(frozen=True)
class ChannelSample:
    user_id: int
    slot: int
    path_loss_lin: float
    fading_lin: float

    @property
    def gain_lin(self) -> float:
        return self.path_loss_lin * self.fading_lin


class ChannelModel(object):
    """Per-run channel generator: mobility, path loss and block Rayleigh fading.

    Every random draw comes from a stream keyed by ``(seed, stream, slot, user_id)``,
    so two runs with the same seed produce identical samples.
    """

    def __init__(self, opts, seed: int) -> None:
        super(ChannelModel, self).__init__()
        self.geometry = CellGeometry.from_opts(opts)
        self.path_loss_cfg = PathLossConfig.from_opts(opts)
        self.noise_cfg = NoiseConfig.from_opts(opts)
        self.speed_mps = getattr(opts, "mobility.speed_mps", DEFAULT_SPEED_MPS)
        self.slot_s = getattr(opts, "video.slot_s", DEFAULT_SLOT_S)
        self.seed = seed

    def initial_users(self, n_users: int) -> List[UserState]:
        return [
            place_user(
                user_id=uid,
                geometry=self.geometry,
                rng=make_rng(self.seed, STREAM_PLACEMENT, uid),
                speed_mps=self.speed_mps,
            )
            for uid in range(n_users)
        ]

    def advance(self, users: List[UserState], slot: int) -> List[UserState]:
        moved = []
        for user in users:
            rng = make_rng(self.seed, STREAM_MOBILITY, slot, user.user_id)
            moved.extend(
                advance_mobility([user], self.slot_s, rng, geometry=self.geometry)
            )
        return moved

    def sample(self, users: List[UserState], slot: int) -> List[ChannelSample]:
        samples = []
        for user in users:
            rng = make_rng(self.seed, STREAM_FADING, slot, user.user_id)
            samples.append(
                ChannelSample(
                    user_id=user.user_id,
                    slot=slot,
                    path_loss_lin=path_loss(user.distance_m, self.path_loss_cfg),
                    fading_lin=sample_fading(rng),
                )
            )
        return samples

    def __repr__(self) -> str:
        return "{}(\n \t radius_m={}\n \t min_distance_m={}\n \t pl0_db={}\n \t eta={}\n \t speed_mps={}\n )".format(
            self.__class__.__name__,
            self.geometry.radius_m,
            self.geometry.min_distance_m,
            self.path_loss_cfg.pl0_db,
            self.path_loss_cfg.eta,
            self.speed_mps,
        )
