# --------------------------------------------------------
# Licensed under The MIT License
# --------------------------------------------------------

from dataclasses import dataclass
from typing import Union

import numpy as np

from utils import logger
from utils.exceptions import ConfigError
from video.buffer import NOT_JOINED, STALL
from video.ladder import QualityLadder

# regression coefficients below this magnitude count as zero
_COEF_TOL = 1e-9


@dataclass(frozen=True)
class QoeProfile:
    user_id: int
    w_quality: float = 0.5
    w_stall: float = 0.5

    def __post_init__(self):
        if not (0.0 <= self.w_quality <= 1.0 and 0.0 <= self.w_stall <= 1.0):
            raise ConfigError(
                "Profile weights should lie in [0, 1]. Got: ({}, {})".format(
                    self.w_quality, self.w_stall
                )
            )
        if abs(self.w_quality + self.w_stall - 1.0) > 1e-9:
            raise ConfigError(
                "Profile weights should sum to 1. Got: ({}, {})".format(
                    self.w_quality, self.w_stall
                )
            )

    @classmethod
    def from_quality_weight(cls, user_id: int, w_quality: float) -> "QoeProfile":
        return cls(user_id=user_id, w_quality=float(w_quality), w_stall=1.0 - float(w_quality))


def derive_profile(model, user: int, xs: np.ndarray) -> QoeProfile:
    """Quality/stall sensitivity of ``user`` from its completed QoE row.

    The completed row is regressed on the service PSNR deficit (column 0 of
    ``xs``) and stall rate (column 1). Negated slopes, clamped at zero and
    normalized, are the profile weights.
    """
    xs = np.asarray(xs, dtype=np.float64)
    y_hat = model.predict_row(user)
    design = np.column_stack([np.ones(xs.shape[0]), xs[:, 0], xs[:, 1]])
    coef, _, rank, _ = np.linalg.lstsq(design, y_hat, rcond=None)
    if rank < design.shape[1]:
        logger.warning(
            "Rank-deficient profile regression for user {}. Using (0.5, 0.5)".format(user)
        )
        return QoeProfile(user_id=user)

    weights = np.clip(-coef[1:], 0.0, None)
    weights[weights < _COEF_TOL] = 0.0
    total = weights.sum()
    if total == 0.0:
        return QoeProfile(user_id=user)
    w_quality = float(weights[0] / total)
    return QoeProfile.from_quality_weight(user, w_quality)


def quality_deficits(ladder: QualityLadder) -> np.ndarray:
    """Normalized PSNR deficit of every level, index 0 for level 1."""
    psnr = np.asarray([lvl.psnr_db for lvl in ladder], dtype=np.float64)
    span = psnr[-1] - psnr[0]
    if span <= 0.0:
        return np.zeros_like(psnr)
    return (psnr[-1] - psnr) / span


def qoe_loss(
    profile: QoeProfile, slot_outcome: Union[int, str], ladder: QualityLadder
) -> float:
    """Per-slot QoE loss in [0, 1]: weighted PSNR deficit, 1 on a stall."""
    if slot_outcome == NOT_JOINED:
        return 0.0
    if slot_outcome == STALL:
        return profile.w_quality + profile.w_stall
    return profile.w_quality * float(quality_deficits(ladder)[int(slot_outcome) - 1])
