# --------------------------------------------------------
# Licensed under The MIT License
# --------------------------------------------------------

from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np


@dataclass(frozen=True)
class UserMetrics:
    user_id: int
    mean_psnr_db: Optional[float]
    stall_count: int
    join_time_slots: Optional[int]
    mean_rate_bps: Optional[float]
    mean_qoe_loss: Optional[float]
    delivered_s: float
    played_s: float
    final_buffer_s: float


def _mean_or_none(values: List[float]) -> Optional[float]:
    return float(np.mean(values)) if len(values) > 0 else None


@dataclass
class RunMetrics:
    horizon_slots: int
    users: List[UserMetrics]
    mean_objective: Optional[float]
    trace: List[Dict] = field(default_factory=list, repr=False)

    @property
    def mean_psnr_db(self) -> Optional[float]:
        return _mean_or_none(
            [u.mean_psnr_db for u in self.users if u.mean_psnr_db is not None]
        )

    @property
    def stall_count(self) -> int:
        return int(sum(u.stall_count for u in self.users))

    @property
    def join_time_slots(self) -> Optional[float]:
        return _mean_or_none(
            [u.join_time_slots for u in self.users if u.join_time_slots is not None]
        )

    @property
    def mean_rate_bps(self) -> Optional[float]:
        return _mean_or_none(
            [u.mean_rate_bps for u in self.users if u.mean_rate_bps is not None]
        )

    def summary(self) -> Dict[str, Optional[float]]:
        """Aggregate values in sweep CSV column order."""
        return {
            "mean_psnr_db": self.mean_psnr_db,
            "stall_count": self.stall_count,
            "join_time_slots": self.join_time_slots,
            "mean_rate_bps": self.mean_rate_bps,
        }

    def user(self, user_id: int) -> UserMetrics:
        for u in self.users:
            if u.user_id == user_id:
                return u
        raise KeyError(user_id)

    def same_as(self, other: "RunMetrics") -> bool:
        return (
            self.horizon_slots == other.horizon_slots
            and self.users == other.users
            and self.mean_objective == other.mean_objective
        )
