# --------------------------------------------------------
# Licensed under The MIT License
# --------------------------------------------------------

from typing import NamedTuple, Optional, Sequence

import numpy as np

from .buffer import STALL, PlayEntry
from .ladder import QualityLadder


class QualityReport(NamedTuple):
    mean_psnr_db: Optional[float]  # None marks "no playback"
    stall_count: int
    join_time_slots: Optional[int]


def quality_metrics(
    played_log: Sequence[PlayEntry],
    ladder: QualityLadder,
    join_slot: Optional[int] = None,
    request_slot: int = 0,
) -> QualityReport:
    """Mean PSNR over played slots, stall count and join time.

    Stall slots do not enter the PSNR mean. A log without played slots gives
    ``mean_psnr_db=None``.
    """
    psnrs = [ladder.psnr(level) for _, level in played_log if level != STALL]
    stalls = sum(1 for _, level in played_log if level == STALL)
    return QualityReport(
        mean_psnr_db=float(np.mean(psnrs)) if psnrs else None,
        stall_count=stalls,
        join_time_slots=None if join_slot is None else join_slot - request_slot,
    )
