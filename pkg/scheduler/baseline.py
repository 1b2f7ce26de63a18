# --------------------------------------------------------
# Licensed under The MIT License
# --------------------------------------------------------

import numpy as np

from . import register_scheduler
from .base_scheduler import BaseScheduler
from .state import SlotState


@register_scheduler("baseline")
class MaxSumRateScheduler(BaseScheduler):
    """
    QoE-oblivious baseline: maximizes the sum of predicted rates, then serves
    every user at the highest level its rate can carry.
    """

    def level_values(self, state: SlotState, user_id: int, rates: np.ndarray) -> np.ndarray:
        rates = np.asarray(rates, dtype=np.float64)
        bitrates = np.asarray([lvl.bitrate_bps for lvl in state.ladder], dtype=np.float64)
        # bitrates increase with the level, so the fitting count is the highest fitting level
        highest = (bitrates[None, :] <= rates[:, None]).sum(axis=1)
        values = np.full((rates.shape[0], len(state.ladder) + 1), -np.inf)
        values[np.arange(rates.shape[0]), highest] = rates
        return values
