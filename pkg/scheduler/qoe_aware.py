# --------------------------------------------------------
# Licensed under The MIT License
# --------------------------------------------------------

import numpy as np

from . import register_scheduler
from .base_scheduler import BaseScheduler
from .objective import level_value_matrix
from .state import SlotState


@register_scheduler("qoe_aware")
class QoeAwareScheduler(BaseScheduler):
    """
    Drift-plus-penalty scheduler: maximizes sum_u q_u * p_u - omega * sum_u Q_u,
    with q_u the transmitter backlog, p_u the predicted delivered seconds and
    Q_u the predicted QoE loss of the slot.
    """

    def level_values(self, state: SlotState, user_id: int, rates: np.ndarray) -> np.ndarray:
        return level_value_matrix(state, user_id, rates, self.config.omega)
