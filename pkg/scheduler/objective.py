# --------------------------------------------------------
# Licensed under The MIT License
# --------------------------------------------------------

from typing import Callable, Dict, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from channel.noise import noise_power
from common import DEFAULT_OMEGA
from noma.sic import sic_rates
from noma.structures import ClusterPlan, RateVector
from qoe.profile import QoeProfile, qoe_loss, quality_deficits
from video.buffer import STALL
from video.ladder import QualityLadder
from video.queue import deliverable_s

from .state import BufferSnapshot, SlotState

Outcome = Union[int, str]
LossEvaluator = Callable[[Outcome], float]

_EPS = 1e-9


def map_demands(
    profiles: Union[Mapping[int, QoeProfile], Sequence[QoeProfile]],
    ladder: QualityLadder,
) -> Dict[int, LossEvaluator]:
    """Bind every user's profile into a per-slot loss evaluator."""
    if not isinstance(profiles, Mapping):
        profiles = {p.user_id: p for p in profiles}

    def _bind(profile: QoeProfile) -> LossEvaluator:
        return lambda outcome: qoe_loss(profile, outcome, ladder)

    return {uid: _bind(profile) for uid, profile in profiles.items()}


def stall_predicted(buffer: BufferSnapshot, slot_s: float) -> bool:
    """True when a joined client runs dry next slot unless something is delivered now.

    Content delivered in a slot plays from the following one, so the test is on
    what the buffer holds after this slot's playback.
    """
    if not buffer.joined:
        return False
    left = buffer.buffered_s
    if left >= slot_s - _EPS:
        left -= slot_s
    return left < slot_s - _EPS


def predicted_outcome(
    buffer: BufferSnapshot, level_id: Optional[int], delivered_s: float, slot_s: float
) -> Optional[Outcome]:
    """Outcome a decision is charged for; None when it costs nothing.

    Delivered content is charged at its own level. An idle user is charged a
    stall when ``stall_predicted``; otherwise the buffer plays on and idling is free.
    """
    if delivered_s > 0.0:
        return level_id
    if stall_predicted(buffer, slot_s):
        return STALL
    return None


def predicted_loss(
    profile: QoeProfile,
    buffer: BufferSnapshot,
    level_id: Optional[int],
    delivered_s: float,
    slot_s: float,
    ladder: QualityLadder,
) -> float:
    outcome = predicted_outcome(buffer, level_id, delivered_s, slot_s)
    return 0.0 if outcome is None else qoe_loss(profile, outcome, ladder)


def user_value(
    state: SlotState, user_id: int, level_id: Optional[int], rate_bps: float, omega: float
) -> Tuple[float, float, float]:
    """(p_hat, q_hat, q * p_hat - omega * q_hat) of one user."""
    backlog = state.backlogs[user_id]
    p_hat = deliverable_s(backlog, level_id, rate_bps, state.slot_s, state.ladder)
    q_hat = predicted_loss(
        state.profiles[user_id],
        state.buffers[user_id],
        level_id,
        p_hat,
        state.slot_s,
        state.ladder,
    )
    return p_hat, q_hat, backlog * p_hat - omega * q_hat


def plan_rates(state: SlotState, plan: Optional[ClusterPlan]) -> RateVector:
    """Predicted rate of every user in ``plan`` (0 for users outside it)."""
    rates = {uid: 0.0 for uid in state.user_ids}
    if plan is None:
        return rates
    noise_w = noise_power(plan.bandwidth_hz, state.noise)
    for cluster, alloc in zip(plan.clusters, plan.allocations):
        rates.update(
            sic_rates(cluster, alloc, plan.bandwidth_hz, noise_w, state.gains, plan.power_w)
        )
    return rates


def qoe_objective(state: SlotState, candidate, omega: float = DEFAULT_OMEGA) -> float:
    """Drift-plus-penalty value of ``candidate`` (anything with ``plan`` and ``levels``).

    Users are summed in ascending id order so that the schedulers reproduce the
    value bit for bit.
    """
    rates = plan_rates(state, candidate.plan)
    return sum(
        user_value(state, uid, candidate.levels.get(uid), rates[uid], omega)[2]
        for uid in state.user_ids
    )


def level_value_matrix(
    state: SlotState, user_id: int, rates: np.ndarray, omega: float
) -> np.ndarray:
    """``user_value`` for every (rate, level option) pair.

    Rows follow ``rates``; columns are the options (NONE, 1, ..., L).
    """
    ladder = state.ladder
    backlog = state.backlogs[user_id]
    profile = state.profiles[user_id]
    rates = np.asarray(rates, dtype=np.float64)
    bitrates = np.asarray([lvl.bitrate_bps for lvl in ladder], dtype=np.float64)

    chunks = np.where(
        rates[:, None] > 0, np.floor(rates[:, None] / bitrates[None, :]), 0.0
    )
    p_hat = np.minimum(backlog, chunks * state.slot_s)
    idle = predicted_loss(profile, state.buffers[user_id], None, 0.0, state.slot_s, ladder)
    level_loss = profile.w_quality * quality_deficits(ladder)
    q_hat = np.where(p_hat > 0.0, level_loss[None, :], idle)

    values = np.empty((rates.shape[0], len(ladder) + 1))
    values[:, 0] = backlog * 0.0 - omega * idle
    values[:, 1:] = backlog * p_hat - omega * q_hat
    return values
