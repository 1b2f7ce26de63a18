# --------------------------------------------------------
# Licensed under The MIT License
# --------------------------------------------------------

import math
from dataclasses import dataclass
from typing import Optional, Tuple

from common import DEFAULT_VIDEO_LENGTH_S

from .ladder import QualityLadder


@dataclass
class SourceQueue:
    """Transmitter-side backlog of a live feed; ``backlog_s`` is q_u(t)."""

    user_id: int
    backlog_s: float = 0.0
    next_chunk_index: int = 0
    remaining_video_s: float = DEFAULT_VIDEO_LENGTH_S


@dataclass(frozen=True)
class ChunkReceipt:
    user_id: int
    slot: int
    level_id: Optional[int]
    delivered_s: float
    success: bool = True


def source_arrival(queue: SourceQueue, slot_s: float) -> SourceQueue:
    """Append one slot of live content, capped by what is left of the video."""
    if slot_s <= 0:
        raise ValueError("Slot duration should be positive. Got: {}".format(slot_s))
    arrival = min(slot_s, queue.remaining_video_s)
    if arrival > 0.0:
        queue.backlog_s += arrival
        queue.remaining_video_s -= arrival
    return queue


def chunks_for_rate(rate_bps: float, bitrate_bps: float) -> int:
    return int(math.floor(rate_bps / bitrate_bps)) if rate_bps > 0 else 0


def deliverable_s(
    backlog_s: float,
    level_id: Optional[int],
    rate_bps: float,
    slot_s: float,
    ladder: QualityLadder,
) -> float:
    """Seconds ``transmit`` would deliver on a successful decode."""
    if level_id is None:
        return 0.0
    n_chunks = chunks_for_rate(rate_bps, ladder.bitrate(level_id))
    return min(backlog_s, n_chunks * slot_s)


def transmit(
    queue: SourceQueue,
    level_id: Optional[int],
    rate_bps: float,
    slot_s: float,
    decode_success: bool,
    ladder: QualityLadder,
    slot: int = 0,
) -> Tuple[ChunkReceipt, SourceQueue]:
    """Whole-chunk delivery at a single level; nothing is delivered on a decode failure."""
    delivered = (
        deliverable_s(queue.backlog_s, level_id, rate_bps, slot_s, ladder)
        if decode_success
        else 0.0
    )
    if delivered > 0.0:
        queue.backlog_s -= delivered
        queue.next_chunk_index += int(math.ceil(delivered / slot_s - 1e-9))
    receipt = ChunkReceipt(
        user_id=queue.user_id,
        slot=slot,
        level_id=level_id,
        delivered_s=delivered,
        success=decode_success,
    )
    return receipt, queue
