# --------------------------------------------------------
# Licensed under The MIT License
# --------------------------------------------------------

from dataclasses import dataclass, field
from typing import List, Optional, Tuple, Union

from .queue import ChunkReceipt

STALL = "STALL"
NOT_JOINED = "NOT-JOINED"

_EPS = 1e-9

# a played_log entry: (slot, level_id) or (slot, STALL)
PlayEntry = Tuple[int, Union[int, str]]


@dataclass
class ClientBuffer:
    user_id: int
    buffered_s: float = 0.0
    joined: bool = False
    join_slot: Optional[int] = None
    request_slot: int = 0
    stall_count: int = 0
    played_log: List[PlayEntry] = field(default_factory=list)
    # FIFO of [seconds, level_id] in delivery order
    segments: List[List] = field(default_factory=list)
    last_outcome: Union[int, str] = NOT_JOINED
    played_s: float = 0.0
    delivered_s: float = 0.0

    def can_play(self, slot_s: float) -> bool:
        return self.buffered_s >= slot_s - _EPS

    def _consume(self, seconds: float) -> int:
        """Play ``seconds`` off the FIFO and return the level that covered most of them.

        Ties go to the segment played first.
        """
        level, longest = self.segments[0][1], 0.0
        while seconds > _EPS and self.segments:
            head = self.segments[0]
            take = min(head[0], seconds)
            if take > longest + _EPS:
                level, longest = head[1], take
            head[0] -= take
            seconds -= take
            if head[0] <= _EPS:
                self.segments.pop(0)
        return level


def playback_step(
    buffer: ClientBuffer,
    receipt: Optional[ChunkReceipt],
    slot_s: float,
    startup_threshold_s: float,
    slot: int,
) -> ClientBuffer:
    """Advance the client by one slot; the buffer is updated in place.

    Order: join check, then playback from the pre-delivery buffer, then the
    delivered content is appended. Content received in slot t plays from t+1,
    and the join slot itself neither plays nor stalls.
    """
    delivered = 0.0 if receipt is None else receipt.delivered_s

    just_joined = False
    if not buffer.joined and buffer.buffered_s + delivered >= startup_threshold_s - _EPS:
        buffer.joined = True
        buffer.join_slot = slot
        just_joined = True

    played = 0.0
    if not buffer.joined or just_joined:
        buffer.last_outcome = NOT_JOINED
    elif buffer.can_play(slot_s):
        level = buffer._consume(slot_s)
        played = slot_s
        buffer.played_log.append((slot, level))
        buffer.last_outcome = level
    else:
        buffer.stall_count += 1
        buffer.played_log.append((slot, STALL))
        buffer.last_outcome = STALL

    if delivered > 0.0:
        buffer.segments.append([delivered, receipt.level_id])
    buffer.buffered_s = max(0.0, buffer.buffered_s + delivered - played)
    buffer.played_s += played
    buffer.delivered_s += delivered
    return buffer
