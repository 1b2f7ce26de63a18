# --------------------------------------------------------
# Licensed under The MIT License
# --------------------------------------------------------

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Tuple

from channel.noise import NoiseConfig
from common import (
    DEFAULT_DECISION_SPACE_LIMIT,
    DEFAULT_MAX_CLUSTER_SIZE,
    DEFAULT_OMEGA,
    DEFAULT_POWER_GRID_STEP,
    SUPPORTED_SCHEDULER_MODES,
)
from noma.structures import ClusterPlan, NomaConfig
from qoe.profile import QoeProfile
from utils.exceptions import ConfigError
from video.buffer import ClientBuffer
from video.ladder import QualityLadder


@dataclass(frozen=True)
class SchedulerConfig:
    mode: str = "qoe_aware"
    omega: float = DEFAULT_OMEGA
    power_grid_step: float = DEFAULT_POWER_GRID_STEP
    max_cluster_size: int = DEFAULT_MAX_CLUSTER_SIZE
    decision_space_limit: int = DEFAULT_DECISION_SPACE_LIMIT
    # per-user minimum predicted rate; None disables the constraint
    min_rate_bps: Optional[Tuple[float, ...]] = None

    def __post_init__(self):
        if self.mode not in SUPPORTED_SCHEDULER_MODES:
            raise ConfigError(
                "Scheduler mode should be one of {}. Got: {}".format(
                    SUPPORTED_SCHEDULER_MODES, self.mode
                )
            )
        if not self.omega >= 0:
            raise ConfigError("omega should be non-negative. Got: {}".format(self.omega))
        if self.decision_space_limit < 1:
            raise ConfigError(
                "Decision space limit should be positive. Got: {}".format(
                    self.decision_space_limit
                )
            )

    @classmethod
    def from_opts(cls, opts) -> "SchedulerConfig":
        min_rate = getattr(opts, "sched.min_rate_bps", None)
        return cls(
            mode=str(getattr(opts, "sched.mode", "qoe_aware")).lower(),
            omega=float(getattr(opts, "sched.omega", DEFAULT_OMEGA)),
            power_grid_step=float(
                getattr(opts, "noma.power_grid_step", DEFAULT_POWER_GRID_STEP)
            ),
            max_cluster_size=int(
                getattr(opts, "noma.max_cluster_size", DEFAULT_MAX_CLUSTER_SIZE)
            ),
            decision_space_limit=int(
                getattr(opts, "sched.decision_space_limit", DEFAULT_DECISION_SPACE_LIMIT)
            ),
            min_rate_bps=tuple(float(r) for r in min_rate) if min_rate else None,
        )

    def min_rate(self, user_id: int) -> float:
        if self.min_rate_bps is None:
            return 0.0
        if len(self.min_rate_bps) == 1:
            return self.min_rate_bps[0]
        return self.min_rate_bps[user_id] if user_id < len(self.min_rate_bps) else 0.0


@dataclass(frozen=True)
class BufferSnapshot:
    buffered_s: float = 0.0
    joined: bool = False

    @classmethod
    def of(cls, buffer: ClientBuffer) -> "BufferSnapshot":
        return cls(buffered_s=buffer.buffered_s, joined=buffer.joined)


@dataclass(frozen=True)
class SlotState:
    """What the scheduler sees at the start of slot ``slot``."""

    slot: int
    gains: Mapping[int, float]
    backlogs: Mapping[int, float]
    buffers: Mapping[int, BufferSnapshot]
    profiles: Mapping[int, QoeProfile]
    bandwidth_hz: float
    noma: NomaConfig = NomaConfig()
    ladder: QualityLadder = field(default_factory=lambda: QualityLadder.from_opts(None))
    slot_s: float = 1.0
    noise: NoiseConfig = NoiseConfig()

    def __post_init__(self):
        users = set(self.gains)
        for name in ("backlogs", "buffers", "profiles"):
            if set(getattr(self, name)) != users:
                raise ConfigError(
                    "Slot state {} cover users {}, gains cover {}".format(
                        name, sorted(getattr(self, name)), sorted(users)
                    )
                )
        if self.bandwidth_hz <= 0:
            raise ConfigError(
                "Bandwidth should be positive. Got: {}".format(self.bandwidth_hz)
            )

    @property
    def user_ids(self) -> List[int]:
        return sorted(self.gains)


@dataclass(frozen=True)
class SlotDecision:
    plan: Optional[ClusterPlan]
    levels: Dict[int, Optional[int]]
    rates: Dict[int, float]
    delivered_s: Dict[int, float]
    objective: float = 0.0

    @classmethod
    def empty(cls) -> "SlotDecision":
        return cls(plan=None, levels={}, rates={}, delivered_s={}, objective=0.0)
