# --------------------------------------------------------
# Licensed under The MIT License
# --------------------------------------------------------

from dataclasses import dataclass
from typing import Dict, Mapping, Optional, Sequence, Tuple

from common import (
    DEFAULT_MAX_CLUSTER_SIZE,
    DEFAULT_POWER_GRID_STEP,
    DEFAULT_TOTAL_POWER_DBM,
)
from utils.exceptions import ConfigError
from utils.math_utils import dbm_to_watt

# per-user achievable rate in bits/second
RateVector = Dict[int, float]


@dataclass(frozen=True)
class NomaConfig:
    total_power_w: float = dbm_to_watt(DEFAULT_TOTAL_POWER_DBM)
    max_cluster_size: int = DEFAULT_MAX_CLUSTER_SIZE
    power_grid_step: float = DEFAULT_POWER_GRID_STEP
    stale_csi: bool = False
    # max. number of foreign layers each user can cancel (hardware class); None = unlimited
    sic_capability: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if self.total_power_w <= 0:
            raise ConfigError(
                "Total power should be positive. Got: {}".format(self.total_power_w)
            )
        if self.max_cluster_size not in (1, 2, 3):
            raise ConfigError(
                "Max. cluster size should be 1, 2 or 3. Got: {}".format(
                    self.max_cluster_size
                )
            )
        if not (0 < self.power_grid_step < 0.5):
            raise ConfigError(
                "Power grid step should be in (0, 0.5). Got: {}".format(
                    self.power_grid_step
                )
            )

    @classmethod
    def from_opts(cls, opts) -> "NomaConfig":
        capability = getattr(opts, "noma.sic_capability", None)
        return cls(
            total_power_w=dbm_to_watt(
                getattr(opts, "noma.total_power_dbm", DEFAULT_TOTAL_POWER_DBM)
            ),
            max_cluster_size=getattr(
                opts, "noma.max_cluster_size", DEFAULT_MAX_CLUSTER_SIZE
            ),
            power_grid_step=getattr(opts, "noma.power_grid_step", DEFAULT_POWER_GRID_STEP),
            stale_csi=getattr(opts, "noma.stale_csi", False),
            sic_capability=tuple(int(c) for c in capability) if capability else None,
        )

    def cancellation_limit(self, user_id: int) -> Optional[int]:
        if self.sic_capability is None or user_id >= len(self.sic_capability):
            return None
        return self.sic_capability[user_id]


@dataclass(frozen=True)
class Cluster:
    """Users sharing one subcarrier, in SIC decode position order.

    Position 0 is the strongest user (largest gain, smallest power share); it has
    to cancel every other layer before decoding its own.
    """

    members: Tuple[int, ...]

    @classmethod
    def ordered(cls, user_ids: Sequence[int], gains: Mapping[int, float]) -> "Cluster":
        return cls(members=tuple(sorted(user_ids, key=lambda uid: (-gains[uid], uid))))

    def __len__(self) -> int:
        return len(self.members)

    def position(self, user_id: int) -> int:
        return self.members.index(user_id)

    def layers_to_cancel(self, user_id: int) -> int:
        return len(self.members) - 1 - self.position(user_id)

    def sic_feasible(self, config: NomaConfig) -> bool:
        for uid in self.members:
            limit = config.cancellation_limit(uid)
            if limit is not None and self.layers_to_cancel(uid) > limit:
                return False
        return True


@dataclass(frozen=True)
class PowerAllocation:
    """Power fractions aligned with ``Cluster.members``."""

    fractions: Tuple[float, ...]

    def __post_init__(self):
        if abs(sum(self.fractions) - 1.0) > 1e-9:
            raise ConfigError(
                "Power fractions should sum to 1. Got: {}".format(self.fractions)
            )
        if any(not (0.0 <= a <= 1.0) for a in self.fractions):
            raise ConfigError(
                "Power fractions should lie in [0, 1]. Got: {}".format(self.fractions)
            )

    def __len__(self) -> int:
        return len(self.fractions)


@dataclass(frozen=True)
class ClusterPlan:
    clusters: Tuple[Cluster, ...]
    allocations: Tuple[PowerAllocation, ...]
    bandwidth_hz: float  # per cluster
    power_w: float  # per cluster

    @classmethod
    def equal_split(
        cls,
        clusters: Sequence[Cluster],
        allocations: Sequence[PowerAllocation],
        total_bandwidth_hz: float,
        total_power_w: float,
    ) -> "ClusterPlan":
        n_clusters = len(clusters)
        return cls(
            clusters=tuple(clusters),
            allocations=tuple(allocations),
            bandwidth_hz=total_bandwidth_hz / n_clusters,
            power_w=total_power_w / n_clusters,
        )

    def cluster_of(self, user_id: int) -> int:
        for idx, cluster in enumerate(self.clusters):
            if user_id in cluster.members:
                return idx
        raise KeyError(user_id)

    def user_ids(self) -> Tuple[int, ...]:
        return tuple(sorted(uid for c in self.clusters for uid in c.members))

    def describe(self) -> str:
        """Compact form used in traces, e.g. ``2>0@0.30/0.70|1|3``."""
        parts = []
        for cluster, alloc in zip(self.clusters, self.allocations):
            if len(cluster) == 1:
                parts.append(str(cluster.members[0]))
            else:
                parts.append(
                    ">".join(str(uid) for uid in cluster.members)
                    + "@"
                    + "/".join("{:.2f}".format(a) for a in alloc.fractions)
                )
        return "|".join(parts)
