# --------------------------------------------------------
# Licensed under The MIT License
# --------------------------------------------------------

import argparse
from typing import Dict, List, Optional, Tuple

import numpy as np

from channel.noise import noise_power
from noma.partitions import enumerate_partitions
from noma.power import power_grid, power_grid_matrix
from noma.sic import sic_rate_matrix
from noma.structures import Cluster, ClusterPlan
from utils.exceptions import DecisionSpaceError, NomaSimError
from video.queue import deliverable_s

from .objective import qoe_objective
from .state import SchedulerConfig, SlotDecision, SlotState

# (level option, rate, value) chosen for one user
UserPick = Tuple[Optional[int], float, float]
# (power split index, cluster value, picks of its members)
ClusterChoice = Tuple[int, float, Dict[int, UserPick]]


class BaseScheduler(object):
    """Exact search over partitions, power splits and per-user levels.

    The objective is a sum of per-user terms, each depending only on the
    user's own rate and level, and rates depend only on the user's cluster.
    The search therefore maximizes levels per user and power splits per
    cluster, and compares partitions on their totals. Taking the first
    maximum at every stage gives the same decision as scanning the full
    candidate space in canonical order and keeping the first maximum.
    """

    def __init__(self, config: SchedulerConfig) -> None:
        super().__init__()
        self.config = config

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> argparse.ArgumentParser:
        return parser

    def level_values(self, state: SlotState, user_id: int, rates: np.ndarray) -> np.ndarray:
        """Value of each level option (NONE, 1, ..., L) for every candidate rate."""
        raise NotImplementedError

    def decision_space_size(self, state: SlotState) -> int:
        n_options = len(state.ladder) + 1
        total = 0
        for partition in self._partitions(state):
            clusters = [Cluster.ordered(block, state.gains) for block in partition]
            if not all(c.sic_feasible(state.noma) for c in clusters):
                continue
            n_allocs = 1
            for cluster in clusters:
                n_allocs *= len(power_grid(len(cluster), self.config.power_grid_step))
            total += n_allocs
        return total * n_options ** len(state.user_ids)

    def check_decision_space(self, state: SlotState) -> int:
        size = self.decision_space_size(state)
        if size > self.config.decision_space_limit:
            n_partitions = len(self._partitions(state))
            step = self.config.power_grid_step
            n_allocs = len(power_grid(self.config.max_cluster_size, step))
            n_options = len(state.ladder) + 1
            n_levels = n_options ** len(state.user_ids)
            dims = {
                "partitions ({} users)".format(len(state.user_ids)): n_partitions,
                "power splits per cluster (step {})".format(step): n_allocs,
                "level combinations ({} options per user)".format(n_options): n_levels,
            }
            limiting = max(dims, key=dims.get)
            raise DecisionSpaceError(
                "decision space too large: {} candidates exceed the limit of {}. "
                "Largest dimension: {} = {}".format(
                    size, self.config.decision_space_limit, limiting, dims[limiting]
                )
            )
        return size

    def _partitions(self, state: SlotState):
        return enumerate_partitions(state.user_ids, self.config.max_cluster_size)

    def _best_cluster(
        self,
        state: SlotState,
        cluster: Cluster,
        bandwidth_hz: float,
        noise_w: float,
        power_w: float,
    ) -> Optional[ClusterChoice]:
        grid = power_grid_matrix(len(cluster), self.config.power_grid_step)
        if grid.shape[0] == 0:
            return None
        member_gains = np.asarray(
            [state.gains[uid] for uid in cluster.members], dtype=np.float64
        )
        rates = sic_rate_matrix(member_gains, grid, bandwidth_hz, noise_w, power_w)
        feasible = np.ones(grid.shape[0], dtype=bool)
        for pos, uid in enumerate(cluster.members):
            feasible &= rates[:, pos] >= self.config.min_rate(uid)
        candidates = np.flatnonzero(feasible)
        if candidates.size == 0:
            return None

        members = sorted(cluster.members)
        values = {
            uid: self.level_values(state, uid, rates[:, cluster.position(uid)])
            for uid in members
        }
        # summed member by member, in id order, for every power split at once
        totals = np.zeros(grid.shape[0])
        for uid in members:
            totals = totals + values[uid].max(axis=1)
        best_idx = int(candidates[np.argmax(totals[candidates])])
        best_value = float(totals[best_idx])

        picks = {}
        for uid in members:
            option = int(np.argmax(values[uid][best_idx]))
            picks[uid] = (
                option if option > 0 else None,
                float(rates[best_idx, cluster.position(uid)]),
                float(values[uid][best_idx, option]),
            )
        return best_idx, best_value, picks

    def schedule(self, state: SlotState) -> SlotDecision:
        user_ids = state.user_ids
        if not user_ids:
            return SlotDecision.empty()
        self.check_decision_space(state)

        # a cluster gets the same share in every partition with as many clusters
        cluster_cache: Dict[Tuple[Tuple[int, ...], int], Optional[ClusterChoice]] = {}
        best_total, best = None, None
        for partition in self._partitions(state):
            clusters = [Cluster.ordered(block, state.gains) for block in partition]
            if not all(c.sic_feasible(state.noma) for c in clusters):
                continue
            bandwidth_hz = state.bandwidth_hz / len(clusters)
            power_w = state.noma.total_power_w / len(clusters)
            noise_w = noise_power(bandwidth_hz, state.noise)

            choices = []
            for cluster in clusters:
                key = (cluster.members, len(clusters))
                if key not in cluster_cache:
                    cluster_cache[key] = self._best_cluster(
                        state, cluster, bandwidth_hz, noise_w, power_w
                    )
                choice = cluster_cache[key]
                if choice is None:
                    break
                choices.append(choice)
            if len(choices) != len(clusters):
                continue

            picks: Dict[int, UserPick] = {}
            for _, _, cluster_picks in choices:
                picks.update(cluster_picks)
            total = sum(picks[uid][2] for uid in user_ids)
            if best_total is None or total > best_total:
                best_total, best = total, (clusters, [c[0] for c in choices], picks)

        if best is None:
            raise NomaSimError(
                "No feasible scheduling decision in slot {}".format(state.slot)
            )
        clusters, alloc_indices, picks = best
        allocations = [
            power_grid(len(cluster), self.config.power_grid_step)[a_idx]
            for cluster, a_idx in zip(clusters, alloc_indices)
        ]
        plan = ClusterPlan.equal_split(
            clusters, allocations, state.bandwidth_hz, state.noma.total_power_w
        )
        levels = {uid: picks[uid][0] for uid in user_ids}
        rates = {uid: picks[uid][1] for uid in user_ids}
        return self._decision(state, plan, levels, rates)

    def _decision(
        self,
        state: SlotState,
        plan: ClusterPlan,
        levels: Dict[int, Optional[int]],
        rates: Dict[int, float],
    ) -> SlotDecision:
        delivered = {
            uid: deliverable_s(
                state.backlogs[uid], levels[uid], rates[uid], state.slot_s, state.ladder
            )
            for uid in state.user_ids
        }
        candidate = SlotDecision(plan=plan, levels=levels, rates=rates, delivered_s=delivered)
        return SlotDecision(
            plan=plan,
            levels=levels,
            rates=rates,
            delivered_s=delivered,
            objective=qoe_objective(state, candidate, self.config.omega),
        )

    def __repr__(self) -> str:
        return "{}(\n \t omega={}\n \t max_cluster_size={}\n \t power_grid_step={}\n \t decision_space_limit={}\n )".format(
            self.__class__.__name__,
            self.config.omega,
            self.config.max_cluster_size,
            self.config.power_grid_step,
            self.config.decision_space_limit,
        )
