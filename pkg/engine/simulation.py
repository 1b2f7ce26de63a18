# --------------------------------------------------------
# Licensed under The MIT License
# --------------------------------------------------------

import math
import os
import time
from typing import Dict, List, Optional

import numpy as np

from channel import ChannelModel
from channel.noise import NoiseConfig, noise_power
from common import (
    DEFAULT_BANDWIDTH_HZ,
    DEFAULT_HORIZON_SLOTS,
    DEFAULT_LOG_FREQ,
    DEFAULT_N_USERS,
    DEFAULT_SLOT_S,
    DEFAULT_STARTUP_THRESHOLD_S,
    DEFAULT_VIDEO_LENGTH_S,
    TRACE_COLUMNS,
)
from metrics import SUPPORTED_STATS, RunMetrics, Statistics, UserMetrics
from noma import NomaConfig, layer_rates, sic_decode_outcome
from qoe import load_profiles, qoe_loss
from scheduler import (
    BufferSnapshot,
    SchedulerConfig,
    SlotDecision,
    SlotState,
    get_scheduler,
)
from utils.common_utils import create_directories
from utils.exceptions import ConfigError
from video import (
    STALL,
    ClientBuffer,
    QualityLadder,
    SourceQueue,
    playback_step,
    quality_metrics,
    source_arrival,
    transmit,
)

TRACE_FILE = "trace.tsv"
NO_LEVEL = "-"


def format_value(value) -> str:
    """Trace/CSV cell text; floats keep every digit so files parse back exactly."""
    if value is None:
        return "NA"
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


class Simulator(object):
    """
    Discrete-slot downlink simulation of one cell. Every slot runs, in order:
    source arrival, mobility, channel sampling, scheduling, rate realization
    with the SIC decode outcome, transmission, playback and QoE accounting.
    """

    def __init__(
        self,
        opts,
        seed: Optional[int] = None,
        out_dir: Optional[str] = None,
        is_master_node: bool = True,
    ) -> None:
        super(Simulator, self).__init__()
        self.opts = opts
        self.seed = int(getattr(opts, "common.seed", 0) if seed is None else seed)
        self.out_dir = out_dir
        self.is_master_node = is_master_node

        self.n_users = int(getattr(opts, "sim.n_users", DEFAULT_N_USERS))
        self.horizon_slots = int(getattr(opts, "sim.horizon_slots", DEFAULT_HORIZON_SLOTS))
        self.bandwidth_hz = float(getattr(opts, "sim.bandwidth_hz", DEFAULT_BANDWIDTH_HZ))
        self.slot_s = float(getattr(opts, "video.slot_s", DEFAULT_SLOT_S))
        self.startup_threshold_s = float(
            getattr(opts, "video.startup_threshold_s", DEFAULT_STARTUP_THRESHOLD_S)
        )
        self.video_length_s = float(getattr(opts, "video.length_s", DEFAULT_VIDEO_LENGTH_S))
        self.log_freq = int(getattr(opts, "common.log_freq", DEFAULT_LOG_FREQ))

        if self.n_users < 1:
            raise ConfigError("sim.n_users should be >= 1. Got: {}".format(self.n_users))
        if self.horizon_slots < 0:
            raise ConfigError(
                "sim.horizon_slots should be >= 0. Got: {}".format(self.horizon_slots)
            )
        if self.bandwidth_hz <= 0 or self.slot_s <= 0:
            raise ConfigError("Bandwidth and slot duration should be positive")

        self.channel = ChannelModel(opts, seed=self.seed)
        self.noise = NoiseConfig.from_opts(opts)
        self.noma = NomaConfig.from_opts(opts)
        self.ladder = QualityLadder.from_opts(opts)
        self.sched_config = SchedulerConfig.from_opts(opts)
        self.scheduler = get_scheduler(self.sched_config)
        self.user_ids = list(range(self.n_users))
        self.profiles = {p.user_id: p for p in load_profiles(opts, self.user_ids)}

    def _realize(self, decision: SlotDecision, gains: Dict[int, float]) -> Dict[int, bool]:
        """Decode outcome of every user under the realized gains."""
        plan = decision.plan
        success = {uid: True for uid in self.user_ids}
        if plan is None:
            return success
        noise_w = noise_power(plan.bandwidth_hz, self.noise)
        for cluster, alloc in zip(plan.clusters, plan.allocations):
            realized = layer_rates(
                cluster, alloc, plan.bandwidth_hz, noise_w, gains, plan.power_w
            )
            assigned = {}
            for uid in cluster.members:
                level = decision.levels[uid]
                n_sent = int(math.ceil(decision.delivered_s[uid] / self.slot_s - 1e-9))
                assigned[uid] = 0.0 if level is None else n_sent * self.ladder.bitrate(level)
            success.update(sic_decode_outcome(cluster, assigned, realized))
        return success

    def run(self) -> RunMetrics:
        start_time = time.time()
        users = self.channel.initial_users(self.n_users)
        queues = {
            uid: SourceQueue(user_id=uid, remaining_video_s=self.video_length_s)
            for uid in self.user_ids
        }
        buffers = {uid: ClientBuffer(user_id=uid, request_slot=0) for uid in self.user_ids}
        rates: Dict[int, List[float]] = {uid: [] for uid in self.user_ids}
        losses: Dict[int, List[float]] = {uid: [] for uid in self.user_ids}
        objectives: List[float] = []
        trace: List[Dict] = []
        stats = Statistics(
            metric_names=SUPPORTED_STATS,
            is_master_node=self.is_master_node,
        )

        prev_gains = None
        for slot in range(self.horizon_slots):
            slot_start = time.time()
            for uid in self.user_ids:
                source_arrival(queues[uid], self.slot_s)
            users = self.channel.advance(users, slot)
            gains = {s.user_id: s.gain_lin for s in self.channel.sample(users, slot)}
            sched_gains = (
                prev_gains if self.noma.stale_csi and prev_gains is not None else gains
            )

            state = SlotState(
                slot=slot,
                gains=sched_gains,
                backlogs={uid: queues[uid].backlog_s for uid in self.user_ids},
                buffers={uid: BufferSnapshot.of(buffers[uid]) for uid in self.user_ids},
                profiles=self.profiles,
                bandwidth_hz=self.bandwidth_hz,
                noma=self.noma,
                ladder=self.ladder,
                slot_s=self.slot_s,
                noise=self.noise,
            )
            decision = self.scheduler.schedule(state)
            success = self._realize(decision, gains)
            plan_str = decision.plan.describe() if decision.plan is not None else NO_LEVEL

            slot_loss, slot_delivered = 0.0, 0.0
            for uid in self.user_ids:
                backlog = queues[uid].backlog_s
                receipt, _ = transmit(
                    queues[uid],
                    decision.levels[uid],
                    decision.rates[uid],
                    self.slot_s,
                    success[uid],
                    self.ladder,
                    slot=slot,
                )
                playback_step(
                    buffers[uid], receipt, self.slot_s, self.startup_threshold_s, slot
                )
                loss = qoe_loss(self.profiles[uid], buffers[uid].last_outcome, self.ladder)
                rates[uid].append(decision.rates[uid])
                losses[uid].append(loss)
                slot_loss += loss
                slot_delivered += receipt.delivered_s
                trace.append(
                    {
                        "slot": slot,
                        "user_id": uid,
                        "gain_lin": gains[uid],
                        "backlog_s": backlog,
                        "buffered_s": buffers[uid].buffered_s,
                        "joined": buffers[uid].joined,
                        "cluster": plan_str,
                        "level": NO_LEVEL
                        if decision.levels[uid] is None
                        else decision.levels[uid],
                        "rate_bps": decision.rates[uid],
                        "delivered_s": receipt.delivered_s,
                        "success": success[uid],
                        "played": buffers[uid].last_outcome,
                        "qoe_loss": loss,
                        "objective": decision.objective,
                    }
                )
            objectives.append(decision.objective)
            prev_gains = gains

            stats.update(
                metric_vals={
                    "objective": decision.objective,
                    "rate_bps": sum(decision.rates.values()) / self.n_users,
                    "qoe_loss": slot_loss / self.n_users,
                    "delivered_s": slot_delivered / self.n_users,
                    "stalls": sum(b.last_outcome == STALL for b in buffers.values()),
                },
                slot_time=time.time() - slot_start,
            )
            if self.log_freq > 0 and (slot + 1) % self.log_freq == 0:
                stats.iter_summary(slot + 1, self.horizon_slots, start_time)

        metrics = RunMetrics(
            horizon_slots=self.horizon_slots,
            users=[
                self._user_metrics(buffers[uid], rates[uid], losses[uid])
                for uid in self.user_ids
            ],
            mean_objective=float(np.mean(objectives)) if objectives else None,
            trace=trace,
        )
        if self.horizon_slots > 0:
            stats.run_summary("{} run (seed {})".format(self.sched_config.mode, self.seed))
        if self.out_dir is not None:
            self.write_trace(trace, os.path.join(self.out_dir, TRACE_FILE))
        return metrics

    def _user_metrics(
        self, buffer: ClientBuffer, rates: List[float], losses: List[float]
    ) -> UserMetrics:
        report = quality_metrics(
            buffer.played_log, self.ladder, buffer.join_slot, buffer.request_slot
        )
        return UserMetrics(
            user_id=buffer.user_id,
            mean_psnr_db=report.mean_psnr_db,
            stall_count=report.stall_count,
            join_time_slots=report.join_time_slots,
            mean_rate_bps=float(np.mean(rates)) if rates else None,
            mean_qoe_loss=float(np.mean(losses)) if losses else None,
            delivered_s=buffer.delivered_s,
            played_s=buffer.played_s,
            final_buffer_s=buffer.buffered_s,
        )

    @staticmethod
    def write_trace(trace: List[Dict], path: str) -> None:
        create_directories(os.path.dirname(path) or ".", verbose=False)
        with open(path, "w") as f:
            f.write("\t".join(TRACE_COLUMNS) + "\n")
            for row in trace:
                f.write("\t".join(format_value(row[c]) for c in TRACE_COLUMNS) + "\n")

    def __repr__(self) -> str:
        return "{}(\n \t n_users={}\n \t horizon_slots={}\n \t bandwidth_hz={}\n \t seed={}\n \t scheduler={}\n )".format(
            self.__class__.__name__,
            self.n_users,
            self.horizon_slots,
            self.bandwidth_hz,
            self.seed,
            self.sched_config.mode,
        )


def run(opts, seed: Optional[int] = None, out_dir: Optional[str] = None) -> RunMetrics:
    return Simulator(opts, seed=seed, out_dir=out_dir).run()
