# --------------------------------------------------------
# Licensed under The MIT License
# --------------------------------------------------------

from typing import Dict, List, Optional

import numpy as np
import pandas as pd

from common import DEFAULT_N_USERS, DEFAULT_SLOT_S, TRACE_COLUMNS
from metrics import RunMetrics, UserMetrics
from utils.exceptions import NomaSimError
from video import NOT_JOINED, STALL, QualityLadder


def read_trace(path: str) -> pd.DataFrame:
    trace = pd.read_csv(path, sep="\t", dtype=str, keep_default_na=False)
    if list(trace.columns) != TRACE_COLUMNS:
        raise NomaSimError(
            "Unexpected trace header in {}: {}".format(path, list(trace.columns))
        )
    return trace


def _mean(values: List[float]) -> Optional[float]:
    return float(np.mean(values)) if values else None


def _replay_user(
    rows: pd.DataFrame, user_id: int, ladder: QualityLadder, slot_s: float
) -> UserMetrics:
    psnrs, rates, losses = [], [], []
    stalls = 0
    join_slot = None
    delivered_s, played_s, buffered_s = 0.0, 0.0, 0.0
    for row in rows.itertuples(index=False):
        if join_slot is None and row.joined == "1":
            join_slot = int(row.slot)
        if row.played == STALL:
            stalls += 1
        elif row.played != NOT_JOINED:
            psnrs.append(ladder.psnr(int(row.played)))
            played_s += slot_s
        rates.append(float(row.rate_bps))
        losses.append(float(row.qoe_loss))
        delivered_s += float(row.delivered_s)
        buffered_s = float(row.buffered_s)
    return UserMetrics(
        user_id=user_id,
        mean_psnr_db=_mean(psnrs),
        stall_count=stalls,
        join_time_slots=join_slot,
        mean_rate_bps=_mean(rates),
        mean_qoe_loss=_mean(losses),
        delivered_s=delivered_s,
        played_s=played_s,
        final_buffer_s=buffered_s,
    )


def replay_trace(path: str, opts) -> RunMetrics:
    """Recompute run metrics from a trace file alone (plus the ladder and slot length)."""
    trace = read_trace(path)
    ladder = QualityLadder.from_opts(opts)
    slot_s = float(getattr(opts, "video.slot_s", DEFAULT_SLOT_S))
    n_users = int(getattr(opts, "sim.n_users", DEFAULT_N_USERS))

    slots = trace["slot"].astype(int)
    users = trace["user_id"].astype(int)
    per_slot = trace.groupby(slots, sort=True)["objective"].first()
    objectives = [float(v) for v in per_slot]
    return RunMetrics(
        horizon_slots=int(slots.nunique()),
        users=[
            _replay_user(trace[users == uid], uid, ladder, slot_s)
            for uid in range(n_users)
        ],
        mean_objective=_mean(objectives),
        trace=trace.to_dict("records"),
    )


def check_summary(metrics: RunMetrics, row: Dict) -> List[str]:
    """Names of the summary fields where ``metrics`` and a CSV row disagree."""
    mismatched = []
    for key, value in metrics.summary().items():
        stored = row.get(key)
        if stored is None or pd.isna(stored):
            stored = None
        if value is None or stored is None:
            if (value is None) != (stored is None):
                mismatched.append(key)
        elif float(value) != float(stored):
            mismatched.append(key)
    return mismatched
