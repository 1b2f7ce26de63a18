# --------------------------------------------------------
# Licensed under The MIT License
# --------------------------------------------------------

import argparse
import copy
import os
import time
from dataclasses import dataclass
from multiprocessing import Pool
from typing import Dict, List, Tuple

import pandas as pd

from common import (
    DEFAULT_BANDWIDTH_GRID_HZ,
    DEFAULT_OMEGA_GRID,
    DEFAULT_SWEEP_SEEDS,
    SUPPORTED_SCHEDULER_MODES,
    SUPPORTED_SWEEP_VARIABLES,
)
from utils import logger
from utils.exceptions import ConfigError

from .reporting import make_table
from .simulation import Simulator

# (grid value, seed, mode)
Job = Tuple[float, int, str]

_OPTION_OF = {"omega": "sched.omega", "bandwidth": "sim.bandwidth_hz"}


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    values: Tuple[float, ...]
    seeds: Tuple[int, ...]
    base_opts: argparse.Namespace
    workers: int = 1

    def __post_init__(self):
        if self.variable not in SUPPORTED_SWEEP_VARIABLES:
            raise ConfigError(
                "Sweep variable should be one of {}. Got: {}".format(
                    SUPPORTED_SWEEP_VARIABLES, self.variable
                )
            )
        if len(self.values) == 0 or len(self.seeds) == 0:
            raise ConfigError("Sweep grid and seed list cannot be empty")
        if self.workers < 1:
            raise ConfigError("sweep.workers should be >= 1. Got: {}".format(self.workers))

    @classmethod
    def from_opts(cls, opts: argparse.Namespace, variable: str) -> "SweepSpec":
        if variable == "omega":
            values = getattr(opts, "sweep.omegas", None) or DEFAULT_OMEGA_GRID
        else:
            values = getattr(opts, "sweep.bandwidths_hz", None) or DEFAULT_BANDWIDTH_GRID_HZ
        seeds = getattr(opts, "sweep.seed_list", None)
        if not seeds:
            first = int(getattr(opts, "common.seed", 0))
            n_seeds = int(getattr(opts, "sweep.seeds", DEFAULT_SWEEP_SEEDS))
            seeds = range(first, first + n_seeds)
        return cls(
            variable=variable,
            values=tuple(float(v) for v in values),
            seeds=tuple(int(s) for s in seeds),
            base_opts=opts,
            workers=resolve_workers(getattr(opts, "sweep.workers", 0)),
        )


def resolve_workers(workers) -> int:
    """0 (or None) means one worker process per CPU."""
    workers = int(workers or 0)
    if workers < 0:
        raise ConfigError("sweep.workers should be >= 0. Got: {}".format(workers))
    return workers or os.cpu_count() or 1


def _opts_for(base_opts: argparse.Namespace, variable: str, value: float, mode: str):
    opts = copy.deepcopy(base_opts)
    setattr(opts, _OPTION_OF[variable], value)
    setattr(opts, "sched.mode", mode)
    return opts


def _run_job(args: Tuple[argparse.Namespace, str, Job]) -> Dict:
    base_opts, variable, (value, seed, mode) = args
    row = {"variable": variable, "value": value, "seed": seed, "mode": mode}
    try:
        opts = _opts_for(base_opts, variable, value, mode)
        metrics = Simulator(opts, seed=seed, is_master_node=False).run()
        row.update(metrics.summary())
    except Exception as e:
        logger.warning(
            "Run failed ({}={}, seed={}, mode={}): {}".format(variable, value, seed, mode, e)
        )
        row.update(
            mean_psnr_db=None, stall_count=None, join_time_slots=None, mean_rate_bps=None
        )
    return row


def _jobs(spec: SweepSpec) -> List[Job]:
    jobs = []
    for value in spec.values:
        for seed in spec.seeds:
            for mode in SUPPORTED_SCHEDULER_MODES:
                # the baseline ignores omega: one run per seed serves every grid value
                if spec.variable == "omega" and mode == "baseline" and value != spec.values[0]:
                    continue
                jobs.append((value, seed, mode))
    return jobs


def sweep(spec: SweepSpec) -> pd.DataFrame:
    """Both schedulers over every (grid value, seed); rows sorted by (value, seed, mode)."""
    start_time = time.time()
    jobs = _jobs(spec)
    args = [(spec.base_opts, spec.variable, job) for job in jobs]
    logger.log(
        "Sweeping {} over {} values and {} seeds ({} runs, {} workers)".format(
            spec.variable, len(spec.values), len(spec.seeds), len(jobs), spec.workers
        )
    )
    if spec.workers > 1:
        with Pool(processes=min(spec.workers, len(jobs))) as pool:
            results = pool.map(_run_job, args)
    else:
        results = [_run_job(a) for a in args]

    rows = []
    baseline_rows = {}
    for (value, seed, mode), row in zip(jobs, results):
        if spec.variable == "omega" and mode == "baseline":
            baseline_rows[seed] = row
        else:
            rows.append(row)
    for value in spec.values:
        for seed, row in baseline_rows.items():
            rows.append(dict(row, value=value))

    table = make_table(rows)
    table = table.sort_values(["value", "seed", "mode"], kind="mergesort").reset_index(
        drop=True
    )
    logger.log("Sweep took {:.2f} seconds".format(time.time() - start_time))
    return table

