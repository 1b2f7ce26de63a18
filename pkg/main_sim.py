# --------------------------------------------------------
# Licensed under The MIT License
# --------------------------------------------------------

import os
import time
from typing import List, Optional

import numpy as np

from common import EXIT_CONFIG_ERROR, EXIT_OK, EXIT_RUNTIME_ERROR, FACTOR_COLUMNS
from engine import (
    TRACE_FILE,
    Simulator,
    SweepSpec,
    check_summary,
    emit_csv,
    make_table,
    parse_csv,
    replay_trace,
    sweep,
)
from options.opts import get_sim_arguments
from qoe import (
    PROFILES_SECTION,
    CmfHyperParams,
    cmf_fit,
    derive_profile,
    dump_model,
    rank_top_k,
    read_dataset,
    synth_dataset,
    write_dataset,
)
from utils import logger
from utils.common_utils import STREAM_DATASET, create_directories, make_rng
from utils.exceptions import ConfigError, NomaSimError
from utils.visualization_utils import emit_chart

RUN_CSV = "run.csv"
MODEL_FILE = "qoe_model.txt"
SWEEP_FILES = {"omega": "sweep_omega", "bandwidth": "sweep_bw"}


def _data_dir(opts) -> str:
    data_dir = getattr(opts, "data.dir", None)
    if data_dir is None:
        data_dir = os.path.join(getattr(opts, "common.results_loc", "results"), "data")
    return data_dir


def main_run(opts, out_dir: str) -> None:
    seed = getattr(opts, "common.seed", 0)
    simulator = Simulator(opts, seed=seed, out_dir=out_dir)
    print(simulator)
    metrics = simulator.run()
    row = {
        "variable": "omega",
        "value": getattr(opts, "sched.omega"),
        "seed": seed,
        "mode": getattr(opts, "sched.mode"),
    }
    row.update(metrics.summary())
    emit_csv(make_table([row]), os.path.join(out_dir, RUN_CSV))
    logger.info(
        "Trace and summary are stored here: {}".format(logger.color_text(out_dir))
    )


def main_sweep(opts, out_dir: str, variable: str) -> None:
    table = sweep(SweepSpec.from_opts(opts, variable))
    stem = os.path.join(out_dir, SWEEP_FILES[variable])
    emit_csv(table, stem + ".csv")
    emit_chart(table, stem + ".svg")
    logger.info("Sweep results are stored here: {}".format(logger.color_text(stem)))


def main_gen_data(opts) -> None:
    dataset = synth_dataset(
        make_rng(getattr(opts, "common.seed", 0), STREAM_DATASET),
        n_users=getattr(opts, "data.n_users", 200),
        n_services=getattr(opts, "data.n_services", 50),
        noise_sigma=getattr(opts, "data.noise_sigma", 0.05),
        obs_rate=getattr(opts, "data.obs_rate", 0.4),
    )
    write_dataset(dataset, _data_dir(opts))


def main_fit_qoe(opts, out_dir: str) -> None:
    dataset = read_dataset(_data_dir(opts))
    top_k = rank_top_k(
        dataset.sessions,
        k=min(getattr(opts, "qoe.top_k", 3), len(FACTOR_COLUMNS)),
        label="engagement",
        factors=FACTOR_COLUMNS,
        n_bins=getattr(opts, "qoe.n_bins", 10),
    )
    logger.log("Top factors by information gain: {}".format(top_k))

    start_time = time.time()
    model = cmf_fit(
        dataset.matrix.Y,
        dataset.matrix.M,
        dataset.Xu,
        dataset.Xs,
        CmfHyperParams.from_opts(opts),
    )
    profiles = [derive_profile(model, uid, dataset.Xs) for uid in range(model.n_users)]
    error = np.mean(
        [abs(p.w_quality - t.w_quality) for p, t in zip(profiles, dataset.profiles)]
    )
    logger.log(
        "CMF took {:.2f} seconds, {} iterations. Profile MAE vs. generator: {:.4f}".format(
            time.time() - start_time, len(model.trace) - 1, error
        )
    )

    model_file = os.path.join(out_dir, MODEL_FILE)
    dump_model(
        model,
        model_file,
        extras={
            "XS": dataset.Xs,
            PROFILES_SECTION: np.asarray([[p.w_quality, p.w_stall] for p in profiles]),
        },
    )
    logger.info("Model is stored here: {}".format(logger.color_text(model_file)))


def main_replay(opts, out_dir: str) -> None:
    metrics = replay_trace(os.path.join(out_dir, TRACE_FILE), opts)
    stored = parse_csv(os.path.join(out_dir, RUN_CSV)).to_dict("records")[0]
    mismatched = check_summary(metrics, stored)
    if mismatched:
        raise NomaSimError(
            "Replayed metrics differ from {} in: {}".format(RUN_CSV, mismatched)
        )
    logger.log("Replay matches the stored summary: {}".format(metrics.summary()))


def main_worker(args: Optional[List[str]] = None) -> int:
    try:
        opts = get_sim_arguments(args)
        out_dir = getattr(opts, "common.results_loc", "results")
        create_directories(out_dir)

        task = opts.task
        if task == "run":
            main_run(opts, out_dir)
        elif task == "sweep-omega":
            main_sweep(opts, out_dir, "omega")
        elif task == "sweep-bw":
            main_sweep(opts, out_dir, "bandwidth")
        elif task == "gen-data":
            main_gen_data(opts)
        elif task == "fit-qoe":
            main_fit_qoe(opts, out_dir)
        elif task == "replay":
            main_replay(opts, out_dir)
    except ConfigError as e:
        logger.error("Configuration error. {}".format(e), exit_code=EXIT_CONFIG_ERROR)
    except Exception as e:
        logger.error(
            "{}: {}".format(type(e).__name__, e), exit_code=EXIT_RUNTIME_ERROR
        )
    return EXIT_OK


if __name__ == "__main__":
    main_worker()
