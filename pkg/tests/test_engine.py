# --------------------------------------------------------
# Licensed under The MIT License
# --------------------------------------------------------

import argparse
import os
import re

import pandas as pd
import pytest

from common import SWEEP_CSV_HEADER, TRACE_COLUMNS
from engine import (
    TRACE_FILE,
    Simulator,
    SweepSpec,
    check_summary,
    emit_csv,
    make_table,
    parse_csv,
    read_trace,
    replay_trace,
    run,
    sweep,
)
from utils.exceptions import ConfigError
from utils.visualization_utils import emit_chart
from video import STALL


def _opts(**kwargs) -> argparse.Namespace:
    opts = argparse.Namespace()
    config = {
        "sim.n_users": 3,
        "sim.horizon_slots": 40,
        "noma.power_grid_step": 0.1,
        "common.log_freq": 0,
    }
    config.update({k.replace("__", "."): v for k, v in kwargs.items()})
    for key, value in config.items():
        setattr(opts, key, value)
    return opts


def test_empty_horizon(tmp_path):
    opts = _opts(sim__horizon_slots=0)
    metrics = Simulator(opts, seed=1, out_dir=str(tmp_path)).run()
    assert metrics.trace == []
    assert metrics.mean_objective is None
    assert metrics.summary() == {
        "mean_psnr_db": None,
        "stall_count": 0,
        "join_time_slots": None,
        "mean_rate_bps": None,
    }
    with open(tmp_path / TRACE_FILE) as f:
        assert f.read() == "\t".join(TRACE_COLUMNS) + "\n"


def test_rejects_empty_cell():
    with pytest.raises(ConfigError):
        Simulator(_opts(sim__n_users=0))


def test_trace_is_reproducible(tmp_path):
    first, second = tmp_path / "a", tmp_path / "b"
    Simulator(_opts(), seed=7, out_dir=str(first)).run()
    Simulator(_opts(), seed=7, out_dir=str(second)).run()
    assert (first / TRACE_FILE).read_bytes() == (second / TRACE_FILE).read_bytes()

    other = tmp_path / "c"
    Simulator(_opts(), seed=8, out_dir=str(other)).run()
    assert (other / TRACE_FILE).read_bytes() != (first / TRACE_FILE).read_bytes()


@pytest.mark.parametrize("mode", ["qoe_aware", "baseline"])
def test_per_user_conservation_and_stalls(mode):
    metrics = Simulator(_opts(sched__mode=mode, sim__horizon_slots=60), seed=3).run()
    assert len(metrics.trace) == 60 * 3
    for user in metrics.users:
        assert user.delivered_s == user.played_s + user.final_buffer_s
        rows = [r for r in metrics.trace if r["user_id"] == user.user_id]
        assert user.stall_count == sum(1 for r in rows if r["played"] == STALL)
        assert all(r["buffered_s"] >= 0.0 for r in rows)
        assert all(r["delivered_s"] <= r["backlog_s"] for r in rows)


def test_replay_matches_simulation(tmp_path):
    opts = _opts(sim__horizon_slots=50)
    metrics = Simulator(opts, seed=11, out_dir=str(tmp_path)).run()
    replayed = replay_trace(str(tmp_path / TRACE_FILE), opts)
    assert replayed.same_as(metrics)
    assert check_summary(replayed, metrics.summary()) == []


def test_replay_rejects_foreign_file(tmp_path):
    path = tmp_path / TRACE_FILE
    path.write_text("slot\tuser\n0\t0\n")
    with pytest.raises(Exception, match="Unexpected trace header"):
        read_trace(str(path))


@pytest.mark.parametrize(
    "override",
    [{"noma__stale_csi": True}, {"noma__max_cluster_size": 1}, {"sched__omega": 0.0}],
)
def test_variants_complete(override):
    metrics = run(_opts(sim__horizon_slots=20, **override), seed=2)
    assert metrics.horizon_slots == 20
    assert metrics.stall_count >= 0


def test_decode_failures_need_stale_csi():
    perfect = Simulator(_opts(sim__n_users=4, sim__horizon_slots=100), seed=0).run()
    assert all(row["success"] for row in perfect.trace)

    stale = Simulator(
        _opts(sim__n_users=4, sim__horizon_slots=100, noma__stale_csi=True), seed=0
    ).run()
    failed = [row for row in stale.trace if not row["success"]]
    assert failed
    assert all(row["delivered_s"] == 0.0 for row in failed)


def test_progress_statistics_track_delivered_seconds(capsys):
    metrics = Simulator(_opts(sim__horizon_slots=30), seed=4).run()
    summary = capsys.readouterr().out
    found = re.search(r"delivered_s=([0-9.]+)", summary)
    assert found is not None
    delivered = sum(u.delivered_s for u in metrics.users) / (30 * len(metrics.users))
    assert float(found.group(1)) == pytest.approx(delivered, abs=1e-4)


def test_check_summary_reports_mismatches():
    metrics = Simulator(_opts(sim__horizon_slots=10), seed=0).run()
    row = dict(metrics.summary())
    assert check_summary(metrics, row) == []
    row["stall_count"] = metrics.stall_count + 1
    row["mean_psnr_db"] = float("nan")
    assert sorted(check_summary(metrics, row)) == sorted(
        ["stall_count"] + (["mean_psnr_db"] if metrics.mean_psnr_db is not None else [])
    )


def _rows():
    return [
        {
            "variable": "omega",
            "value": 0.5,
            "seed": 0,
            "mode": "baseline",
            "mean_psnr_db": 38.123456789012344,
            "stall_count": 4,
            "join_time_slots": 2.0 / 3.0,
            "mean_rate_bps": 3141592.6535,
        },
        {
            "variable": "omega",
            "value": 0.5,
            "seed": 0,
            "mode": "qoe_aware",
            "mean_psnr_db": None,
            "stall_count": None,
            "join_time_slots": None,
            "mean_rate_bps": None,
        },
    ]


def test_csv_header_and_round_trip(tmp_path):
    path = str(tmp_path / "out" / "sweep.csv")
    table = make_table(_rows())
    emit_csv(table, path)
    with open(path) as f:
        lines = f.read().splitlines()
    assert lines[0] == ",".join(SWEEP_CSV_HEADER)
    assert lines[2] == "omega,0.5,0,qoe_aware,NA,NA,NA,NA"
    pd.testing.assert_frame_equal(parse_csv(path), table)


def test_emit_csv_errors(tmp_path):
    with pytest.raises(ValueError):
        emit_csv(make_table([]), str(tmp_path / "empty.csv"))
    blocker = tmp_path / "file.txt"
    blocker.write_text("x")
    with pytest.raises(OSError):
        emit_csv(make_table(_rows()), str(blocker / "sweep.csv"))


def test_omega_sweep_table(tmp_path):
    opts = _opts(sim__n_users=2, sim__horizon_slots=15)
    spec = SweepSpec(
        variable="omega", values=(0.0, 4.0), seeds=(0, 1), base_opts=opts, workers=1
    )
    table = sweep(spec)
    assert list(table.columns) == SWEEP_CSV_HEADER
    assert len(table) == 2 * 2 * 2
    assert list(zip(table["value"], table["seed"], table["mode"]))[:2] == [
        (0.0, 0, "baseline"),
        (0.0, 0, "qoe_aware"),
    ]
    baseline = table[table["mode"] == "baseline"]
    columns = ["seed"] + SWEEP_CSV_HEADER[4:]
    low = baseline[baseline["value"] == 0.0][columns].reset_index(drop=True)
    high = baseline[baseline["value"] == 4.0][columns].reset_index(drop=True)
    pd.testing.assert_frame_equal(low, high)

    path = str(tmp_path / "sweep_omega.svg")
    emit_chart(table, path)
    with open(path) as f:
        svg = f.read()
    assert svg.count('id="series-') == 4
    assert 'id="series-qoe_aware-mean_psnr_db"' in svg
    assert 'id="series-baseline-stall_count"' in svg


def test_bandwidth_sweep_runs_both_modes_everywhere():
    opts = _opts(sim__n_users=2, sim__horizon_slots=10)
    spec = SweepSpec(
        variable="bandwidth", values=(5e6, 10e6), seeds=(3,), base_opts=opts
    )
    table = sweep(spec)
    assert len(table) == 2 * 1 * 2
    assert set(table["mode"]) == {"baseline", "qoe_aware"}


def _seed_means(table, column):
    return table.groupby(["mode", "value"])[column].mean()


def test_omega_moves_qoe_aware_quality_up():
    opts = _opts(sim__n_users=4, sim__horizon_slots=120)
    table = sweep(SweepSpec("omega", (0.0, 1.0, 32.0), (0, 1, 2), opts, workers=1))
    psnr = _seed_means(table, "mean_psnr_db")
    aware, baseline = psnr["qoe_aware"], psnr["baseline"]

    # pure max-weight delivers the most seconds, which is always the lowest level
    assert aware[0.0] == pytest.approx(32.0)
    assert aware[0.0] < aware[1.0] <= aware[32.0]
    gains = [aware[w] - baseline[w] for w in (0.0, 1.0, 32.0)]
    assert gains == sorted(gains)


def test_more_bandwidth_means_better_video():
    opts = _opts(sim__n_users=4, sim__horizon_slots=120)
    table = sweep(SweepSpec("bandwidth", (2.5e6, 5e6, 20e6), (0, 1, 2), opts, workers=1))
    psnr = _seed_means(table, "mean_psnr_db")
    stalls = _seed_means(table, "stall_count")
    for mode in ("qoe_aware", "baseline"):
        assert list(psnr[mode]) == sorted(psnr[mode])
        assert list(stalls[mode]) == sorted(stalls[mode], reverse=True)
    for bandwidth_hz in (2.5e6, 5e6, 20e6):
        assert stalls["qoe_aware"][bandwidth_hz] <= stalls["baseline"][bandwidth_hz]


def test_single_point_sweep_equals_run():
    opts = _opts(sim__n_users=2, sim__horizon_slots=20)
    spec = SweepSpec(variable="omega", values=(2.0,), seeds=(5,), base_opts=opts)
    row = sweep(spec).set_index("mode").loc["qoe_aware"].to_dict()
    direct = _opts(sim__n_users=2, sim__horizon_slots=20, sched__omega=2.0)
    metrics = Simulator(direct, seed=5).run()
    assert check_summary(metrics, row) == []


def test_parallel_sweep_equals_serial():
    opts = _opts(sim__n_users=2, sim__horizon_slots=10)
    serial = sweep(SweepSpec("omega", (0.0, 8.0), (0, 1), opts, workers=1))
    parallel = sweep(SweepSpec("omega", (0.0, 8.0), (0, 1), opts, workers=2))
    pd.testing.assert_frame_equal(serial, parallel)


def test_sweep_spec_validation():
    with pytest.raises(ConfigError):
        SweepSpec("power", (1.0,), (0,), _opts())
    with pytest.raises(ConfigError):
        SweepSpec("omega", (), (0,), _opts())
    with pytest.raises(ConfigError):
        SweepSpec("omega", (1.0,), (0,), _opts(), workers=0)


def test_sweep_spec_from_opts():
    opts = _opts(common__seed=10, sweep__seeds=3, sweep__omegas=[1, 2])
    spec = SweepSpec.from_opts(opts, "omega")
    assert spec.values == (1.0, 2.0)
    assert spec.seeds == (10, 11, 12)
    spec = SweepSpec.from_opts(_opts(sweep__seed_list=[4, 9]), "bandwidth")
    assert spec.seeds == (4, 9)
    assert spec.values == (2.5e6, 5e6, 10e6, 20e6)


def test_sweep_workers_default_to_one_per_cpu(monkeypatch):
    monkeypatch.setattr(os, "cpu_count", lambda: 6)
    assert SweepSpec.from_opts(_opts(), "omega").workers == 6
    assert SweepSpec.from_opts(_opts(sweep__workers=0), "omega").workers == 6
    assert SweepSpec.from_opts(_opts(sweep__workers=2), "omega").workers == 2
    monkeypatch.setattr(os, "cpu_count", lambda: None)
    assert SweepSpec.from_opts(_opts(), "bandwidth").workers == 1
    with pytest.raises(ConfigError):
        SweepSpec.from_opts(_opts(sweep__workers=-1), "omega")
