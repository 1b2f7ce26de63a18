# --------------------------------------------------------
# Licensed under The MIT License
# --------------------------------------------------------

import pytest

from common import EXIT_CONFIG_ERROR, EXIT_OK, EXIT_RUNTIME_ERROR
from engine import TRACE_FILE
from main_sim import RUN_CSV, main_worker
from options.opts import get_sim_arguments
from utils.exceptions import ConfigError

YAML_CONFIG = """
sched:
  omega: 8
  mode: baseline
sim:
  n_users: 5
noma:
  stale_csi: true
sweep:
  omegas: [0, 1.5]
video:
  ladder: ["1e6:30", "2e6:35"]
"""

FLAT_CONFIG = """
# flat configuration
sched.omega = 2.5
sim.n-users = 3  # trailing comment
noma.stale-csi = true
sweep.omegas = 0, 1, 2
"""


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_defaults():
    opts = get_sim_arguments(["run"])
    assert opts.task == "run"
    assert getattr(opts, "sched.omega") == 4.0
    assert getattr(opts, "sched.mode") == "qoe_aware"
    assert getattr(opts, "sim.n_users") == 4
    assert getattr(opts, "noma.stale_csi") is False
    assert getattr(opts, "common.seed") == 0


def test_aliases():
    opts = get_sim_arguments(
        ["run", "--seed", "5", "--omega", "3", "--mode", "baseline", "--out-dir", "x"]
    )
    assert getattr(opts, "common.seed") == 5
    assert getattr(opts, "sched.omega") == 3.0
    assert getattr(opts, "sched.mode") == "baseline"
    assert getattr(opts, "common.results_loc") == "x"


def test_yaml_config(tmp_path):
    path = _write(tmp_path, "config.yaml", YAML_CONFIG)
    opts = get_sim_arguments(["run", "--config", path])
    assert getattr(opts, "sched.omega") == 8.0
    assert getattr(opts, "sched.mode") == "baseline"
    assert getattr(opts, "sim.n_users") == 5
    assert getattr(opts, "noma.stale_csi") is True
    assert getattr(opts, "sweep.omegas") == [0.0, 1.5]
    assert getattr(opts, "video.ladder") == ["1e6:30", "2e6:35"]


def test_flat_config(tmp_path):
    path = _write(tmp_path, "config.txt", FLAT_CONFIG)
    opts = get_sim_arguments(["sweep-omega", "--config", path])
    assert getattr(opts, "sched.omega") == 2.5
    assert getattr(opts, "sim.n_users") == 3
    assert getattr(opts, "noma.stale_csi") is True
    assert getattr(opts, "sweep.omegas") == [0.0, 1.0, 2.0]


def test_command_line_wins_over_config(tmp_path):
    path = _write(tmp_path, "config.yaml", YAML_CONFIG)
    opts = get_sim_arguments(
        ["run", "--config", path, "--omega", "1", "--sim.n-users", "2"]
    )
    assert getattr(opts, "sched.omega") == 1.0
    assert getattr(opts, "sim.n_users") == 2
    assert getattr(opts, "sched.mode") == "baseline"


def test_unknown_key_is_reported(tmp_path, capsys):
    path = _write(tmp_path, "config.txt", "bogus.key = 1\nsched.omega = 6\n")
    opts = get_sim_arguments(["run", "--config", path])
    assert getattr(opts, "sched.omega") == 6.0
    assert not hasattr(opts, "bogus.key")
    assert "Unknown config key ignored: bogus.key" in capsys.readouterr().err


@pytest.mark.parametrize(
    "text",
    [
        "sim.n_users = many\n",
        "sched.mode = fancy\n",
        "noma.stale_csi = sometimes\n",
        "sched.omega 8\n",
    ],
)
def test_bad_config_values(tmp_path, text):
    path = _write(tmp_path, "config.txt", text)
    with pytest.raises(ConfigError):
        get_sim_arguments(["run", "--config", path])


def test_missing_config_file(tmp_path):
    with pytest.raises(ConfigError, match="does not exists"):
        get_sim_arguments(["run", "--config", str(tmp_path / "absent.yaml")])


def test_override_kwargs():
    opts = get_sim_arguments(
        ["run", "--common.override-kwargs", "sched.omega=8", "sim.n_users=2"]
    )
    assert getattr(opts, "sched.omega") == 8.0
    assert getattr(opts, "sim.n_users") == 2

    with pytest.raises(ConfigError):
        get_sim_arguments(["run", "--common.override-kwargs", "sched.omega"])


def _small_run(out_dir):
    return [
        "--out-dir",
        str(out_dir),
        "--sim.n-users",
        "2",
        "--sim.horizon-slots",
        "12",
        "--noma.power-grid-step",
        "0.1",
        "--common.log-freq",
        "0",
    ]


def test_run_then_replay(tmp_path):
    assert main_worker(["run"] + _small_run(tmp_path)) == EXIT_OK
    assert (tmp_path / TRACE_FILE).is_file()
    assert (tmp_path / RUN_CSV).is_file()
    assert main_worker(["replay"] + _small_run(tmp_path)) == EXIT_OK


def test_config_error_exit_code(tmp_path):
    args = ["run", "--out-dir", str(tmp_path), "--sim.n-users", "0"]
    with pytest.raises(SystemExit) as e:
        main_worker(args)
    assert e.value.code == EXIT_CONFIG_ERROR


def test_runtime_error_exit_code(tmp_path):
    with pytest.raises(SystemExit) as e:
        main_worker(["replay", "--out-dir", str(tmp_path)])
    assert e.value.code == EXIT_RUNTIME_ERROR
