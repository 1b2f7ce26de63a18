# --------------------------------------------------------
# Licensed under The MIT License
# --------------------------------------------------------

import argparse
from typing import List, Optional

from channel import arguments_channel
from common import (
    DEFAULT_BANDWIDTH_HZ,
    DEFAULT_HORIZON_SLOTS,
    DEFAULT_LOG_FREQ,
    DEFAULT_N_USERS,
    DEFAULT_SWEEP_SEEDS,
    SUPPORTED_TASKS,
)
from noma import arguments_noma
from options.utils import load_config_file
from qoe import arguments_qoe
from scheduler import arguments_scheduler
from utils.exceptions import ConfigError
from video import arguments_video


class ParseKwargs(argparse.Action):
    def __call__(self, parser, namespace, values, option_string=None):
        # convert values into dict
        override_dict = {}
        for val in values:
            val_list = val.split("=")
            if len(val_list) != 2:
                raise ConfigError(
                    "For override arguments, a key-value pair of the form key=value is expected. Got: {}".format(
                        val
                    )
                )
            override_dict[val_list[0].replace("-", "_")] = val_list[1]

        # determine the type of each value from parser actions and set accordingly
        for option in parser._actions:
            option_dest = option.dest
            if option_dest in override_dict:
                val = override_dict[option_dest]
                if option.nargs == 0:
                    # Boolean argument
                    # value could be false, False, true, True
                    override_dict[option_dest] = val.lower().find("true") > -1
                elif option.nargs is None:
                    override_dict[option_dest] = (
                        option.type(val) if option.type is not None else val
                    )
                elif option.nargs in ["+", "*"]:
                    # for list, we expect value to be comma separated
                    override_dict[option_dest] = [
                        option.type(v) if option.type is not None else v
                        for v in val.split(",")
                    ]
        setattr(namespace, "override_args", override_dict)


def arguments_common(parser: argparse.ArgumentParser) -> argparse.ArgumentParser:
    group = parser.add_argument_group(
        title="Common arguments", description="Common arguments"
    )

    group.add_argument("--common.seed", "--seed", type=int, default=0, help="Random seed")
    group.add_argument(
        "--common.config-file",
        "--config",
        type=str,
        default=None,
        help="Configuration file (YAML, or one key = value per line)",
    )
    group.add_argument(
        "--common.results-loc",
        "--out-dir",
        type=str,
        default="results",
        help="Directory where results will be stored",
    )
    group.add_argument(
        "--common.log-freq",
        type=int,
        default=DEFAULT_LOG_FREQ,
        help="Display progress after these many slots",
    )
    group.add_argument(
        "--common.override-kwargs",
        nargs="*",
        action=ParseKwargs,
        help="Override arguments. Example. To override the value of --sched.omega, "
        "we can pass override argument as "
        "--common.override-kwargs sched.omega=8 \n "
        "Note that keys in override arguments do not contain -- or -",
    )
    return parser


def arguments_sim(parser: argparse.ArgumentParser) -> argparse.ArgumentParser:
    group = parser.add_argument_group(
        title="Simulation arguments", description="Simulation arguments"
    )
    group.add_argument(
        "--sim.n-users", type=int, default=DEFAULT_N_USERS, help="Number of users"
    )
    group.add_argument(
        "--sim.horizon-slots",
        type=int,
        default=DEFAULT_HORIZON_SLOTS,
        help="Number of simulated slots",
    )
    group.add_argument(
        "--sim.bandwidth-hz",
        type=float,
        default=DEFAULT_BANDWIDTH_HZ,
        help="System bandwidth, split equally across clusters",
    )
    return parser


def arguments_sweep(parser: argparse.ArgumentParser) -> argparse.ArgumentParser:
    group = parser.add_argument_group(
        title="Sweep arguments", description="Sweep arguments"
    )
    group.add_argument(
        "--sweep.omegas", type=float, nargs="+", default=None, help="Grid of omega"
    )
    group.add_argument(
        "--sweep.bandwidths-hz",
        type=float,
        nargs="+",
        default=None,
        help="Grid of system bandwidths",
    )
    group.add_argument(
        "--sweep.seeds",
        type=int,
        default=DEFAULT_SWEEP_SEEDS,
        help="Number of seeds per grid value, counted from --common.seed",
    )
    group.add_argument(
        "--sweep.seed-list",
        type=int,
        nargs="*",
        default=None,
        help="Explicit seeds. Takes precedence over --sweep.seeds",
    )
    group.add_argument(
        "--sweep.workers",
        type=int,
        default=0,
        help="Number of worker processes. 0 uses one per CPU",
    )
    return parser


def get_sim_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="NOMA video streaming simulator", add_help=True
    )
    parser.add_argument("task", type=str, choices=SUPPORTED_TASKS, help="Task to run")

    parser = arguments_channel(parser=parser)
    parser = arguments_noma(parser=parser)
    parser = arguments_video(parser=parser)
    parser = arguments_qoe(parser=parser)
    parser = arguments_scheduler(parser=parser)
    parser = arguments_sim(parser=parser)
    parser = arguments_sweep(parser=parser)
    parser = arguments_common(parser=parser)
    return parser


def get_sim_arguments(args: Optional[List[str]] = None) -> argparse.Namespace:
    """Parse ``args``; command-line values win over config-file values."""
    parser = get_sim_parser()
    opts = parser.parse_args(args)

    config_file_name = getattr(opts, "common.config_file", None)
    if config_file_name is not None:
        namespace = load_config_file(parser, config_file_name)
        opts = parser.parse_args(args, namespace=namespace)

    # override arguments
    override_args = getattr(opts, "override_args", None)
    if override_args is not None:
        for override_k, override_v in override_args.items():
            if hasattr(opts, override_k):
                setattr(opts, override_k, override_v)
    return opts
