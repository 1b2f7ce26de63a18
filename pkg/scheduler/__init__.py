# --------------------------------------------------------
# Licensed under The MIT License
# --------------------------------------------------------

import argparse
import importlib
import os

from common import DEFAULT_DECISION_SPACE_LIMIT, DEFAULT_OMEGA, SUPPORTED_SCHEDULER_MODES
from utils import logger
from utils.exceptions import ConfigError

from .base_scheduler import BaseScheduler
from .objective import map_demands, plan_rates, qoe_objective, stall_predicted, user_value
from .state import BufferSnapshot, SchedulerConfig, SlotDecision, SlotState

SCHEDULER_REGISTRY = {}


def register_scheduler(name: str):
    def register_scheduler_class(cls):
        if name in SCHEDULER_REGISTRY:
            raise ValueError("Cannot register duplicate scheduler ({})".format(name))

        if not issubclass(cls, BaseScheduler):
            raise ValueError(
                "Scheduler ({}: {}) must extend BaseScheduler".format(name, cls.__name__)
            )

        SCHEDULER_REGISTRY[name] = cls
        return cls

    return register_scheduler_class


def get_scheduler(config: SchedulerConfig) -> BaseScheduler:
    if config.mode not in SCHEDULER_REGISTRY:
        supp_str = "Scheduler ({}) not yet supported. \n Supported schedulers are:".format(
            config.mode
        )
        for i, m_name in enumerate(SCHEDULER_REGISTRY.keys()):
            supp_str += "\n\t {}: {}".format(i, logger.color_text(m_name))
        raise ConfigError(supp_str)
    return SCHEDULER_REGISTRY[config.mode](config)


def build_scheduler(opts) -> BaseScheduler:
    return get_scheduler(SchedulerConfig.from_opts(opts))


def schedule_qoe_aware(state: SlotState, config: SchedulerConfig) -> SlotDecision:
    return SCHEDULER_REGISTRY["qoe_aware"](config).schedule(state)


def schedule_baseline(state: SlotState, config: SchedulerConfig) -> SlotDecision:
    return SCHEDULER_REGISTRY["baseline"](config).schedule(state)


def general_scheduler_args(parser: argparse.ArgumentParser) -> argparse.ArgumentParser:
    group = parser.add_argument_group(
        title="Scheduler arguments", description="Scheduler arguments"
    )
    group.add_argument(
        "--sched.mode",
        "--mode",
        type=str,
        default="qoe_aware",
        choices=SUPPORTED_SCHEDULER_MODES,
        help="Scheduler",
    )
    group.add_argument(
        "--sched.omega",
        "--omega",
        type=float,
        default=DEFAULT_OMEGA,
        help="Drift-plus-penalty control parameter",
    )
    group.add_argument(
        "--sched.decision-space-limit",
        type=int,
        default=DEFAULT_DECISION_SPACE_LIMIT,
        help="Max. number of candidates a slot may enumerate",
    )
    group.add_argument(
        "--sched.min-rate-bps",
        type=float,
        nargs="*",
        default=None,
        help="Per-user min. predicted rate of a scheduled split. Empty disables it",
    )
    return parser


def arguments_scheduler(parser: argparse.ArgumentParser) -> argparse.ArgumentParser:
    parser = general_scheduler_args(parser=parser)

    # add scheduler specific arguments
    for k, v in SCHEDULER_REGISTRY.items():
        parser = v.add_arguments(parser=parser)
    return parser


# automatically import the schedulers
sched_dir = os.path.dirname(__file__)
for file in os.listdir(sched_dir):
    path = os.path.join(sched_dir, file)
    if (
        not file.startswith("_")
        and not file.startswith(".")
        and (file.endswith(".py") or os.path.isdir(path))
    ):
        sched_name = file[: file.find(".py")] if file.endswith(".py") else file
        module = importlib.import_module("scheduler." + sched_name)
