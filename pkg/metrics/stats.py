# --------------------------------------------------------
# Licensed under The MIT License
# --------------------------------------------------------

import sys
import time
from numbers import Number
from typing import Dict, List, Optional

from utils import logger

from . import SUPPORTED_STATS


class Statistics(object):
    """Running averages of per-slot quantities for progress logging."""

    def __init__(
        self,
        metric_names: Optional[list] = ["objective"],
        is_master_node: Optional[bool] = True,
    ) -> None:
        if len(metric_names) == 0:
            raise ValueError("Metric names list cannot be empty")

        # key is the metric name and value is the running sum
        metric_dict: Dict[str, Optional[float]] = {}
        metric_counters = {}
        for m_name in metric_names:
            if m_name in SUPPORTED_STATS:
                metric_dict[m_name] = None
                metric_counters[m_name] = 0
            elif is_master_node:
                logger.log(
                    "{} statistics not supported. Supported: {}".format(
                        m_name, SUPPORTED_STATS
                    )
                )

        self.metric_dict = metric_dict
        self.supported_metrics = list(metric_dict.keys())
        self.metric_counters = metric_counters
        self.round_places = 4
        self.is_master_node = is_master_node

        self.slot_time = 0.0
        self.slot_counter = 0

    def update(self, metric_vals: dict, slot_time: float, n: Optional[int] = 1) -> None:
        for k, v in metric_vals.items():
            if k not in self.supported_metrics:
                continue
            if not isinstance(v, Number):
                raise TypeError(
                    "Only numbers are supported in {}. Got {} for {}".format(
                        self.__class__.__name__, type(v).__name__, k
                    )
                )
            if self.metric_dict[k] is None:
                self.metric_dict[k] = v * n
            else:
                self.metric_dict[k] += v * n
            self.metric_counters[k] += n
        self.slot_time += slot_time
        self.slot_counter += 1

    def avg_statistics_all(self, sep=": ") -> List[str]:
        """
        Average of every tracked metric as a list of strings.

        Examples:
         objective: 12.9152
         rate_bps: 4512000.0
        """
        metric_stats = []
        for k, v in self.metric_dict.items():
            counter = self.metric_counters[k]
            v_avg = None if v is None else round((v * 1.0) / counter, self.round_places)
            metric_stats.append("{:<}{}{}".format(k, sep, v_avg))
        return metric_stats

    def avg_statistics(self, metric_name: str) -> Optional[float]:
        if metric_name not in self.supported_metrics:
            return None
        v = self.metric_dict[metric_name]
        if v is None:
            return None
        return round((v * 1.0) / self.metric_counters[metric_name], self.round_places)

    def iter_summary(self, slot: int, horizon_slots: int, start_time: float) -> None:
        if self.is_master_node:
            metric_stats = self.avg_statistics_all()
            el_time_str = "Elapsed time: {:5.2f}".format(time.time() - start_time)
            slot_str = "Slot: [{:6d}/{:6d}]".format(slot, horizon_slots)
            sched_str = "Avg. slot time: {:1.4f}".format(
                self.slot_time / max(self.slot_counter, 1)
            )

            stats_summary = [slot_str]
            stats_summary.extend(metric_stats)
            stats_summary.append(sched_str)
            stats_summary.append(el_time_str)

            logger.log(", ".join(stats_summary))
            sys.stdout.flush()

    def run_summary(self, label: Optional[str] = "run") -> None:
        if self.is_master_node:
            metric_stats = self.avg_statistics_all(sep="=")
            logger.log("*** {} summary".format(label.title()))
            print("\t {}".format(" || ".join(metric_stats)))
            sys.stdout.flush()
