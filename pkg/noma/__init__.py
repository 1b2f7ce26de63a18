# --------------------------------------------------------
# Licensed under The MIT License
# --------------------------------------------------------

import argparse

from common import (
    DEFAULT_MAX_CLUSTER_SIZE,
    DEFAULT_POWER_GRID_STEP,
    DEFAULT_TOTAL_POWER_DBM,
)

from .partitions import enumerate_partitions
from .power import power_grid, power_grid_matrix
from .sic import (
    layer_rates,
    sic_decode_outcome,
    sic_rate_matrix,
    sic_rates,
    sum_rate_bound,
)
from .structures import Cluster, ClusterPlan, NomaConfig, PowerAllocation, RateVector


def arguments_noma(parser: argparse.ArgumentParser) -> argparse.ArgumentParser:
    group = parser.add_argument_group(
        title="NOMA arguments", description="Power-domain NOMA arguments"
    )
    group.add_argument(
        "--noma.total-power-dbm",
        type=float,
        default=DEFAULT_TOTAL_POWER_DBM,
        help="Base station transmit power, split equally across clusters",
    )
    group.add_argument(
        "--noma.max-cluster-size",
        type=int,
        default=DEFAULT_MAX_CLUSTER_SIZE,
        choices=[1, 2, 3],
        help="Max. users per subcarrier. 1 gives an orthogonal (OMA) reference",
    )
    group.add_argument(
        "--noma.power-grid-step",
        type=float,
        default=DEFAULT_POWER_GRID_STEP,
        help="Step of the within-cluster power fraction grid",
    )
    group.add_argument(
        "--noma.stale-csi",
        action="store_true",
        help="Schedule on the previous slot's gains while the channel realizes the current ones",
    )
    group.add_argument(
        "--noma.sic-capability",
        type=int,
        nargs="*",
        default=None,
        help="Per-user max. number of foreign layers the receiver can cancel",
    )
    return parser
