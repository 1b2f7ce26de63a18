# --------------------------------------------------------
# Licensed under The MIT License
# --------------------------------------------------------

from functools import lru_cache
from typing import List, Tuple, Union

import numpy as np

from .structures import Cluster, PowerAllocation

# largest power share of the weak user in a pair
MAX_WEAK_FRACTION = 0.95
_EPS = 1e-9


@lru_cache(maxsize=32)
def _grid(size: int, step: float) -> Tuple[Tuple[float, ...], ...]:
    if size == 1:
        return ((1.0,),)

    if size == 2:
        grid = []
        k = 1
        while 0.5 + k * step <= MAX_WEAK_FRACTION + _EPS:
            weak = round(0.5 + k * step, 12)
            grid.append((round(1.0 - weak, 12), weak))
            k += 1
        return tuple(grid)

    if size == 3:
        # strong < middle < weak, every share a positive multiple of step
        grid = []
        a = 1
        while 3 * a * step < 1.0 - _EPS:
            b = a + 1
            while True:
                strong, middle = round(a * step, 12), round(b * step, 12)
                weak = round(1.0 - strong - middle, 12)
                if weak <= middle + _EPS:
                    break
                grid.append((strong, middle, weak))
                b += 1
            a += 1
        return tuple(grid)

    raise ValueError("Power grid supports clusters of 1 to 3 users. Got: {}".format(size))


def power_grid(cluster: Union[Cluster, int], step: float) -> List[PowerAllocation]:
    """Candidate power splits of a cluster; the weaker member always gets more."""
    size = cluster if isinstance(cluster, int) else len(cluster)
    return [PowerAllocation(fractions=f) for f in _grid(size, float(step))]


def power_grid_matrix(size: int, step: float) -> np.ndarray:
    """``power_grid`` as an (allocations x members) array."""
    return np.asarray(_grid(size, float(step)), dtype=np.float64).reshape(-1, size)
