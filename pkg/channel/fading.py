# --------------------------------------------------------
# Licensed under The MIT License
# --------------------------------------------------------

from typing import Optional, Union

import numpy as np


def sample_fading(
    rng: np.random.Generator, size: Optional[int] = None
) -> Union[float, np.ndarray]:
    """Squared magnitude |h|^2 of a unit-power Rayleigh envelope, i.e. Exp(1)."""
    draw = rng.exponential(scale=1.0, size=size)
    return float(draw) if size is None else draw
