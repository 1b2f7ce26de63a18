# --------------------------------------------------------
# Licensed under The MIT License
# --------------------------------------------------------

import os
from typing import Optional

import numpy as np

from utils import logger

# independent random streams derived from the run seed
STREAM_PLACEMENT = 0
STREAM_MOBILITY = 1
STREAM_FADING = 2
STREAM_DATASET = 3


def make_rng(seed: int, *keys: int) -> np.random.Generator:
    """Generator that is a pure function of ``(seed, *keys)``.

    Channel and mobility draws key their streams by (stream, slot, user_id), so a
    sample never depends on how many draws other users or slots consumed.
    """
    return np.random.default_rng(np.random.SeedSequence([int(seed)] + [int(k) for k in keys]))


def create_directories(dir_path: str, verbose: Optional[bool] = True) -> None:
    """Helper function to create directories"""
    if not os.path.isdir(dir_path):
        os.makedirs(dir_path, exist_ok=True)
        if verbose:
            logger.log("Directory created at: {}".format(dir_path))
    elif verbose:
        logger.log("Directory exists at: {}".format(dir_path))
