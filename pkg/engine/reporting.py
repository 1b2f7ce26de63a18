# --------------------------------------------------------
# Licensed under The MIT License
# --------------------------------------------------------

import os
from typing import Dict, Iterable

import pandas as pd

from common import CSV_NA, SWEEP_CSV_HEADER
from utils.common_utils import create_directories

_DTYPES = {
    "variable": "object",
    "value": "float64",
    "seed": "Int64",
    "mode": "object",
    "mean_psnr_db": "float64",
    "stall_count": "Int64",
    "join_time_slots": "float64",
    "mean_rate_bps": "float64",
}


def make_table(rows: Iterable[Dict]) -> pd.DataFrame:
    """Sweep table with the CSV column order and dtypes; None marks a missing value."""
    table = pd.DataFrame(list(rows), columns=SWEEP_CSV_HEADER)
    return table.astype(_DTYPES).reset_index(drop=True)


def emit_csv(table: pd.DataFrame, path: str) -> None:
    if len(table) == 0:
        raise ValueError("Cannot emit an empty table")
    create_directories(os.path.dirname(path) or ".", verbose=False)
    # pandas writes the shortest repr of every float, which parses back exactly
    make_table(table.to_dict("records")).to_csv(
        path, index=False, na_rep=CSV_NA, columns=SWEEP_CSV_HEADER
    )


def parse_csv(path: str) -> pd.DataFrame:
    table = pd.read_csv(
        path,
        na_values=[CSV_NA],
        keep_default_na=False,
        float_precision="round_trip",
        dtype={"variable": str, "mode": str},
    )
    if list(table.columns) != SWEEP_CSV_HEADER:
        raise ValueError(
            "Unexpected CSV header in {}: {}".format(path, list(table.columns))
        )
    return table.astype(_DTYPES)
