# --------------------------------------------------------
# Licensed under The MIT License
# --------------------------------------------------------

import math
from typing import List, Optional, Sequence

import numpy as np
import pandas as pd
from sklearn.metrics import mutual_info_score
from sklearn.preprocessing import KBinsDiscretizer

from common import DEFAULT_IG_BINS


def _is_numeric(values: np.ndarray) -> bool:
    # integer, boolean and string columns are categorical; floats are numeric
    return values.dtype.kind == "f"


def entropy_bits(labels: Sequence) -> float:
    _, counts = np.unique(np.asarray(labels), return_counts=True)
    p = counts / counts.sum()
    return float(-(p * np.log2(p)).sum())


def discretize_factor(values: Sequence, n_bins: int = DEFAULT_IG_BINS) -> np.ndarray:
    """Equal-frequency bins for numeric factors, category codes otherwise."""
    values = np.asarray(values)
    if not _is_numeric(values) or np.unique(values).size <= n_bins:
        return np.unique(values, return_inverse=True)[1]
    binner = KBinsDiscretizer(
        n_bins=n_bins, encode="ordinal", strategy="quantile", subsample=None
    )
    return binner.fit_transform(values.reshape(-1, 1)).ravel().astype(np.int64)


def discretize_label(values: Sequence) -> np.ndarray:
    """Median split for numeric labels, category codes otherwise."""
    values = np.asarray(values)
    if _is_numeric(values):
        return (values > np.median(values)).astype(np.int64)
    return np.unique(values, return_inverse=True)[1]


def information_gain(
    factor_column: Sequence, label_column: Sequence, n_bins: int = DEFAULT_IG_BINS
) -> float:
    """H(label) - H(label | factor) in bits, plug-in estimate."""
    if len(factor_column) != len(label_column):
        raise ValueError(
            "Factor and label should have the same length. Got: {} and {}".format(
                len(factor_column), len(label_column)
            )
        )
    if len(label_column) < 2:
        raise ValueError("Information gain needs at least 2 rows")

    label = discretize_label(label_column)
    h_label = entropy_bits(label)
    if h_label == 0.0:
        return 0.0
    factor = discretize_factor(factor_column, n_bins=n_bins)
    # mutual information equals the information gain; sklearn reports nats
    gain = mutual_info_score(label, factor) / math.log(2.0)
    return float(min(max(gain, 0.0), h_label))


def rank_top_k(
    table: pd.DataFrame,
    k: int,
    label: str = "engagement",
    factors: Optional[List[str]] = None,
    n_bins: int = DEFAULT_IG_BINS,
) -> List[str]:
    """Factors ordered by information gain (descending, ties by column order)."""
    factors = [c for c in table.columns if c != label] if factors is None else factors
    if k > len(factors):
        raise ValueError(
            "Cannot select top-{} out of {} factors".format(k, len(factors))
        )
    gains = [
        information_gain(table[name].to_numpy(), table[label].to_numpy(), n_bins)
        for name in factors
    ]
    order = sorted(range(len(factors)), key=lambda idx: -gains[idx])
    return [factors[idx] for idx in order[:k]]
