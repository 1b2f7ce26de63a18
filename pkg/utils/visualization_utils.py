# --------------------------------------------------------
# Licensed under The MIT License
# --------------------------------------------------------

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd

from utils.common_utils import create_directories

PANELS = [("mean_psnr_db", "Mean PSNR (dB)"), ("stall_count", "Stall events")]
X_LABELS = {"omega": r"$\omega$", "bandwidth": "Bandwidth (MHz)"}
MODE_STYLE = {
    "qoe_aware": dict(color="tab:blue", marker="o", label="QoE-aware NOMA"),
    "baseline": dict(color="tab:orange", marker="s", label="QoE-oblivious NOMA"),
}


def seed_average(table: pd.DataFrame, column: str) -> pd.DataFrame:
    """Mean of ``column`` over seeds, one row per (mode, value); NA rows are skipped."""
    return (
        table.dropna(subset=[column])
        .astype({column: "float64"})
        .groupby(["mode", "value"], sort=True)[column]
        .mean()
        .reset_index()
    )


def emit_chart(table: pd.DataFrame, path: str) -> None:
    """Seed-averaged PSNR and stall count against the swept variable, as SVG.

    Each line carries the id ``series-<mode>-<metric>``.
    """
    if len(table) == 0:
        raise ValueError("Cannot plot an empty table")
    create_directories(os.path.dirname(path) or ".", verbose=False)
    variable = str(table["variable"].iloc[0])
    scale = 1e-6 if variable == "bandwidth" else 1.0

    plt.rcParams["svg.hashsalt"] = "noma-video-sim"
    fig, axes = plt.subplots(1, len(PANELS), figsize=(9, 3.5))
    for ax, (column, y_label) in zip(axes, PANELS):
        averages = seed_average(table, column)
        for mode in sorted(table["mode"].unique()):
            series = averages[averages["mode"] == mode]
            (line,) = ax.plot(
                series["value"] * scale,
                series[column],
                **MODE_STYLE.get(mode, dict(label=mode))
            )
            line.set_gid("series-{}-{}".format(mode, column))
        ax.set_xlabel(X_LABELS.get(variable, variable))
        ax.set_ylabel(y_label)
        ax.grid(True, alpha=0.3)
        ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, format="svg", bbox_inches="tight", metadata={"Date": None})
    plt.close(fig)
