"""
Sweep Writer
Writes cost sweeps as CSV tables and log-log SVG charts
"""

import logging
from pathlib import Path
from typing import List, Union

import pandas as pd

from ..analysis.cost_model import SweepRow
from ..core.specs import ArchKind

logger = logging.getLogger(__name__)

CSV_COLUMNS = ["arch", "mode", "P", "R", "N", "multiplications"]


def sweep_frame(rows: List[SweepRow]) -> pd.DataFrame:
    """Rows as a DataFrame with exactly the CSV columns, in row order"""
    return pd.DataFrame([row.to_dict() for row in rows], columns=CSV_COLUMNS)


def write_csv(rows: List[SweepRow], path: Union[str, Path]) -> Path:
    """Header-only for an empty sweep; integers are written without separators"""
    path = Path(path)
    sweep_frame(rows).to_csv(path, index=False, lineterminator="\n")
    logger.info("wrote %d sweep rows to %s", len(rows), path)
    return path


def write_chart(rows: List[SweepRow], path: Union[str, Path], title: str = "") -> Path:
    """Static log-log chart of cost vs N, one series per architecture"""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    path = Path(path)
    frame = sweep_frame(rows)
    fig, ax = plt.subplots(figsize=(7, 5))
    for arch_value, series in frame.groupby("arch", sort=False):
        ax.plot(series["N"], series["multiplications"], "o-", label=ArchKind(arch_value).label)

    if not frame.empty:
        ax.set_xscale("log")
        ax.set_yscale("log")
        ax.legend()
    ax.set_xlabel("Hidden neurons N (log scale)")
    ax.set_ylabel("Real multiplications (log scale)")
    if title:
        ax.set_title(title)
    ax.grid(True, which="both", ls="--", alpha=0.4)

    with plt.rc_context({"svg.hashsalt": "cvnn-cost"}):
        fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    logger.info("wrote chart to %s", path)
    return path
