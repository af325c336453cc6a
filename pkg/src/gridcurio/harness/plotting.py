"""Learning-curve plots: one line per label, std bands across seeds."""

from __future__ import annotations

from collections import defaultdict
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .metrics import read_metrics


def emit_plot(metrics_files: Sequence[str], labels: Sequence[str],
              optimal_return: float, out_path: str) -> str:
    """Write an SVG chart of windowed mean return over training steps.

    Files sharing a label are treated as seeds of one configuration and
    drawn as mean line plus a +/-1 std band; the dashed horizontal line
    marks the optimal-policy return."""
    if not metrics_files:
        raise ValueError("emit_plot: need at least one metrics file")
    if len(labels) != len(metrics_files):
        raise ValueError("emit_plot: one label per metrics file required")

    groups = defaultdict(list)
    for path, label in zip(metrics_files, labels):
        rows = read_metrics(path)
        steps = np.array([r["global_step"] for r in rows])
        values = np.array([r["mean_return"] for r in rows])
        groups[label].append((steps, values))

    fig, ax = plt.subplots(figsize=(7, 4.5))
    for label, series in groups.items():
        grid = np.unique(np.concatenate([s for s, _ in series]))
        stacked = np.stack([np.interp(grid, s, v) for s, v in series])
        mean = stacked.mean(axis=0)
        line, = ax.plot(grid, mean, label=label)
        if len(series) > 1:
            std = stacked.std(axis=0)
            ax.fill_between(grid, mean - std, mean + std,
                            color=line.get_color(), alpha=0.2, linewidth=0)
    ax.axhline(optimal_return, color="black", linestyle="--", linewidth=1)
    ax.set_xlabel("environment steps")
    ax.set_ylabel("mean return")
    ax.legend()
    fig.tight_layout()
    fig.savefig(out_path, format="svg")
    plt.close(fig)
    return out_path
