"""Append-only CSV metrics and convergence detection."""

from __future__ import annotations

import csv
from pathlib import Path
from typing import List, Optional

COLUMNS = [
    "global_step", "episodes_completed", "mean_return",
    "mean_episode_length", "mean_intrinsic_reward",
    "forward_loss", "inverse_loss", "policy_loss", "value_loss",
    "entropy", "wall_clock_seconds",
]


class MetricsParseError(ValueError):
    def __init__(self, path, lineno, message):
        super().__init__(f"{path}:{lineno}: {message}")
        self.lineno = lineno


class MetricsWriter:
    """Single-writer CSV log, flushed on every row so crashes keep data."""

    def __init__(self, path):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._fh = open(self.path, "w", newline="")
        self._writer = csv.writer(self._fh)
        self._writer.writerow(COLUMNS)
        self._fh.flush()
        self._last_step = -1

    def write(self, **fields) -> None:
        step = fields["global_step"]
        if step <= self._last_step:
            raise ValueError("metrics rows must be strictly increasing in "
                             "global_step")
        self._last_step = step
        self._writer.writerow([fields[c] for c in COLUMNS])
        self._fh.flush()

    def close(self) -> None:
        self._fh.close()


def read_metrics(path) -> List[dict]:
    rows = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise MetricsParseError(path, 1, "empty metrics file")
        if header != COLUMNS:
            raise MetricsParseError(path, 1, f"unexpected header {header}")
        for lineno, row in enumerate(reader, start=2):
            if len(row) != len(COLUMNS):
                raise MetricsParseError(path, lineno,
                                        f"expected {len(COLUMNS)} fields, "
                                        f"got {len(row)}")
            try:
                rows.append({c: float(v) for c, v in zip(COLUMNS, row)})
            except ValueError as err:
                raise MetricsParseError(path, lineno, str(err))
    return rows


def steps_to_convergence(metrics_path, optimal_return: float,
                         threshold: float = 0.95,
                         window: int = 1) -> Optional[int]:
    """First global_step whose (optionally row-smoothed) windowed mean
    return reaches threshold * optimal_return and stays there for every
    later logged row; None if that never happens."""
    rows = read_metrics(metrics_path)
    if not rows:
        return None
    values = [r["mean_return"] for r in rows]
    if window > 1:
        values = [sum(values[max(0, i - window + 1):i + 1])
                  / len(values[max(0, i - window + 1):i + 1])
                  for i in range(len(values))]
    bar = threshold * optimal_return
    result = None
    for row, value in zip(rows, values):
        if value >= bar:
            if result is None:
                result = int(row["global_step"])
        else:
            result = None
    return result
