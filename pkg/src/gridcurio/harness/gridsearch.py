"""Grid search over the intrinsic reward scale."""

from __future__ import annotations

import csv
import dataclasses
import math
from pathlib import Path
from typing import List, Optional, Tuple

from ..gridworld.solver import optimal_return_estimate
from .config import ExperimentConfig
from .experiment import run_experiment
from .metrics import steps_to_convergence


def _median_with_failures(values: List[Optional[int]]) -> Optional[int]:
    ranked = sorted(math.inf if v is None else v for v in values)
    mid = ranked[(len(ranked) - 1) // 2] if len(ranked) % 2 else \
        (ranked[len(ranked) // 2 - 1] + ranked[len(ranked) // 2]) / 2
    return None if math.isinf(mid) else int(mid)


def beta_grid_search(base_config: ExperimentConfig, grid: List[float]
                     ) -> List[Tuple[float, Optional[int]]]:
    """One experiment per (beta, seed); per-beta median steps to
    convergence, failures recorded as None. Returns one row per beta."""
    if not grid:
        raise ValueError("beta grid must be non-empty")
    optimal = optimal_return_estimate(base_config.env)
    rows: List[Tuple[float, Optional[int]]] = []
    base_out = Path(base_config.output_dir)
    for beta in grid:
        per_seed: List[Optional[int]] = []
        for seed in base_config.seeds:
            config = dataclasses.replace(
                base_config,
                intrinsic=dataclasses.replace(base_config.intrinsic, beta=beta),
                output_dir=str(base_out / f"beta_{beta:g}"))
            try:
                metrics = run_experiment(config, seed)
                per_seed.append(steps_to_convergence(
                    metrics, optimal, base_config.convergence_threshold))
            except Exception:
                per_seed.append(None)
        rows.append((beta, _median_with_failures(per_seed)))

    base_out.mkdir(parents=True, exist_ok=True)
    with open(base_out / "gridsearch.csv", "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["beta", "median_steps_to_convergence"])
        for beta, steps in rows:
            writer.writerow([beta, "-" if steps is None else steps])
    return rows


def best_beta(rows: List[Tuple[float, Optional[int]]]) -> float:
    """Smallest median wins; betas that never converged rank last."""
    return min(rows, key=lambda r: math.inf if r[1] is None else r[1])[0]
