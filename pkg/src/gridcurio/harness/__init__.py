from .config import EMBED_URL_ENV_VAR, ExperimentConfig, config_echo, load_config, parse_config_text
from .experiment import run_experiment
from .gridsearch import best_beta, beta_grid_search
from .metrics import (
    COLUMNS,
    MetricsParseError,
    MetricsWriter,
    read_metrics,
    steps_to_convergence,
)
from .plotting import emit_plot

__all__ = [
    "EMBED_URL_ENV_VAR", "ExperimentConfig", "config_echo", "load_config",
    "parse_config_text", "run_experiment", "best_beta", "beta_grid_search",
    "COLUMNS", "MetricsParseError", "MetricsWriter", "read_metrics",
    "steps_to_convergence", "emit_plot",
]
