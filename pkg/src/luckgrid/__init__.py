"""Talent-vs-luck agent simulation with social networks and movement strategies."""

from luckgrid.config import ALL_COMBOS, SweepSpec, parse_config, serialize_params
from luckgrid.engine import RunResult, apply_event, run, step
from luckgrid.model import (
    Agent,
    EventCircle,
    EventKind,
    MovementRule,
    NetworkRule,
    SimParams,
    WorldState,
    init_world,
)
from luckgrid.stats import SummaryMetrics, gini, lorenz, mean_std
from luckgrid.sweep import run_sweep

__all__ = [
    "ALL_COMBOS", "Agent", "EventCircle", "EventKind", "MovementRule", "NetworkRule",
    "RunResult", "SimParams", "SummaryMetrics", "SweepSpec", "WorldState", "apply_event",
    "gini", "init_world", "lorenz", "mean_std", "parse_config", "run", "run_sweep",
    "serialize_params", "step",
]

__version__ = "0.1.0"
