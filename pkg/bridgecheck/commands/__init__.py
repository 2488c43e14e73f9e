"""
Command implementations behind the ``bridgecheck`` CLI.
"""

from .experiments import (
    EXPERIMENT_NAMES,
    ExperimentOverrides,
    cmd_all,
    cmd_experiment,
    cmd_replay,
    resolve_config,
)
from .graphs import cmd_gap, cmd_generate, cmd_resistance

__all__ = [
    "EXPERIMENT_NAMES",
    "ExperimentOverrides",
    "cmd_all",
    "cmd_experiment",
    "cmd_gap",
    "cmd_generate",
    "cmd_replay",
    "cmd_resistance",
    "resolve_config",
]
