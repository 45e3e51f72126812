"""Core modules - configuration, presets, errors and execution results."""

from scatterbayes.core.config import ExperimentConfig
from scatterbayes.core.execution import ExecutionResult, ExecutionStatus
from scatterbayes.core.presets import PRESETS

__all__ = [
    "ExperimentConfig",
    "ExecutionResult",
    "ExecutionStatus",
    "PRESETS",
]
