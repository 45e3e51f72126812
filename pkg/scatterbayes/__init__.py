"""scatterbayes - Bayesian shape reconstruction of penetrable scatterers.

Résolution rapide du problème direct de diffraction acoustique 2D
(Lippmann-Schwinger, règle trapézoïdale corrigée), paramétrisation des
obstacles par nuages de points et α-shapes, et échantillonnage de la loi a
posteriori par Metropolis-Hastings.
"""

__version__ = "1.0.0"

from scatterbayes.bayes import ObservationDesign, Observations, Posterior, PriorSpec, Theta
from scatterbayes.core.config import ExperimentConfig
from scatterbayes.core.execution import ExecutionResult, ExecutionStatus
from scatterbayes.core.experiment import Experiment
from scatterbayes.forward import Grid2D, ScattererField, solve_direct, solve_reference
from scatterbayes.geometry import PointCloud, alpha_shape, build_shape, delaunay, spline_hull
from scatterbayes.mcmc import ChainRecord, ChainState, KernelConfig, run_chain, summarize
from scatterbayes.monitoring import SamplerMetrics, configure_logger, get_logger

__all__ = [
    "ChainRecord",
    "ChainState",
    "ExecutionResult",
    "ExecutionStatus",
    "Experiment",
    "ExperimentConfig",
    "Grid2D",
    "KernelConfig",
    "ObservationDesign",
    "Observations",
    "PointCloud",
    "Posterior",
    "PriorSpec",
    "SamplerMetrics",
    "ScattererField",
    "Theta",
    "alpha_shape",
    "build_shape",
    "configure_logger",
    "delaunay",
    "get_logger",
    "run_chain",
    "solve_direct",
    "solve_reference",
    "spline_hull",
    "summarize",
]
