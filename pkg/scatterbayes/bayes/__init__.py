"""Bayesian layer - observation design, data, prior, likelihood and synthesis."""

from scatterbayes.bayes.design import ObservationDesign, design_directions
from scatterbayes.bayes.observations import Observations, read_observations, write_observations
from scatterbayes.bayes.posterior import (
    ForwardModel,
    Posterior,
    energy,
    forward_map,
    gaussian_log_likelihood,
    log_likelihood,
)
from scatterbayes.bayes.prior import IMPOSSIBLE, PriorSpec, Theta, log_prior
from scatterbayes.bayes.synthesis import build_design, synthesize, synthesize_from_config, true_boundary

__all__ = [
    "IMPOSSIBLE",
    "ForwardModel",
    "ObservationDesign",
    "Observations",
    "Posterior",
    "PriorSpec",
    "Theta",
    "build_design",
    "design_directions",
    "energy",
    "forward_map",
    "gaussian_log_likelihood",
    "log_likelihood",
    "log_prior",
    "read_observations",
    "synthesize",
    "synthesize_from_config",
    "true_boundary",
    "write_observations",
]
