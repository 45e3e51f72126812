"""Modèle direct F(θ), vraisemblance gaussienne et énergie.

Energy(θ) = −log L(d|θ) − log π(b). Les priors uniformes de Q et α
n'interviennent que par leur support : un θ hors support, ou dont
l'α-shape est invalide, a une énergie infinie.
"""

import logging
import time
from typing import TYPE_CHECKING, Optional

import numpy as np

from scatterbayes.bayes.design import ObservationDesign
from scatterbayes.bayes.observations import Observations
from scatterbayes.bayes.prior import IMPOSSIBLE, PriorSpec, Theta, log_prior
from scatterbayes.core.errors import ContractError, InvalidStateError
from scatterbayes.forward.direct import ReducedSystem
from scatterbayes.forward.fields import Grid2D, ScattererField
from scatterbayes.forward.incident import plane_wave_at
from scatterbayes.forward.quadrature import quadrature_weights, resolve_c1
from scatterbayes.geometry.cloud import PointCloud
from scatterbayes.geometry.hull import ShapeGeometry, build_shape
from scatterbayes.geometry.raster import rasterize
from scatterbayes.geometry.spline import DEFAULT_DENSITY
from scatterbayes.geometry.triangulation import Triangulation

if TYPE_CHECKING:
    from scatterbayes.executors.base import BaseExecutor
    from scatterbayes.monitoring.metrics import SamplerMetrics

logger = logging.getLogger(__name__)


def gaussian_log_likelihood(
    predicted: np.ndarray,
    data: np.ndarray,
    wavenumbers: np.ndarray,
    sigmas: np.ndarray,
) -> float:
    """Somme sur les groupes de fréquence des log-densités gaussiennes.

    M_g est le nombre de données complexes du groupe g.

    Args:
        predicted: F(θ), tableau complexe (D, M)
        data: Données d, tableau complexe (D, M)
        wavenumbers: Nombre d'onde de chaque direction, (D,)
        sigmas: Écart-type de chaque direction, (D,)

    Returns:
        Σ_g [−(M_g/2) ln(2πσ_g²) − ½ Σ |d − F(θ)|² / σ_g²]

    Raises:
        ContractError: Si les dimensions diffèrent ou si un σ est nul
    """
    predicted = np.asarray(predicted)
    data = np.asarray(data)
    if predicted.shape != data.shape or data.shape[0] != len(wavenumbers):
        raise ContractError(f"prediction {predicted.shape} and data {data.shape} do not match")
    if np.any(np.asarray(sigmas) <= 0.0):
        raise ContractError("noise levels must be > 0 to evaluate a likelihood")

    total = 0.0
    for k in np.unique(wavenumbers):
        members = np.flatnonzero(wavenumbers == k)
        sigma = float(sigmas[members[0]])
        residual = data[members] - predicted[members]
        total += -0.5 * residual.size * np.log(2.0 * np.pi * sigma**2) - 0.5 * float(np.sum(np.abs(residual) ** 2)) / sigma**2
    return float(total)


class ForwardModel:
    """F(θ) : champ total aux noeuds d'observation pour chaque direction.

    Une factorisation du système réduit par nombre d'onde ; les directions
    d'un même nombre d'onde sont des seconds membres.

    Attributes:
        grid: Grille d'inférence
        design: Design d'observation
        c1: Coefficient de correction de la quadrature
        spline_density: Échantillons de spline par sommet
        residual_tol: Résidu relatif maximum du système réduit
        rcond_min: Seuil de singularité
        executor: Exécuteur des résolutions par nombre d'onde (None = séquentiel)
        metrics: Métriques Prometheus (optionnel)

    Example:
        >>> model = ForwardModel(grid, design)
        >>> model.forward_map(theta).shape
        (8, 96)
    """

    def __init__(
        self,
        grid: Grid2D,
        design: ObservationDesign,
        c1: Optional[float] = None,
        spline_density: int = DEFAULT_DENSITY,
        residual_tol: float = 1e-10,
        rcond_min: float = 1e-13,
        executor: Optional["BaseExecutor"] = None,
        metrics: Optional["SamplerMetrics"] = None,
    ):
        if design.grid != grid:
            raise ContractError("design nodes refer to another grid")
        self.grid = grid
        self.design = design
        self.c1 = resolve_c1(c1)
        self.spline_density = spline_density
        self.residual_tol = residual_tol
        self.rcond_min = rcond_min
        self.executor = executor
        self.metrics = metrics
        self._groups = design.groups()

    def shape(self, cloud: PointCloud, tri: Optional[Triangulation] = None) -> ShapeGeometry:
        return build_shape(cloud, density=self.spline_density, tri=tri)

    def field(self, theta: Theta, shape: ShapeGeometry) -> ScattererField:
        if not shape.valid:
            raise InvalidStateError(f"invalid alpha-shape: {shape.reason}")
        return rasterize(shape.boundary, self.grid, theta.b_value)

    def _solve_group(self, field: ScattererField, k: float, members: np.ndarray) -> np.ndarray:
        started = time.perf_counter()
        directions = self.design.directions[members]
        incident_obs = plane_wave_at(self.design.points, directions, k)
        if field.is_empty:
            return incident_obs

        weights = quadrature_weights(k, self.grid.h, self.grid.N, self.c1)
        system = ReducedSystem.factorize(field, k, weights=weights, rcond_min=self.rcond_min)
        support_points = self.grid.node_coordinates(system.support)
        rhs = plane_wave_at(support_points, directions, k).T
        u_support = system.solve(rhs, residual_tol=self.residual_tol)
        values = system.evaluate(u_support, self.design.nodes, incident_obs.T).T

        if self.metrics is not None:
            self.metrics.observe_solve("direct", time.perf_counter() - started)
        return values

    def forward_map(self, theta: Theta, shape: Optional[ShapeGeometry] = None) -> np.ndarray:
        """F(θ), tableau complexe (D, M).

        Raises:
            InvalidStateError: Si l'α-shape de θ est invalide
            SolverError: Si un système réduit est singulier ou mal résolu
        """
        if shape is None:
            shape = self.shape(theta.cloud)
        field = self.field(theta, shape)

        out = np.empty((self.design.n_directions, self.design.n_points), dtype=complex)
        if self.executor is None:
            for k, _, members in self._groups:
                out[members] = self._solve_group(field, k, members)
            return out

        tasks = [(field, k, members) for k, _, members in self._groups]
        results = self.executor.map(self._solve_group, tasks)
        for (_, _, members), result in zip(tasks, results):
            out[members] = result.unwrap()
        return out


class Posterior:
    """Posterior π(θ|d) ∝ L(d|θ) π(θ) évalué sous forme d'énergie.

    Attributes:
        model: Modèle direct
        observations: Données
        prior: Prior
    """

    def __init__(self, model: ForwardModel, observations: Observations, prior: PriorSpec):
        observations.check_design(model.design)
        self.model = model
        self.observations = observations
        self.prior = prior

    def shape(self, cloud: PointCloud, tri: Optional[Triangulation] = None) -> ShapeGeometry:
        return self.model.shape(cloud, tri)

    def log_likelihood(self, theta: Theta, shape: Optional[ShapeGeometry] = None) -> float:
        predicted = self.model.forward_map(theta, shape)
        obs = self.observations
        return gaussian_log_likelihood(predicted, obs.data, obs.wavenumbers, obs.sigmas)

    def log_prior(self, theta: Theta) -> float:
        return log_prior(theta, self.prior)

    def energy(self, theta: Theta, shape: Optional[ShapeGeometry] = None) -> float:
        """−log L(d|θ) − log π(b) ; +inf pour un état impossible ou invalide.

        Raises:
            SolverError: Si le problème direct échoue (le noyau rejette alors)
        """
        if self.log_prior(theta) == IMPOSSIBLE:
            return np.inf
        if shape is None:
            shape = self.shape(theta.cloud)
        if not shape.valid:
            return np.inf
        return -self.log_likelihood(theta, shape) - self.prior.log_prior_b(theta.b_value)


def forward_map(theta: Theta, design: ObservationDesign, grid: Grid2D, c1: Optional[float] = None) -> np.ndarray:
    """F(θ) pour un design donné (voir ForwardModel.forward_map)."""
    return ForwardModel(grid, design, c1=c1).forward_map(theta)


def log_likelihood(
    theta: Theta,
    obs: Observations,
    design: ObservationDesign,
    grid: Grid2D,
    c1: Optional[float] = None,
) -> float:
    """log L(d|θ) sur les deux groupes de fréquence.

    Raises:
        ContractError: Si les données ne correspondent pas au design
        InvalidStateError: Si l'α-shape de θ est invalide
    """
    obs.check_design(design)
    predicted = forward_map(theta, design, grid, c1)
    return gaussian_log_likelihood(predicted, obs.data, obs.wavenumbers, obs.sigmas)


def energy(
    theta: Theta,
    obs: Observations,
    design: ObservationDesign,
    prior: PriorSpec,
    grid: Grid2D,
    c1: Optional[float] = None,
) -> float:
    """Energy(θ) = −log L(d|θ) − log π(b), +inf si θ est impossible."""
    return Posterior(ForwardModel(grid, design, c1=c1), obs, prior).energy(theta)
