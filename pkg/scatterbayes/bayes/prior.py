"""Prior π(θ) = π(Q) π(α) π(b) et paramètre θ = (Q, α, b)."""

from dataclasses import dataclass

import numpy as np
from scipy import stats

from scatterbayes.core.config import ExperimentConfig
from scatterbayes.core.errors import DomainError
from scatterbayes.geometry.cloud import PointCloud

IMPOSSIBLE = -np.inf


@dataclass(frozen=True)
class Theta:
    """Paramètre inconnu θ = (Q, α, b).

    b n'est pas contraint à la construction : une valeur b <= 0 est un état
    de prior nul que log_prior signale par IMPOSSIBLE.

    Attributes:
        cloud: Nuage Q et rayon α
        b_value: Contraste du milieu dans D
    """

    cloud: PointCloud
    b_value: float

    @property
    def alpha(self) -> float:
        return self.cloud.alpha

    def with_b(self, b_value: float) -> "Theta":
        return Theta(self.cloud, float(b_value))

    def with_cloud(self, cloud: PointCloud) -> "Theta":
        return Theta(cloud, self.b_value)


@dataclass(frozen=True)
class PriorSpec:
    """Hyperparamètres du prior.

    Attributes:
        gamma_shape: Forme k̃ de la loi Gamma de b
        gamma_rate: Taux λ̃ de la loi Gamma de b
        bounds: Domaine G (xmin, ymin, xmax, ymax), support uniforme de Q
        alpha_max: Borne supérieure du support uniforme de α
    """

    gamma_shape: float
    gamma_rate: float
    bounds: tuple[float, float, float, float]
    alpha_max: float

    def __post_init__(self):
        for name in ("gamma_shape", "gamma_rate", "alpha_max"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0.0):
                raise DomainError(f"{name} must be finite and > 0, got {value}")

    @classmethod
    def from_config(cls, config: ExperimentConfig) -> "PriorSpec":
        x0, y0 = config.grid.origin
        span = config.grid.N * config.grid.h
        return cls(
            gamma_shape=config.prior.gamma_shape,
            gamma_rate=config.prior.gamma_rate,
            bounds=(x0, y0, x0 + span, y0 + span),
            alpha_max=config.alpha_max,
        )

    @property
    def b_distribution(self):
        """Loi Gamma(k̃, λ̃) figée (scipy.stats, échelle 1/λ̃)."""
        return stats.gamma(a=self.gamma_shape, scale=1.0 / self.gamma_rate)

    def sample_b(self, rng: np.random.Generator) -> float:
        return float(rng.gamma(self.gamma_shape, 1.0 / self.gamma_rate))

    def log_prior_b(self, b_value: float) -> float:
        """log π(b), IMPOSSIBLE si b <= 0."""
        if not b_value > 0.0:
            return IMPOSSIBLE
        return float(stats.gamma.logpdf(b_value, a=self.gamma_shape, scale=1.0 / self.gamma_rate))

    def contains_cloud(self, points: np.ndarray) -> bool:
        xmin, ymin, xmax, ymax = self.bounds
        return bool(
            np.all((points[:, 0] >= xmin) & (points[:, 0] <= xmax) & (points[:, 1] >= ymin) & (points[:, 1] <= ymax))
        )


def log_prior(theta: Theta, prior: PriorSpec) -> float:
    """log π(θ) à une constante près.

    Les priors uniformes de Q et α ne contribuent que par leur support.

    Returns:
        log π(b) si θ est dans le support, IMPOSSIBLE sinon

    Example:
        >>> log_prior(theta.with_b(-1.0), prior)
        -inf
    """
    if not prior.contains_cloud(theta.cloud.points):
        return IMPOSSIBLE
    if not 0.0 < theta.alpha <= prior.alpha_max:
        return IMPOSSIBLE
    return prior.log_prior_b(theta.b_value)
