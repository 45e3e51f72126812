"""État de la chaîne et configuration du noyau de transition."""

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Protocol

import numpy as np

from scatterbayes.bayes.prior import Theta
from scatterbayes.core.config import KernelSettings
from scatterbayes.core.errors import ConfigError, InvalidStateError
from scatterbayes.geometry.cloud import PointCloud
from scatterbayes.geometry.hull import ShapeGeometry
from scatterbayes.geometry.triangulation import Triangulation


class MoveKind(Enum):
    """Les quatre propositions du noyau, dans l'ordre des poids w₁..w₄."""

    POINT = "point"
    TRANSLATE = "translate"
    B = "b"
    ALPHA = "alpha"

    @classmethod
    def ordered(cls) -> tuple["MoveKind", ...]:
        return (cls.POINT, cls.TRANSLATE, cls.B, cls.ALPHA)


class AcceptanceMode(Enum):
    """Règle d'acceptation.

    EXACT_MH applique les corrections de Hastings des mouvements b et α ;
    PAPER_LITERAL n'utilise que la différence d'énergie.
    """

    EXACT_MH = "exact-mh"
    PAPER_LITERAL = "paper-literal"


class Target(Protocol):
    """Loi cible vue par le sampler (implémentée par bayes.Posterior)."""

    def shape(self, cloud: PointCloud, tri: Optional[Triangulation] = None) -> ShapeGeometry: ...

    def log_prior(self, theta: Theta) -> float: ...

    def energy(self, theta: Theta, shape: Optional[ShapeGeometry] = None) -> float: ...


@dataclass(frozen=True)
class KernelConfig:
    """Configuration du noyau et de la chaîne.

    Attributes:
        weights: Poids (w₁, w₂, w₃, w₄) des mouvements point, translate, b, α
        seed: Graine du générateur
        t_max: Nombre d'itérations
        burn_in: Itérations de chauffe (utilisées par summarize)
        mode: Règle d'acceptation
        snapshot_every: Période des instantanés du nuage
        init_attempts: Nombre maximum de tirages de l'état initial

    Raises:
        ConfigError: Si un poids est négatif ou si leur somme s'écarte de 1
    """

    weights: tuple[float, float, float, float] = (0.4, 0.2, 0.2, 0.2)
    seed: int = 0
    t_max: int = 200_000
    burn_in: int = 20_000
    mode: AcceptanceMode = AcceptanceMode.EXACT_MH
    snapshot_every: int = 100
    init_attempts: int = 10_000

    def __post_init__(self):
        weights = tuple(float(w) for w in self.weights)
        if len(weights) != 4:
            raise ConfigError(f"expected 4 move weights, got {len(weights)}", field="kernel.weights")
        if any(w < 0.0 for w in weights):
            raise ConfigError("weights must be non-negative", field="kernel.weights")
        if abs(sum(weights) - 1.0) > 1e-12:
            raise ConfigError(f"weights must sum to 1, got {sum(weights)!r}", field="kernel.weights")
        if self.t_max < 1:
            raise ConfigError("t_max must be >= 1", field="kernel.t_max")
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "mode", AcceptanceMode(self.mode))

    @classmethod
    def from_settings(cls, settings: KernelSettings) -> "KernelConfig":
        return cls(
            weights=settings.weights,
            seed=settings.seed,
            t_max=settings.t_max,
            burn_in=settings.burn_in,
            mode=AcceptanceMode(settings.mode),
            snapshot_every=settings.snapshot_every,
            init_attempts=settings.init_attempts,
        )

    @property
    def exact(self) -> bool:
        return self.mode is AcceptanceMode.EXACT_MH


@dataclass(frozen=True)
class ChainState:
    """État θ⁽ᵗ⁾ avec ses caches (géométrie, énergie).

    L'état courant d'une chaîne est toujours valide : un candidat dont
    l'α-shape est invalide n'est jamais installé. Les caches sont
    recalculés pour chaque candidat, jamais mis à jour en place.

    Attributes:
        theta: Paramètre (Q, α, b)
        shape: Triangulation, polygone, spline, (r_min, r_max) et aire
        energy: Energy(θ), +inf si l'état est invalide
    """

    theta: Theta
    shape: ShapeGeometry
    energy: float

    @classmethod
    def evaluate(cls, theta: Theta, target: Target, tri: Optional[Triangulation] = None) -> "ChainState":
        """Construit un état en calculant géométrie et énergie."""
        shape = target.shape(theta.cloud, tri)
        energy = target.energy(theta, shape) if shape.valid else np.inf
        return cls(theta, shape, float(energy))

    @property
    def valid(self) -> bool:
        return self.shape.valid and bool(np.isfinite(self.energy))

    @property
    def points(self) -> np.ndarray:
        return self.theta.cloud.points

    @property
    def alpha(self) -> float:
        return self.theta.alpha

    @property
    def b_value(self) -> float:
        return self.theta.b_value

    @property
    def area(self) -> float:
        return self.shape.area

    def require_valid(self) -> "ChainState":
        """Raises InvalidStateError si l'état ne peut pas démarrer une chaîne."""
        if not self.valid:
            raise InvalidStateError(f"chain state is invalid ({self.shape.reason or 'infinite energy'})")
        return self
