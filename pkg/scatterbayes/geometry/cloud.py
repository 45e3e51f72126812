"""Nuage de points de contrôle Q et paramètre de forme α."""

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import pdist

from scatterbayes.core.errors import DegenerateGeometryError, DomainError

# Distance minimale entre deux points distincts du nuage.
MIN_SEPARATION = 1e-12


@dataclass(frozen=True)
class PointCloud:
    """Nuage Q = {p_1, ..., p_m} et rayon α de l'α-shape.

    Le nuage est immuable : les propositions du noyau MCMC construisent de
    nouvelles instances. L'appartenance au domaine G n'est pas vérifiée ici
    (un point hors de G est un état de prior nul, pas une erreur).

    Attributes:
        points: Tableau (m, 2) des coordonnées
        alpha: Rayon α > 0

    Raises:
        DegenerateGeometryError: Si m < 3 ou si deux points coïncident
        DomainError: Si α <= 0 ou si une coordonnée n'est pas finie

    Example:
        >>> cloud = PointCloud(np.array([[0, 0], [1, 0], [0, 1], [1, 1]]), alpha=1.0)
        >>> cloud.size
        4
    """

    points: np.ndarray
    alpha: float

    def __post_init__(self):
        points = np.array(self.points, dtype=float).reshape(-1, 2)
        if not np.all(np.isfinite(points)):
            raise DomainError("cloud coordinates must be finite")
        if not (np.isfinite(self.alpha) and self.alpha > 0.0):
            raise DomainError(f"alpha must be > 0, got {self.alpha}")
        if points.shape[0] < 3:
            raise DegenerateGeometryError(f"a cloud needs at least 3 points, got {points.shape[0]}")
        if np.min(pdist(points)) <= MIN_SEPARATION:
            raise DegenerateGeometryError("two cloud points coincide")
        points.setflags(write=False)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "alpha", float(self.alpha))

    @property
    def size(self) -> int:
        return self.points.shape[0]

    def with_points(self, points: np.ndarray) -> "PointCloud":
        return PointCloud(points, self.alpha)

    def with_alpha(self, alpha: float) -> "PointCloud":
        return PointCloud(self.points, alpha)

    def scaled(self, s: float) -> "PointCloud":
        """Similitude x -> s·x appliquée à Q et à α."""
        return PointCloud(s * self.points, s * self.alpha)

    def translated(self, t: np.ndarray) -> "PointCloud":
        return PointCloud(self.points + np.asarray(t, dtype=float), self.alpha)


def mean_pairwise_distance(points: np.ndarray, exclude: int | None = None) -> float:
    """Moyenne des distances entre paires de points.

    Args:
        points: Tableau (m, 2)
        exclude: Indice d'un point à retirer avant le calcul (optionnel)

    Returns:
        Moyenne sur les paires restantes

    Example:
        >>> mean_pairwise_distance(np.array([[0, 0], [1, 0], [0, 1]]), exclude=0)
        1.4142135623730951
    """
    if exclude is not None:
        points = np.delete(points, exclude, axis=0)
    if points.shape[0] < 2:
        raise DegenerateGeometryError("mean pairwise distance needs at least 2 points")
    return float(np.mean(pdist(points)))
