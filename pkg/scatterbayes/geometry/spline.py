"""Spline cubique périodique interpolant le polygone S_α(Q).

La courbe Γ_{Q,α} passe par les sommets du polygone dans l'ordre cyclique.
Le paramétrage est chordal (longueur d'arc cumulée du polygone de
contrôle, arête de fermeture comprise).
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
import shapely
from scipy.interpolate import BSpline, make_interp_spline

from scatterbayes.core.errors import InsufficientControlPointsError, InvalidGeometryError
from scatterbayes.geometry.alpha_shape import HullPolygon

# Échantillons de la courbe par sommet de contrôle.
DEFAULT_DENSITY = 64


@dataclass(frozen=True)
class SplineBoundary:
    """Courbe fermée échantillonnée.

    Attributes:
        control_points: Sommets du polygone, tableau (n, 2)
        knots: Paramètres chordaux des sommets, tableau (n + 1,) de 0 à L
        curve: B-spline périodique (None pour une polyligne brute)
        samples: Polyligne échantillonnée (n_s, 2), premier point = dernier
        simple: La polyligne échantillonnée est simple
    """

    control_points: np.ndarray
    knots: Optional[np.ndarray]
    curve: Optional[BSpline]
    samples: np.ndarray
    simple: bool

    @classmethod
    def from_polyline(cls, points: np.ndarray) -> "SplineBoundary":
        """Enveloppe une polyligne fermée (courbe paramétrique déjà échantillonnée)."""
        points = np.asarray(points, dtype=float).reshape(-1, 2)
        if not np.array_equal(points[0], points[-1]):
            points = np.vstack([points, points[:1]])
        ring = shapely.LinearRing(points)
        return cls(
            control_points=points[:-1],
            knots=None,
            curve=None,
            samples=points,
            simple=bool(ring.is_simple),
        )

    def evaluate(self, t: np.ndarray) -> np.ndarray:
        """Points de la courbe aux paramètres t (périodiques de période L)."""
        if self.curve is None:
            raise InvalidGeometryError("a raw polyline has no spline parameterization")
        return self.curve(np.asarray(t, dtype=float))

    @property
    def length(self) -> float:
        """Longueur de la polyligne échantillonnée."""
        return float(np.sum(np.linalg.norm(np.diff(self.samples, axis=0), axis=1)))

    def polygon(self) -> shapely.Polygon:
        return shapely.Polygon(self.samples)


def chordal_knots(points: np.ndarray) -> np.ndarray:
    """Paramètres chordaux 0 = t_0 < ... < t_n = L du polygone fermé."""
    closed = np.vstack([points, points[:1]])
    steps = np.linalg.norm(np.diff(closed, axis=0), axis=1)
    return np.concatenate([[0.0], np.cumsum(steps)])


def spline_hull(
    polygon: HullPolygon,
    n_s: Optional[int] = None,
    density: int = DEFAULT_DENSITY,
) -> SplineBoundary:
    """Interpole les sommets de S_α(Q) par une B-spline cubique périodique.

    Args:
        polygon: Polygone valide issu de alpha_shape
        n_s: Nombre d'échantillons (défaut : density × nombre de sommets)
        density: Échantillons par sommet si n_s n'est pas donné

    Returns:
        SplineBoundary ; `simple` vaut False si la polyligne échantillonnée
        se recoupe (l'état doit alors être rejeté)

    Raises:
        InvalidGeometryError: Si le polygone n'est pas valide
        InsufficientControlPointsError: Si le polygone a moins de 4 sommets

    Example:
        >>> boundary = spline_hull(alpha_shape(cloud))
        >>> np.allclose(boundary.samples[0], boundary.samples[-1])
        True
    """
    if not polygon.valid:
        raise InvalidGeometryError(f"cannot interpolate an invalid hull ({polygon.status.value})")
    vertices = polygon.vertices
    if vertices.shape[0] < 4:
        raise InsufficientControlPointsError(
            f"a closed cubic spline needs at least 4 control points, got {vertices.shape[0]}"
        )

    knots = chordal_knots(vertices)
    closed = np.vstack([vertices, vertices[:1]])
    curve = make_interp_spline(knots, closed, k=3, bc_type="periodic")

    n_samples = n_s if n_s is not None else density * vertices.shape[0]
    samples = curve(np.linspace(0.0, knots[-1], n_samples))
    samples[-1] = samples[0]

    return SplineBoundary(
        control_points=vertices,
        knots=knots,
        curve=curve,
        samples=samples,
        simple=bool(shapely.LinearRing(samples).is_simple),
    )
