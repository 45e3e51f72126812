"""Enchaînement nuage → Delaunay → α-shape → spline → aire.

`build_shape` ne lève pas d'exception pour une forme inutilisable : il
renvoie une ShapeGeometry invalide avec la raison du rejet, que le noyau
MCMC consigne avant de rejeter l'état.
"""

from dataclasses import dataclass
from typing import Optional

from scatterbayes.core.errors import DegenerateGeometryError, InsufficientControlPointsError
from scatterbayes.geometry.alpha_shape import HullPolygon, HullStatus, alpha_shape
from scatterbayes.geometry.cloud import PointCloud
from scatterbayes.geometry.raster import polygon_area
from scatterbayes.geometry.spline import DEFAULT_DENSITY, SplineBoundary, spline_hull
from scatterbayes.geometry.triangulation import Triangulation, circumradius_range, delaunay


@dataclass(frozen=True)
class ShapeGeometry:
    """Caches géométriques d'un nuage.

    Attributes:
        triangulation: Triangulation de Delaunay (None si dégénérée)
        polygon: Polygone S_α(Q) classifié (None si pas de triangulation)
        boundary: Spline Γ_{Q,α} (None si le polygone est invalide)
        r_min: Plus petit rayon circonscrit
        r_max: Plus grand rayon circonscrit
        area: Aire de Γ_{Q,α} (nan si invalide)
        reason: Motif d'invalidité, None si la forme est valide
    """

    triangulation: Optional[Triangulation]
    polygon: Optional[HullPolygon]
    boundary: Optional[SplineBoundary]
    r_min: float
    r_max: float
    area: float
    reason: Optional[str] = None

    @property
    def valid(self) -> bool:
        return self.reason is None


def build_shape(
    cloud: PointCloud,
    density: int = DEFAULT_DENSITY,
    tri: Optional[Triangulation] = None,
) -> ShapeGeometry:
    """Construit tous les objets géométriques d'un nuage.

    Args:
        cloud: Nuage Q et rayon α
        density: Échantillons de spline par sommet
        tri: Triangulation à réutiliser (Q inchangé, seul α a bougé)

    Returns:
        ShapeGeometry, valide si le polygone et la spline sont simples

    Example:
        >>> shape = build_shape(cloud)
        >>> shape.valid, shape.area > 0
        (True, True)
    """
    nan = float("nan")
    if tri is None:
        try:
            tri = delaunay(cloud.points)
        except DegenerateGeometryError as exc:
            return ShapeGeometry(None, None, None, nan, nan, nan, reason=f"delaunay: {exc}")
    r_min, r_max = circumradius_range(tri)

    polygon = alpha_shape(cloud, tri)
    if polygon.status is not HullStatus.VALID:
        return ShapeGeometry(tri, polygon, None, r_min, r_max, nan, reason=polygon.status.value)

    try:
        boundary = spline_hull(polygon, density=density)
    except InsufficientControlPointsError:
        return ShapeGeometry(tri, polygon, None, r_min, r_max, nan, reason="too_few_vertices")
    if not boundary.simple:
        return ShapeGeometry(tri, polygon, boundary, r_min, r_max, nan, reason="spline_self_intersecting")

    return ShapeGeometry(tri, polygon, boundary, r_min, r_max, polygon_area(boundary))
