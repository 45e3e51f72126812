"""Triangulation de Delaunay du nuage et rayons circonscrits.

La triangulation est déléguée à Qhull (scipy.spatial.Delaunay), qui est
déterministe pour une entrée donnée : deux chaînes de même graine
reconstruisent exactement les mêmes triangles.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import Delaunay, QhullError

from scatterbayes.core.errors import DegenerateGeometryError


@dataclass(frozen=True)
class Triangulation:
    """Triangulation de Delaunay immuable.

    Attributes:
        vertices: Points du nuage, tableau (m, 2)
        triangles: Indices des sommets, tableau (T, 3)
        circumradii: Rayon circonscrit de chaque triangle, tableau (T,)
    """

    vertices: np.ndarray
    triangles: np.ndarray
    circumradii: np.ndarray
    _edges: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        tri = self.triangles
        pairs = np.concatenate([tri[:, [0, 1]], tri[:, [1, 2]], tri[:, [2, 0]]])
        pairs.sort(axis=1)
        object.__setattr__(self, "_edges", np.unique(pairs, axis=0))

    @property
    def edges(self) -> np.ndarray:
        """Arêtes uniques (i < j), triées lexicographiquement, tableau (E, 2)."""
        return self._edges

    @property
    def size(self) -> int:
        return self.triangles.shape[0]


def circumradii_of(vertices: np.ndarray, triangles: np.ndarray) -> np.ndarray:
    """Rayon circonscrit R = abc / (4·aire) de chaque triangle."""
    a = vertices[triangles[:, 0]]
    b = vertices[triangles[:, 1]]
    c = vertices[triangles[:, 2]]
    ab = np.linalg.norm(b - a, axis=1)
    bc = np.linalg.norm(c - b, axis=1)
    ca = np.linalg.norm(a - c, axis=1)
    u, v = b - a, c - a
    twice_area = np.abs(u[:, 0] * v[:, 1] - u[:, 1] * v[:, 0])
    return ab * bc * ca / (2.0 * twice_area)


def delaunay(points: np.ndarray) -> Triangulation:
    """Triangulation de Delaunay d'un ensemble de points du plan.

    Args:
        points: Tableau (m, 2), m >= 3

    Returns:
        Triangulation avec les rayons circonscrits de chaque triangle

    Raises:
        DegenerateGeometryError: Si m < 3 ou si les points sont colinéaires

    Example:
        >>> tri = delaunay(np.array([[0, 0], [1, 0], [1, 1], [0, 1]]))
        >>> tri.size
        2
    """
    points = np.asarray(points, dtype=float).reshape(-1, 2)
    if points.shape[0] < 3:
        raise DegenerateGeometryError(f"delaunay needs at least 3 points, got {points.shape[0]}")
    try:
        qhull = Delaunay(points)
    except QhullError as exc:
        raise DegenerateGeometryError(f"degenerate point set: {exc}") from exc

    triangles = np.asarray(qhull.simplices, dtype=int)
    radii = circumradii_of(points, triangles)
    if triangles.shape[0] == 0 or not np.all(np.isfinite(radii)):
        raise DegenerateGeometryError("triangulation contains flat triangles")
    return Triangulation(vertices=points, triangles=triangles, circumradii=radii)


def circumradius_range(tri: Triangulation) -> tuple[float, float]:
    """(r_min, r_max) sur les triangles de la triangulation.

    Example:
        >>> circumradius_range(delaunay(np.array([[0, 0], [1, 0], [1, 1], [0, 1]])))
        (0.7071067811865476, 0.7071067811865476)
    """
    return float(np.min(tri.circumradii)), float(np.max(tri.circumradii))
