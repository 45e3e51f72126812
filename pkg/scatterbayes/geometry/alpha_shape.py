"""Extraction de l'α-shape et classification de validité.

Une arête (p, q) appartient à l'α-shape si et seulement si un disque
ouvert de rayon α passant par p et q ne contient aucun autre point du
nuage. Les arêtes α-exposées sont toujours des arêtes de Delaunay : on ne
teste donc que celles-ci, en vectorisant le test du disque vide.

Une α-shape est exploitable si ses arêtes forment un unique polygone
simple fermé. Les autres cas sont des *classifications* (HullStatus), pas
des exceptions : le noyau MCMC rejette simplement l'état proposé.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np
import shapely

from scatterbayes.geometry.cloud import PointCloud
from scatterbayes.geometry.triangulation import Triangulation, delaunay


# Un point à distance α·(1 - EXPOSURE_RTOL) du centre ou plus est hors du disque ouvert.
EXPOSURE_RTOL = 1e-12


class HullStatus(Enum):
    """Classification d'une α-shape."""

    VALID = "valid"
    EMPTY = "empty"
    DISCONNECTED = "disconnected"
    BRANCHED = "branched"
    SELF_INTERSECTING = "self_intersecting"


@dataclass(frozen=True)
class HullPolygon:
    """Polygone S_α(Q) extrait de l'α-shape.

    Attributes:
        status: Classification de l'α-shape
        vertex_indices: Indices (dans le nuage) des sommets, ordre cyclique
            anti-horaire ; vide si status n'est pas VALID
        vertices: Coordonnées des sommets, tableau (k, 2)
        edges: Arêtes α-exposées (i < j), quelle que soit la classification
    """

    status: HullStatus
    vertex_indices: tuple[int, ...] = ()
    vertices: np.ndarray = field(default_factory=lambda: np.empty((0, 2)))
    edges: frozenset[tuple[int, int]] = frozenset()

    @property
    def valid(self) -> bool:
        return self.status is HullStatus.VALID

    @property
    def size(self) -> int:
        return len(self.vertex_indices)


def alpha_exposed_edges(points: np.ndarray, alpha: float, tri: Triangulation) -> np.ndarray:
    """Arêtes de Delaunay exposées au rayon α.

    Args:
        points: Nuage (m, 2)
        alpha: Rayon des disques
        tri: Triangulation de Delaunay de `points`

    Returns:
        Tableau (k, 2) d'indices (i < j), trié lexicographiquement
    """
    edges = tri.edges
    p = points[edges[:, 0]]
    q = points[edges[:, 1]]
    chord = q - p
    length = np.linalg.norm(chord, axis=1)
    reachable = length <= 2.0 * alpha
    if not np.any(reachable):
        return np.empty((0, 2), dtype=int)

    edges, p, chord, length = edges[reachable], p[reachable], chord[reachable], length[reachable]
    mid = p + 0.5 * chord
    normal = np.column_stack([-chord[:, 1], chord[:, 0]]) / length[:, None]
    offset = np.sqrt(np.maximum(alpha**2 - 0.25 * length**2, 0.0))

    threshold = alpha**2 * (1.0 - EXPOSURE_RTOL)
    rows = np.arange(edges.shape[0])
    empty_side = []
    for sign in (1.0, -1.0):
        centers = mid + sign * offset[:, None] * normal
        dist2 = np.sum((points[None, :, :] - centers[:, None, :]) ** 2, axis=2)
        dist2[rows, edges[:, 0]] = np.inf
        dist2[rows, edges[:, 1]] = np.inf
        empty_side.append(np.all(dist2 >= threshold, axis=1))

    return edges[empty_side[0] | empty_side[1]]


def _walk_cycle(edges: np.ndarray) -> tuple[HullStatus, list[int]]:
    """Parcourt le graphe des arêtes ; renvoie le cycle s'il est unique."""
    adjacency: dict[int, list[int]] = {}
    for i, j in edges.tolist():
        adjacency.setdefault(i, []).append(j)
        adjacency.setdefault(j, []).append(i)

    if any(len(neigh) != 2 for neigh in adjacency.values()):
        return HullStatus.BRANCHED, []

    start = min(adjacency)
    cycle = [start]
    previous, current = start, min(adjacency[start])
    while current != start:
        cycle.append(current)
        a, b = adjacency[current]
        previous, current = current, (b if a == previous else a)

    if len(cycle) != len(adjacency):
        return HullStatus.DISCONNECTED, []
    return HullStatus.VALID, cycle


def alpha_shape(cloud: PointCloud, tri: Optional[Triangulation] = None) -> HullPolygon:
    """Calcule S_α(Q) et le classe.

    Le polygone est valide s'il est non vide, connexe et simple. Un
    α-complexe sans aucun triangle (α <= r_min) est classé EMPTY : la
    forme se réduit alors aux points et à quelques arêtes pendantes.

    Args:
        cloud: Nuage Q et rayon α
        tri: Triangulation de Delaunay de cloud.points (recalculée si absente)

    Returns:
        HullPolygon, orienté dans le sens anti-horaire s'il est valide

    Raises:
        DegenerateGeometryError: Si le nuage n'admet pas de triangulation

    Example:
        >>> square = PointCloud(np.array([[0, 0], [1, 0], [1, 1], [0, 1]]), alpha=1.0)
        >>> alpha_shape(square).vertex_indices
        (0, 1, 2, 3)
    """
    if tri is None:
        tri = delaunay(cloud.points)

    edges = alpha_exposed_edges(cloud.points, cloud.alpha, tri)
    edge_set = frozenset((int(i), int(j)) for i, j in edges)
    if edges.shape[0] == 0 or not np.any(tri.circumradii < cloud.alpha):
        return HullPolygon(HullStatus.EMPTY, edges=edge_set)

    status, cycle = _walk_cycle(edges)
    if status is not HullStatus.VALID:
        return HullPolygon(status, edges=edge_set)

    vertices = cloud.points[cycle]
    if not shapely.LinearRing(vertices).is_simple:
        return HullPolygon(HullStatus.SELF_INTERSECTING, edges=edge_set)

    x, y = vertices[:, 0], vertices[:, 1]
    signed_area = 0.5 * np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y)
    if signed_area < 0.0:
        cycle = [cycle[0]] + cycle[:0:-1]
        vertices = cloud.points[cycle]

    return HullPolygon(
        HullStatus.VALID,
        vertex_indices=tuple(int(i) for i in cycle),
        vertices=vertices,
        edges=edge_set,
    )
