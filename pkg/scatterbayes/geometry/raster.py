"""Rastérisation de Γ_{Q,α} sur la grille et aire du domaine D."""

from typing import Union

import numpy as np
import shapely

from scatterbayes.core.errors import InvalidGeometryError
from scatterbayes.forward.fields import Grid2D, ScattererField
from scatterbayes.geometry.spline import SplineBoundary

Boundary = Union[SplineBoundary, np.ndarray]


def _as_boundary(boundary: Boundary) -> SplineBoundary:
    if isinstance(boundary, SplineBoundary):
        return boundary
    return SplineBoundary.from_polyline(boundary)


def rasterize(boundary: Boundary, grid: Grid2D, b_value: float) -> ScattererField:
    """Contraste b(x) = b_value sur les noeuds à l'intérieur de la courbe.

    Un noeud situé exactement sur la polyligne compte comme intérieur.
    Seuls les noeuds de la boîte englobante de la courbe sont testés.

    Args:
        boundary: SplineBoundary ou polyligne fermée (n, 2)
        grid: Grille cible
        b_value: Valeur du contraste dans D

    Returns:
        ScattererField (nul si b_value = 0)

    Example:
        >>> field = rasterize(boundary, Grid2D(N=40, h=0.02, origin=(-0.4, -0.4)), 25.0)
        >>> field.b_value
        25.0
    """
    values = np.zeros(grid.shape)
    if b_value == 0.0:
        return ScattererField(grid, values)

    boundary = _as_boundary(boundary)
    polygon = boundary.polygon()
    shapely.prepare(polygon)

    xmin, ymin, xmax, ymax = polygon.bounds
    x, y = grid.axes()
    cols = np.flatnonzero((x >= xmin) & (x <= xmax))
    rows = np.flatnonzero((y >= ymin) & (y <= ymax))
    if cols.size and rows.size:
        X, Y = np.meshgrid(x[cols], y[rows], indexing="ij")
        inside = shapely.intersects_xy(polygon, X.ravel(), Y.ravel()).reshape(X.shape)
        values[np.ix_(cols, rows)] = np.where(inside, b_value, 0.0)
    return ScattererField(grid, values)


def polygon_area(boundary: Boundary) -> float:
    """Aire enclose par la polyligne (formule du lacet, valeur absolue).

    Raises:
        InvalidGeometryError: Si la polyligne se recoupe

    Example:
        >>> polygon_area(np.array([[0, 0], [1, 0], [1, 1], [0, 1]]))
        1.0
    """
    boundary = _as_boundary(boundary)
    if not boundary.simple:
        raise InvalidGeometryError("area of a self-intersecting polyline is undefined")
    x, y = boundary.samples[:-1, 0], boundary.samples[:-1, 1]
    return float(abs(0.5 * np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y)))
