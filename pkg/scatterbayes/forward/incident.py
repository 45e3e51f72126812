"""Ondes planes incidentes uⁱ(x) = exp(ik x·d)."""

import numpy as np

from scatterbayes.core.errors import DomainError
from scatterbayes.forward.fields import ComplexField, Grid2D

UNIT_TOLERANCE = 1e-12


def _directions(direction) -> np.ndarray:
    d = np.asarray(direction, dtype=float)
    d2 = np.atleast_2d(d)
    if d2.shape[-1] != 2:
        raise DomainError(f"directions must be 2D vectors, got shape {d.shape}")
    if np.any(np.abs(np.linalg.norm(d2, axis=1) - 1.0) > UNIT_TOLERANCE):
        raise DomainError("incident direction must be a unit vector")
    return d2


def plane_wave_at(points: np.ndarray, direction, k: float) -> np.ndarray:
    """exp(ik x·d) aux points (n, 2) ; forme (n,) ou (n_dir, n) pour un lot.

    Example:
        >>> plane_wave_at(np.array([[np.pi / 2, 0.0]]), (1.0, 0.0), 1.0)
        array([6.123234e-17+1.j])
    """
    d = _directions(direction)
    points = np.asarray(points, dtype=float).reshape(-1, 2)
    values = np.exp(1j * k * (d @ points.T))
    return values[0] if np.ndim(direction) == 1 else values


def incident_plane_wave(direction, k: float, grid: Grid2D) -> ComplexField:
    """Onde plane sur tous les noeuds de la grille.

    Args:
        direction: Vecteur unitaire (2,) ou lot de directions (n_dir, 2)
        k: Nombre d'onde
        grid: Grille de calcul

    Returns:
        ComplexField de forme grid.shape, ou (n_dir,) + grid.shape

    Raises:
        DomainError: Si une direction n'est pas unitaire à 1e-12 près
    """
    d = _directions(direction)
    X, Y = grid.coordinates()
    values = np.exp(1j * k * (d[:, 0, None, None] * X + d[:, 1, None, None] * Y))
    return ComplexField(grid, values[0] if np.ndim(direction) == 1 else values)
