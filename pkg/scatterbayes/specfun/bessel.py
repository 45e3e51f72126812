"""Fonctions de Bessel d'ordre zéro et fonction de Hankel H₀⁽¹⁾.

Les valeurs viennent des approximations rationnelles de Cephes exposées par
scipy.special (série rationnelle sur [0, 5], forme asymptotique
amplitude/phase au-delà). Ce module ajoute la validation du domaine et
accepte scalaires comme tableaux.
"""

from typing import Union

import numpy as np
from scipy import special

from scatterbayes.core.errors import DomainError

ArrayLike = Union[float, np.ndarray]

# Point de bascule des approximations de Cephes pour j0/y0.
REGIME_SWITCH = 5.0


def _as_array(x: ArrayLike, name: str) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name}: argument must be finite")
    return arr


def _unwrap(values: np.ndarray, like: ArrayLike):
    return values.item() if np.ndim(like) == 0 else values


def bessel_j0(x: ArrayLike) -> ArrayLike:
    """J₀(x) pour x ≥ 0.

    Raises:
        DomainError: Si x est négatif ou non fini

    Example:
        >>> bessel_j0(0.0)
        1.0
    """
    arr = _as_array(x, "bessel_j0")
    if np.any(arr < 0.0):
        raise DomainError("bessel_j0: argument must be >= 0")
    return _unwrap(special.j0(arr), x)


def bessel_y0(x: ArrayLike) -> ArrayLike:
    """Y₀(x) pour x > 0 (singularité logarithmique en 0).

    Raises:
        DomainError: Si x <= 0 ou non fini
    """
    arr = _as_array(x, "bessel_y0")
    if np.any(arr <= 0.0):
        raise DomainError("bessel_y0: argument must be > 0")
    return _unwrap(special.y0(arr), x)


def bessel_j1(x: ArrayLike) -> ArrayLike:
    """J₁(x) = −J₀′(x) pour x ≥ 0."""
    arr = _as_array(x, "bessel_j1")
    if np.any(arr < 0.0):
        raise DomainError("bessel_j1: argument must be >= 0")
    return _unwrap(special.j1(arr), x)


def bessel_y1(x: ArrayLike) -> ArrayLike:
    """Y₁(x) = −Y₀′(x) pour x > 0."""
    arr = _as_array(x, "bessel_y1")
    if np.any(arr <= 0.0):
        raise DomainError("bessel_y1: argument must be > 0")
    return _unwrap(special.y1(arr), x)


def hankel1_0(x: ArrayLike) -> Union[complex, np.ndarray]:
    """H₀⁽¹⁾(x) = J₀(x) + i·Y₀(x) pour x > 0.

    Args:
        x: Argument réel strictement positif (scalaire ou tableau)

    Returns:
        Valeur complexe de même forme que x

    Raises:
        DomainError: Si x <= 0 ou non fini

    Example:
        >>> hankel1_0(1.0)
        (0.7651976865579666+0.08825696421567697j)
    """
    arr = _as_array(x, "hankel1_0")
    if np.any(arr <= 0.0):
        raise DomainError("hankel1_0: argument must be > 0")
    values = special.j0(arr) + 1j * special.y0(arr)
    return _unwrap(values, x)
