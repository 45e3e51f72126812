"""Courbes paramétriques des obstacles de test.

Toutes les fonctions renvoient une polyligne fermée (n + 1, 2) dont le
dernier point répète le premier.
"""

from typing import Callable

import numpy as np

from scatterbayes.core.errors import DomainError


def _closed(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    points = np.column_stack([x, y])
    points[-1] = points[0]
    return points


def kite(n: int = 4096, scale: float = 1.0) -> np.ndarray:
    """Cerf-volant x(t) = (1.5 sin t, cos t + 0.65 cos 2t − 0.65).

    L'aire de la courbe non mise à l'échelle vaut 3π/2.

    Example:
        >>> kite(10_000, scale=0.1).shape
        (10001, 2)
    """
    t = np.linspace(0.0, 2.0 * np.pi, n + 1)
    x = 1.5 * np.sin(t)
    y = np.cos(t) + 0.65 * np.cos(2.0 * t) - 0.65
    return scale * _closed(x, y)


def disc(n: int = 4096, radius: float = 1.0, center: tuple[float, float] = (0.0, 0.0)) -> np.ndarray:
    """Cercle de rayon `radius`, parcouru dans le sens anti-horaire."""
    if radius <= 0.0:
        raise DomainError("disc radius must be > 0")
    t = np.linspace(0.0, 2.0 * np.pi, n + 1)
    return _closed(center[0] + radius * np.cos(t), center[1] + radius * np.sin(t))


def random_star(
    rng: np.random.Generator,
    n: int = 1024,
    mean_radius: float = 0.15,
    harmonics: int = 4,
    roughness: float = 0.3,
    center: tuple[float, float] = (0.0, 0.0),
) -> np.ndarray:
    """Courbe étoilée r(θ) = R·(1 + Σ a_k cos(kθ + φ_k)) aléatoire.

    Les amplitudes vérifient Σ|a_k| = roughness < 1, donc r > 0 et la
    courbe est simple.
    """
    if not 0.0 <= roughness < 1.0:
        raise DomainError("roughness must lie in [0, 1)")
    weights = rng.uniform(0.0, 1.0, harmonics)
    amplitudes = roughness * weights / weights.sum()
    phases = rng.uniform(0.0, 2.0 * np.pi, harmonics)
    theta = np.linspace(0.0, 2.0 * np.pi, n + 1)
    k = np.arange(2, harmonics + 2)
    radius = mean_radius * (1.0 + np.cos(np.outer(theta, k) + phases) @ amplitudes)
    return _closed(center[0] + radius * np.cos(theta), center[1] + radius * np.sin(theta))


CURVES: dict[str, Callable[..., np.ndarray]] = {
    "kite": kite,
    "disc": lambda n=4096, scale=1.0: disc(n, radius=scale),
}


def named_curve(name: str, n: int, scale: float) -> np.ndarray:
    """Polyligne d'une courbe du catalogue (`kite`, `disc`)."""
    if name not in CURVES:
        raise DomainError(f"unknown curve '{name}', use one of {sorted(CURVES)}")
    return CURVES[name](n=n, scale=scale)
