"""Oracles indépendants du code testé.

- table de Bessel à 30 chiffres (mpmath), au format `x  j0(x)  y0(x)` ;
  la table figée est tests/fixtures/bessel_j0_y0.txt, régénérée par
  `python -m tests.oracles`
- Delaunay et α-exposition par énumération exhaustive
- solution en série de Fourier-Bessel pour un disque pénétrable
"""

from itertools import combinations
from pathlib import Path

import mpmath
import numpy as np
from scipy import special

BESSEL_DIGITS = 30
BESSEL_FIXTURE = Path(__file__).parent / "fixtures" / "bessel_j0_y0.txt"


def bessel_grid(n: int = 200, low: float = 1e-3, high: float = 500.0) -> list[str]:
    """Abscisses log-espacées, arrondies à 7 chiffres (valeurs décimales exactes de la table)."""
    return [f"{x:.6e}" for x in np.logspace(np.log10(low), np.log10(high), n)]


def write_bessel_table(path: Path, xs: list[str]) -> None:
    """Écrit la table `x  j0(x)  y0(x)` à 30 chiffres significatifs."""
    with mpmath.workdps(BESSEL_DIGITS + 10):
        lines = ["# x  j0(x)  y0(x)"]
        for x in xs:
            mx = mpmath.mpf(x)
            j0 = mpmath.besselj(0, mx)
            y0 = mpmath.bessely(0, mx)
            lines.append(f"{x}  {mpmath.nstr(j0, BESSEL_DIGITS)}  {mpmath.nstr(y0, BESSEL_DIGITS)}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_bessel_table(path: Path) -> np.ndarray:
    """Relit la table ; tableau (n, 3) de flottants."""
    rows = []
    for line in path.read_text(encoding="utf-8").splitlines():
        if line and not line.startswith("#"):
            rows.append([float(v) for v in line.split()])
    return np.array(rows)


def _circumcircle(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> tuple[np.ndarray, float]:
    d = 2.0 * (a[0] * (b[1] - c[1]) + b[0] * (c[1] - a[1]) + c[0] * (a[1] - b[1]))
    ux = ((a @ a) * (b[1] - c[1]) + (b @ b) * (c[1] - a[1]) + (c @ c) * (a[1] - b[1])) / d
    uy = ((a @ a) * (c[0] - b[0]) + (b @ b) * (a[0] - c[0]) + (c @ c) * (b[0] - a[0])) / d
    center = np.array([ux, uy])
    return center, float(np.linalg.norm(a - center))


def brute_delaunay(points: np.ndarray) -> set[tuple[int, int, int]]:
    """Triangles dont le cercle circonscrit ne contient aucun autre point."""
    out = set()
    m = len(points)
    for i, j, k in combinations(range(m), 3):
        a, b, c = points[i], points[j], points[k]
        cross = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        if abs(cross) < 1e-14:
            continue
        center, radius = _circumcircle(a, b, c)
        others = np.delete(points, [i, j, k], axis=0)
        if np.all(np.linalg.norm(others - center, axis=1) > radius):
            out.add((i, j, k))
    return out


def brute_alpha_edges(points: np.ndarray, alpha: float) -> set[tuple[int, int]]:
    """Paires (i < j) admettant un disque ouvert vide de rayon α passant par p_i et p_j."""
    out = set()
    threshold = alpha**2 * (1.0 - 1e-12)
    for i, j in combinations(range(len(points)), 2):
        p, q = points[i], points[j]
        chord = q - p
        length = float(np.linalg.norm(chord))
        if length > 2.0 * alpha:
            continue
        mid = 0.5 * (p + q)
        normal = np.array([-chord[1], chord[0]]) / length
        offset = np.sqrt(max(alpha**2 - 0.25 * length**2, 0.0))
        others = np.delete(points, [i, j], axis=0)
        for sign in (1.0, -1.0):
            center = mid + sign * offset * normal
            if np.all(np.sum((others - center) ** 2, axis=1) >= threshold):
                out.add((i, j))
                break
    return out


def disc_total_field(
    points: np.ndarray,
    k: float,
    radius: float,
    b_value: float,
    direction_angle: float = 0.0,
    n_max: int = 40,
) -> np.ndarray:
    """Champ total hors d'un disque centré en 0 de contraste b (série de Fourier-Bessel).

    uⁱ = Σ iⁿ Jₙ(kr) e^{in(θ−θ_d)}, uˢ = Σ aₙ iⁿ Hₙ⁽¹⁾(kr) e^{in(θ−θ_d)},
    le nombre d'onde intérieur étant k√(1 + b).
    """
    points = np.asarray(points, dtype=float).reshape(-1, 2)
    r = np.hypot(points[:, 0], points[:, 1])
    theta = np.arctan2(points[:, 1], points[:, 0])
    if np.any(r <= radius):
        raise ValueError("the series is evaluated outside the disc only")

    k1 = k * np.sqrt(1.0 + b_value)
    ka, k1a = k * radius, k1 * radius
    total = np.exp(1j * k * r * np.cos(theta - direction_angle))
    for n in range(-n_max, n_max + 1):
        num = k1 * special.jvp(n, k1a) * special.jv(n, ka) - k * special.jvp(n, ka) * special.jv(n, k1a)
        den = k * special.h1vp(n, ka) * special.jv(n, k1a) - k1 * special.jvp(n, k1a) * special.hankel1(n, ka)
        a_n = num / den
        total = total + a_n * (1j**n) * special.hankel1(n, k * r) * np.exp(1j * n * (theta - direction_angle))
    return total


if __name__ == "__main__":
    write_bessel_table(BESSEL_FIXTURE, bessel_grid())
