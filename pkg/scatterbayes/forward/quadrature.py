"""Règle des trapèzes corrigée pour le noyau logarithmique Φ.

Sur la grille de pas h, l'intégrale ∫ Φ(k|x_j − y|) f(y) dy est approchée
par h² Σ_l Φ_{j−l} f_l, avec Φ_m = Φ(k|m|h) pour m ≠ 0 et le poids
diagonal corrigé

    β₁ = −i/4 + (1/2π)(ln(hk/2) + γ + c₁).

Le coefficient c₁ est la constante du réseau carré, ½ ln(4π) − 2 ln Γ(¼).
`calibration_study` le retrouve numériquement en ajustant la règle sur une
intégrale de référence calculée par quadrature adaptative, puis vérifie
l'ordre de convergence obtenu.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Optional, Sequence

import numpy as np
from scipy import integrate

from scatterbayes.core.errors import CalibrationError, DomainError
from scatterbayes.specfun import hankel1_0

logger = logging.getLogger(__name__)

EULER_GAMMA = 0.5772156649015328606
LATTICE_C1 = 0.5 * math.log(4.0 * math.pi) - 2.0 * math.lgamma(0.25)

C1_FIXTURE = "c1.calibration"

# Intégrale de calibration : gaussienne radiale g(r) = exp(−r²/2s²) sur [−½, ½]².
CALIBRATION_HALF_SIDE = 0.5
CALIBRATION_WIDTH = 0.07
CALIBRATION_STEPS = (0.04, 0.02, 0.01, 0.005)


def green_phi(r):
    """Φ(r) = −(i/4)·H₀⁽¹⁾(r), avec r = k·|x − y| > 0.

    Raises:
        DomainError: Si r <= 0 (la diagonale passe par β₁)

    Example:
        >>> green_phi(1.0)
        (0.02206424105391924-0.19129942163949165j)
    """
    if np.any(np.asarray(r) <= 0.0):
        raise DomainError("green_phi: r must be > 0, the diagonal uses beta1")
    return -0.25j * hankel1_0(r)


def beta1(k: float, h: float, c1: float) -> complex:
    """Poids diagonal corrigé β₁."""
    return -0.25j + (math.log(0.5 * h * k) + EULER_GAMMA + c1) / (2.0 * math.pi)


@dataclass(frozen=True)
class QuadratureWeights:
    """Table Φ_{j−l} pour tous les décalages d'une grille à N intervalles.

    Attributes:
        k: Nombre d'onde
        h: Pas de grille
        c1: Coefficient de correction
        N: Intervalles par axe
        beta1: Poids diagonal
        table: Tableau complexe (2N+1, 2N+1) ; table[N + d1, N + d2] = Φ_d,
            table[N, N] = β₁
    """

    k: float
    h: float
    c1: float
    N: int
    beta1: complex
    table: np.ndarray

    def kernel(self, d1: np.ndarray, d2: np.ndarray) -> np.ndarray:
        """Φ_{d} pour des décalages entiers d = (d1, d2), |d_i| <= N."""
        return self.table[np.asarray(d1) + self.N, np.asarray(d2) + self.N]

    def offdiag(self, d1: np.ndarray, d2: np.ndarray) -> np.ndarray:
        """Φ(k|d|h) hors diagonale (alias de `kernel` pour d ≠ 0)."""
        return self.kernel(d1, d2)


@lru_cache(maxsize=32)
def quadrature_weights(k: float, h: float, N: int, c1: float) -> QuadratureWeights:
    """Construit (ou relit dans le cache) la table des poids.

    Args:
        k: Nombre d'onde (> 0)
        h: Pas de grille (> 0)
        N: Intervalles par axe de la grille
        c1: Coefficient de correction

    Returns:
        QuadratureWeights immuable, partageable entre threads
    """
    if k <= 0.0 or h <= 0.0:
        raise DomainError(f"quadrature weights need k > 0 and h > 0, got k={k}, h={h}")
    d = np.arange(-N, N + 1)
    radius = h * np.hypot(d[:, None], d[None, :])
    radius[N, N] = 1.0
    table = green_phi(k * radius)
    b1 = beta1(k, h, c1)
    table[N, N] = b1
    table.setflags(write=False)
    return QuadratureWeights(k=float(k), h=float(h), c1=float(c1), N=int(N), beta1=b1, table=table)


def load_c1() -> float:
    """Lit le coefficient c₁ figé dans la fixture du package.

    Retombe sur la forme close du réseau carré si la fixture manque.
    """
    try:
        text = resources.files("scatterbayes").joinpath("data", C1_FIXTURE).read_text(encoding="utf-8")
    except FileNotFoundError:
        logger.warning("c1 fixture missing, using the lattice closed form", extra={"c1": LATTICE_C1})
        return LATTICE_C1
    for line in text.splitlines():
        key, sep, value = line.partition("=")
        if sep and key.strip() == "c1":
            return float(value)
    raise CalibrationError(f"{C1_FIXTURE}: no 'c1 = <value>' line")


def resolve_c1(c1: Optional[float]) -> float:
    """c₁ explicite, ou celui de la fixture."""
    return load_c1() if c1 is None else float(c1)


# ---------------------------------------------------------------------------
# Calibration
# ---------------------------------------------------------------------------


def _bump(r: np.ndarray, width: float) -> np.ndarray:
    return np.exp(-0.5 * (np.asarray(r) / width) ** 2)


def _radial_integrand(r: float, k: float, width: float, part: str) -> float:
    if r == 0.0:
        return 0.0
    value = green_phi(k * r) * _bump(r, width) * r
    return value.real if part == "re" else value.imag


def calibration_oracle(k: float, width: float = CALIBRATION_WIDTH, half_side: float = CALIBRATION_HALF_SIDE) -> complex:
    """∫_{[−a, a]²} Φ(k|y|) g(|y|) dy par quadrature adaptative.

    Le carré est découpé en disque inscrit (intégrale radiale 2π∫ r Φ g dr)
    et en coins, intégrés en polaire par symétrie d'ordre 8.
    """
    opts = {"epsabs": 1e-15, "epsrel": 1e-13, "limit": 400}
    result = 0.0j
    for part, unit in (("re", 1.0), ("im", 1.0j)):
        disc, _ = integrate.quad(_radial_integrand, 0.0, half_side, args=(k, width, part), **opts)

        def corner(theta: float, part=part) -> float:
            outer = half_side / math.cos(theta)
            value, _ = integrate.quad(_radial_integrand, half_side, outer, args=(k, width, part), epsabs=1e-18)
            return value

        corners, _ = integrate.quad(corner, 0.0, 0.25 * math.pi, epsabs=1e-18)
        result += unit * (2.0 * math.pi * disc + 8.0 * corners)
    return result


def _offdiag_sum(k: float, h: float, width: float, half_side: float) -> complex:
    n = int(round(half_side / h))
    j = np.arange(-n, n + 1)
    radius = h * np.hypot(j[:, None], j[None, :])
    radius[n, n] = 1.0
    terms = green_phi(k * radius) * _bump(radius, width)
    terms[n, n] = 0.0
    return complex(h * h * np.sum(terms))


def corrected_rule(k: float, h: float, c1: float, width: float = CALIBRATION_WIDTH, half_side: float = CALIBRATION_HALF_SIDE) -> complex:
    """Règle corrigée appliquée à l'intégrale de calibration (g(0) = 1)."""
    return _offdiag_sum(k, h, width, half_side) + h * h * beta1(k, h, c1)


@dataclass(frozen=True)
class CalibrationReport:
    """Résultat d'une calibration de c₁.

    Attributes:
        c1: Valeur extrapolée
        k: Nombre d'onde utilisé
        steps: Pas h, du plus grossier au plus fin
        c1_by_step: Estimation c₁(h) à chaque pas
        errors: |règle corrigée − oracle| avec c1, à chaque pas
        orders: Ordres observés entre pas successifs
    """

    c1: float
    k: float
    steps: tuple[float, ...]
    c1_by_step: tuple[float, ...]
    errors: tuple[float, ...]
    orders: tuple[float, ...]

    @property
    def observed_order(self) -> float:
        """Ordre observé sur les deux pas les plus fins."""
        return self.orders[-1]

    def to_text(self) -> str:
        """Contenu du fichier `c1.calibration`."""
        lines = [
            "# corrected trapezoidal rule, diagonal correction coefficient",
            f"c1 = {self.c1!r}",
            f"k = {self.k!r}",
            f"lattice_closed_form = {LATTICE_C1!r}",
            "# h  c1(h)  abs_error  observed_order",
        ]
        for i, h in enumerate(self.steps):
            order = f"{self.orders[i - 1]:.4f}" if i > 0 else "-"
            lines.append(f"{h!r}  {self.c1_by_step[i]!r}  {self.errors[i]:.6e}  {order}")
        return "\n".join(lines) + "\n"


def _richardson(values: Sequence[float], levels: int) -> float:
    """Extrapolation de Romberg en h² sur les `levels` derniers pas."""
    column = list(values[-levels:])
    for j in range(1, levels):
        factor = 4.0**j - 1.0
        column = [column[i + 1] + (column[i + 1] - column[i]) / factor for i in range(len(column) - 1)]
    return column[0]


def calibration_study(
    k: float = 1.0,
    steps: Sequence[float] = CALIBRATION_STEPS,
    min_order: float = 3.5,
    c1: Optional[float] = None,
    levels: int = 3,
) -> CalibrationReport:
    """Calibre c₁ sur l'intégrale de référence et mesure l'ordre.

    Pour chaque h, c₁(h) est la valeur qui annule l'écart de partie réelle
    entre la règle corrigée et l'oracle ; c₁(h) = c₁ + O(h²), d'où une
    extrapolation de Richardson. L'erreur de la règle est ensuite mesurée
    avec le c₁ extrapolé (ou avec `c1` s'il est imposé).

    Args:
        k: Nombre d'onde
        steps: Pas décroissants (chacun moitié du précédent)
        min_order: Ordre minimum exigé entre les deux pas les plus fins
        c1: Valeur à évaluer au lieu de la valeur calibrée (None = calibrer)
        levels: Nombre de pas utilisés pour l'extrapolation

    Returns:
        CalibrationReport

    Raises:
        CalibrationError: Si l'ordre observé est inférieur à min_order
    """
    steps = tuple(float(h) for h in steps)
    exact = calibration_oracle(k)

    c1_by_step = []
    for h in steps:
        gap = (exact - _offdiag_sum(k, h, CALIBRATION_WIDTH, CALIBRATION_HALF_SIDE)).real
        c1_by_step.append(2.0 * math.pi * gap / (h * h) - math.log(0.5 * h * k) - EULER_GAMMA)

    fitted = _richardson(c1_by_step, min(levels, len(steps)))
    used = fitted if c1 is None else float(c1)

    errors = [abs(corrected_rule(k, h, used) - exact) for h in steps]
    orders = [math.log2(errors[i] / errors[i + 1]) for i in range(len(steps) - 1)]
    report = CalibrationReport(
        c1=used,
        k=float(k),
        steps=steps,
        c1_by_step=tuple(c1_by_step),
        errors=tuple(errors),
        orders=tuple(orders),
    )

    logger.info(
        "c1 calibration",
        extra={"k": k, "c1": used, "orders": [round(o, 3) for o in orders]},
    )
    if c1 is None and abs(fitted - LATTICE_C1) > 1e-6:
        logger.warning("calibrated c1 departs from the lattice closed form", extra={"c1": fitted, "closed_form": LATTICE_C1})
    if report.observed_order < min_order:
        raise CalibrationError(
            f"observed order {report.observed_order:.3f} below {min_order} with c1={used!r}"
        )
    return report


def calibrate_c1(k: float = 1.0, steps: Sequence[float] = CALIBRATION_STEPS, min_order: float = 3.5) -> float:
    """Calibre c₁ et renvoie sa valeur.

    Example:
        >>> round(calibrate_c1(), 8)
        -1.31053293
    """
    return calibration_study(k=k, steps=steps, min_order=min_order).c1
