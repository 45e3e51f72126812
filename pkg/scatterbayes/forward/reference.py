"""Solveur de référence matrice-libre : convolution FFT et GMRES.

L'opérateur I + K est appliqué sur toute la grille : le produit
Σ_l Φ_{j−l} (b u)_l est une convolution discrète, calculée par FFT après
plongement circulant dans une grille de côté P, puissance de 2 ≥ 2(N + 1).
Les échantillons de Φ et le poids β₁ sont ceux du solveur direct : les deux
solveurs ne diffèrent que par l'algèbre linéaire.
"""

import logging
import math
import time
from typing import Optional

import numpy as np
from scipy import fft
from scipy.sparse.linalg import LinearOperator, gmres

from scatterbayes.core.errors import ContractError, IterativeSolverError
from scatterbayes.forward.fields import ComplexField, Grid2D, ScattererField
from scatterbayes.forward.quadrature import QuadratureWeights, quadrature_weights, resolve_c1

logger = logging.getLogger(__name__)


def padded_size(N: int) -> int:
    """Plus petite puissance de 2 supérieure ou égale à 2(N + 1)."""
    return 1 << (2 * (N + 1) - 1).bit_length()


class ConvolutionOperator(LinearOperator):
    """Application matrice-libre de I + K sur les (N + 1)² noeuds.

    Attributes:
        grid: Grille de calcul
        coefficients: h²k²·b sur la grille, tableau grid.shape
        kernel_hat: FFT 2D du noyau Φ plongé, tableau (P, P)
        matvecs: Nombre d'applications effectuées
    """

    def __init__(self, field: ScattererField, k: float, weights: QuadratureWeights):
        grid = field.grid
        size = grid.size
        super().__init__(dtype=np.complex128, shape=(size, size))
        self.grid = grid
        self.coefficients = (grid.h * k) ** 2 * field.values
        self.padded = padded_size(grid.N)

        N = grid.N
        offsets = np.arange(-N, N + 1) % self.padded
        kernel = np.zeros((self.padded, self.padded), dtype=complex)
        center = weights.table[weights.N - N:weights.N + N + 1, weights.N - N:weights.N + N + 1]
        kernel[np.ix_(offsets, offsets)] = center
        self.kernel_hat = fft.fft2(kernel)
        self.matvecs = 0

    def convolve(self, values: np.ndarray) -> np.ndarray:
        """Σ_l Φ_{j−l} v_l pour v donné sur la grille."""
        n = self.grid.N + 1
        padded = np.zeros((self.padded, self.padded), dtype=complex)
        padded[:n, :n] = values
        return fft.ifft2(self.kernel_hat * fft.fft2(padded))[:n, :n]

    def _matvec(self, x: np.ndarray) -> np.ndarray:
        self.matvecs += 1
        u = x.reshape(self.grid.shape)
        return (u + self.convolve(self.coefficients * u)).ravel()


def solve_reference(
    field: ScattererField,
    k: float,
    incident: ComplexField,
    grid: Optional[Grid2D] = None,
    weights: Optional[QuadratureWeights] = None,
    c1: Optional[float] = None,
    rtol: float = 1e-8,
    restart: int = 30,
    max_iterations: int = 500,
) -> ComplexField:
    """Champ total par GMRES redémarré sur l'opérateur de convolution.

    Args:
        field: Contraste b sur la grille
        k: Nombre d'onde
        incident: Champ incident, éventuellement un lot de directions
        grid: Grille (doit être celle de field si fournie)
        weights: Table des poids de quadrature (construite si absente)
        c1: Coefficient de correction (fixture si None)
        rtol: Résidu relatif d'arrêt
        restart: Taille du sous-espace de Krylov avant redémarrage
        max_iterations: Itérations internes maximum

    Returns:
        ComplexField total, de même forme que incident

    Raises:
        IterativeSolverError: Si GMRES ne converge pas

    Example:
        >>> u = solve_reference(field, 5.0, incident_plane_wave((1.0, 0.0), 5.0, grid), rtol=1e-10)
    """
    if grid is not None and grid != field.grid:
        raise ContractError("grid does not match the scatterer field")
    if incident.grid != field.grid:
        raise ContractError("incident field and scatterer live on different grids")
    if field.is_empty:
        return ComplexField(incident.grid, incident.values.copy())

    grid = field.grid
    if weights is None:
        weights = quadrature_weights(k, grid.h, grid.N, resolve_c1(c1))
    if weights.N < grid.N:
        raise ContractError("quadrature weights do not cover the grid")

    operator = ConvolutionOperator(field, k, weights)
    rhs_batch = incident.flat()
    solutions = np.empty_like(rhs_batch)
    outer = max(1, math.ceil(max_iterations / restart))

    for index, rhs in enumerate(rhs_batch):
        iterations = 0

        def count(_residual_norm: float) -> None:
            nonlocal iterations
            iterations += 1

        started = time.perf_counter()
        solution, info = gmres(
            operator, rhs, x0=rhs.copy(), rtol=rtol, atol=0.0, restart=restart,
            maxiter=outer, callback=count, callback_type="pr_norm",
        )
        residual = np.linalg.norm(operator.matvec(solution) - rhs) / np.linalg.norm(rhs)
        if info != 0 or residual > 10.0 * rtol:
            raise IterativeSolverError(
                f"GMRES did not converge (k={k}, direction={index}, info={info})",
                iterations=iterations,
                residual=float(residual),
            )
        solutions[index] = solution
        logger.debug(
            "reference solve",
            extra={"solver": "reference", "k": k, "iterations": iterations, "residual": float(residual),
                   "seconds": time.perf_counter() - started},
        )

    values = solutions.reshape(incident.values.shape)
    return ComplexField(grid, values)
