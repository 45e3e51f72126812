"""Solveur direct : système dense réduit au support du contraste.

Les colonnes de l'opérateur discret K s'annulent hors du support de b.
On résout donc d'abord le système (I + K) u = uⁱ restreint aux n noeuds
du support, puis on évalue u ailleurs par le potentiel de volume discret

    u_j = uⁱ_j − h²k² Σ_{l ∈ S} Φ_{j−l} b_l u_l.

La factorisation LU est calculée une fois par (champ, k) et partagée par
toutes les directions incidentes.
"""

import logging
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import linalg
from scipy.linalg import lapack

from scatterbayes.core.errors import ContractError, SingularSystemError, SolverError
from scatterbayes.forward.fields import ComplexField, Grid2D, ScattererField
from scatterbayes.forward.quadrature import QuadratureWeights, quadrature_weights, resolve_c1

logger = logging.getLogger(__name__)

# Cibles évaluées par bloc lors du potentiel de volume.
EVALUATION_CHUNK = 2048


def _check_grid(weights: QuadratureWeights, grid: Grid2D) -> None:
    if weights.N < grid.N or not np.isclose(weights.h, grid.h, rtol=1e-14, atol=0.0):
        raise ContractError("quadrature weights do not match the grid")


@dataclass(frozen=True)
class ReducedSystem:
    """Factorisation LU de I + K restreinte au support.

    Attributes:
        grid: Grille hôte
        k: Nombre d'onde
        weights: Table des poids de quadrature
        support: Indices (j1, j2) des n noeuds du support, tableau (n, 2)
        coefficients: h²k²·b_l sur le support, tableau (n,)
        lu: Facteurs LU (scipy.linalg.lu_factor)
        piv: Pivots
        matrix: Matrice I + K (conservée pour le contrôle du résidu)
        rcond: Estimation de l'inverse du conditionnement (norme 1)
    """

    grid: Grid2D
    k: float
    weights: QuadratureWeights
    support: np.ndarray
    coefficients: np.ndarray
    lu: np.ndarray
    piv: np.ndarray
    matrix: np.ndarray
    rcond: float

    @classmethod
    def factorize(
        cls,
        field: ScattererField,
        k: float,
        weights: Optional[QuadratureWeights] = None,
        c1: Optional[float] = None,
        rcond_min: float = 1e-13,
    ) -> "ReducedSystem":
        """Assemble et factorise le système réduit.

        Args:
            field: Contraste sur la grille
            k: Nombre d'onde
            weights: Table des poids (construite si absente)
            c1: Coefficient de correction (fixture si None)
            rcond_min: Seuil en dessous duquel le système est déclaré singulier

        Raises:
            SingularSystemError: Si rcond < rcond_min
        """
        grid = field.grid
        if weights is None:
            weights = quadrature_weights(k, grid.h, grid.N, resolve_c1(c1))
        _check_grid(weights, grid)

        support = grid.unflatten(field.support)
        coefficients = (grid.h * k) ** 2 * field.values.ravel()[field.support]

        d1 = support[:, 0][:, None] - support[:, 0][None, :]
        d2 = support[:, 1][:, None] - support[:, 1][None, :]
        matrix = weights.kernel(d1, d2) * coefficients[None, :]
        matrix[np.diag_indices_from(matrix)] += 1.0

        if support.shape[0] == 0:
            return cls(grid, k, weights, support, coefficients, matrix, np.empty(0, dtype=np.int32), matrix, 1.0)

        anorm = np.linalg.norm(matrix, 1)
        lu, piv = linalg.lu_factor(matrix, check_finite=False)
        gecon, = lapack.get_lapack_funcs(("gecon",), (lu,))
        rcond, info = gecon(lu, anorm, norm="1")
        if info != 0 or rcond < rcond_min:
            raise SingularSystemError(
                f"reduced system is singular to working precision (k={k}, n={support.shape[0]})",
                rcond=float(rcond),
            )
        return cls(grid, float(k), weights, support, coefficients, lu, piv, matrix, float(rcond))

    @property
    def size(self) -> int:
        return self.support.shape[0]

    def solve(self, rhs: np.ndarray, residual_tol: float = 1e-10) -> np.ndarray:
        """Résout (I + K) u_S = uⁱ_S pour un ou plusieurs seconds membres.

        Args:
            rhs: Tableau (n,) ou (n, n_rhs)
            residual_tol: Résidu relatif maximum accepté

        Raises:
            SolverError: Si le résidu relatif dépasse residual_tol
        """
        rhs = np.asarray(rhs, dtype=complex)
        if rhs.shape[0] != self.size:
            raise ContractError(f"right-hand side has {rhs.shape[0]} rows, system has {self.size}")
        if self.size == 0:
            return rhs.copy()
        solution = linalg.lu_solve((self.lu, self.piv), rhs, check_finite=False)
        residual = np.linalg.norm(self.matrix @ solution - rhs) / max(np.linalg.norm(rhs), 1e-300)
        if residual > residual_tol:
            raise SolverError(f"reduced system residual {residual:.3e} exceeds {residual_tol:.1e}")
        return solution

    def evaluate(self, u_support: np.ndarray, targets: np.ndarray, incident_targets: np.ndarray) -> np.ndarray:
        """Champ total aux noeuds `targets` par le potentiel de volume discret.

        Args:
            u_support: Solution sur le support, (n,) ou (n, n_rhs)
            targets: Indices (j1, j2) des cibles, tableau (t, 2)
            incident_targets: uⁱ aux cibles, (t,) ou (t, n_rhs)

        Returns:
            u aux cibles, de même forme que incident_targets
        """
        targets = np.asarray(targets, dtype=int).reshape(-1, 2)
        incident_targets = np.asarray(incident_targets, dtype=complex)
        if self.size == 0:
            return incident_targets.copy()
        weighted = self.coefficients.reshape((-1,) + (1,) * (u_support.ndim - 1)) * u_support
        out = np.empty_like(incident_targets)
        for start in range(0, targets.shape[0], EVALUATION_CHUNK):
            block = targets[start:start + EVALUATION_CHUNK]
            d1 = block[:, 0][:, None] - self.support[:, 0][None, :]
            d2 = block[:, 1][:, None] - self.support[:, 1][None, :]
            out[start:start + EVALUATION_CHUNK] = (
                incident_targets[start:start + EVALUATION_CHUNK] - self.weights.kernel(d1, d2) @ weighted
            )
        return out


@dataclass(frozen=True)
class DirectSolution:
    """Solution sur le support, évaluable sur n'importe quels noeuds.

    Attributes:
        system: Système réduit factorisé
        incident: Champ(s) incident(s) sur la grille
        u_support: Solution sur le support, tableau (n, n_rhs)
    """

    system: ReducedSystem
    incident: ComplexField
    u_support: np.ndarray

    def at(self, nodes: np.ndarray) -> np.ndarray:
        """u aux noeuds (j1, j2) ; forme (n_rhs, t)."""
        nodes = np.asarray(nodes, dtype=int).reshape(-1, 2)
        incident = np.atleast_2d(self.incident.at(nodes)).T
        return self.system.evaluate(self.u_support, nodes, incident).T

    def total_field(self) -> ComplexField:
        grid = self.system.grid
        values = self.at(grid.unflatten(np.arange(grid.size))).reshape((-1,) + grid.shape)
        return ComplexField(grid, values if self.incident.batched else values[0])


def solve_direct_system(
    field: ScattererField,
    k: float,
    incident: ComplexField,
    weights: Optional[QuadratureWeights] = None,
    c1: Optional[float] = None,
    residual_tol: float = 1e-10,
    rcond_min: float = 1e-13,
) -> DirectSolution:
    """Factorise et résout, sans évaluer le champ hors du support."""
    if incident.grid != field.grid:
        raise ContractError("incident field and scatterer live on different grids")
    started = time.perf_counter()
    system = ReducedSystem.factorize(field, k, weights=weights, c1=c1, rcond_min=rcond_min)
    rhs = incident.flat()[:, field.support].T
    u_support = system.solve(rhs, residual_tol=residual_tol)
    logger.debug(
        "direct solve",
        extra={"solver": "direct", "k": k, "support": system.size, "rhs": rhs.shape[1],
               "seconds": time.perf_counter() - started},
    )
    return DirectSolution(system, incident, u_support)


def solve_direct(
    field: ScattererField,
    k: float,
    incident: ComplexField,
    grid: Optional[Grid2D] = None,
    weights: Optional[QuadratureWeights] = None,
    c1: Optional[float] = None,
    residual_tol: float = 1e-10,
    rcond_min: float = 1e-13,
) -> ComplexField:
    """Champ total u_h sur toute la grille par le système réduit.

    Args:
        field: Contraste b sur la grille
        k: Nombre d'onde
        incident: Champ incident, éventuellement un lot de directions
        grid: Grille (doit être celle de field si fournie)
        weights: Table des poids de quadrature (construite si absente)
        c1: Coefficient de correction (fixture si None)
        residual_tol: Résidu relatif maximum du système réduit
        rcond_min: Seuil de singularité

    Returns:
        ComplexField total, de même forme que incident

    Raises:
        SingularSystemError: Si le système réduit est singulier
        SolverError: Si le résidu dépasse residual_tol

    Example:
        >>> u = solve_direct(field, 5.0, incident_plane_wave((1.0, 0.0), 5.0, grid))
    """
    if grid is not None and grid != field.grid:
        raise ContractError("grid does not match the scatterer field")
    solution = solve_direct_system(field, k, incident, weights, c1, residual_tol, rcond_min)
    return solution.total_field()
