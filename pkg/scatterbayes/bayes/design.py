"""Design d'observation : directions, nombres d'onde, bruit et noeuds."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from scatterbayes.core.config import DesignSettings
from scatterbayes.core.errors import ContractError
from scatterbayes.forward.fields import Grid2D


def design_directions(n_directions: int, zeta: float) -> np.ndarray:
    """d_i = (cos(2πi/n + ζ), sin(2πi/n + ζ)), i = 1..n, tableau (n, 2)."""
    angles = 2.0 * np.pi * np.arange(1, n_directions + 1) / n_directions + zeta
    return np.column_stack([np.cos(angles), np.sin(angles)])


def stride_nodes(grid: Grid2D, stride: int, exclusion: Optional[tuple[float, float, float, float]]) -> np.ndarray:
    """Un noeud sur `stride` dans chaque axe, hors de la boîte `exclusion`.

    Args:
        grid: Grille d'inférence
        stride: Pas de sous-échantillonnage
        exclusion: (xmin, ymin, xmax, ymax) de l'obstacle, ou None

    Returns:
        Indices (j1, j2), tableau (M, 2) en ordre lexicographique
    """
    j = np.arange(0, grid.N + 1, stride)
    J1, J2 = np.meshgrid(j, j, indexing="ij")
    nodes = np.column_stack([J1.ravel(), J2.ravel()])
    if exclusion is not None:
        xmin, ymin, xmax, ymax = exclusion
        pts = grid.node_coordinates(nodes)
        inside = (pts[:, 0] >= xmin) & (pts[:, 0] <= xmax) & (pts[:, 1] >= ymin) & (pts[:, 1] <= ymax)
        nodes = nodes[~inside]
    return nodes


@dataclass(frozen=True)
class ObservationDesign:
    """Plan d'expérience.

    Les directions d'indice pair (i = 2, 4, ...) portent k_high, les
    directions impaires portent k_low.

    Attributes:
        grid: Grille d'inférence
        nodes: Noeuds d'observation (j1, j2), tableau (M, 2)
        directions: Directions unitaires, tableau (D, 2)
        wavenumbers: Nombre d'onde de chaque direction, tableau (D,)
        sigmas: Écart-type du bruit de chaque direction, tableau (D,)
        zeta: Rotation des directions
    """

    grid: Grid2D
    nodes: np.ndarray
    directions: np.ndarray
    wavenumbers: np.ndarray
    sigmas: np.ndarray
    zeta: float = 0.0

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=int).reshape(-1, 2)
        if nodes.shape[0] < 1:
            raise ContractError("an observation design needs at least one node")
        self.grid.flat_index(nodes)
        if not (len(self.directions) == len(self.wavenumbers) == len(self.sigmas)):
            raise ContractError("directions, wavenumbers and sigmas must have equal lengths")
        object.__setattr__(self, "nodes", nodes)

    @classmethod
    def from_settings(
        cls,
        settings: DesignSettings,
        grid: Grid2D,
        exclusion: Optional[tuple[float, float, float, float]] = None,
    ) -> "ObservationDesign":
        """Construit le design depuis la configuration.

        Args:
            settings: Section `design` de la configuration
            grid: Grille d'inférence
            exclusion: Boîte englobante de l'obstacle vrai (ignorée si des
                noeuds explicites sont configurés)
        """
        directions = design_directions(settings.n_directions, settings.zeta)
        index = np.arange(1, settings.n_directions + 1)
        high = index % 2 == 0
        wavenumbers = np.where(high, settings.k_high, settings.k_low)
        sigmas = np.where(high, settings.sigma_high, settings.sigma_low)
        if settings.observation_nodes is not None:
            nodes = np.array(settings.observation_nodes, dtype=int)
        else:
            nodes = stride_nodes(grid, settings.observation_stride, exclusion)
        return cls(grid, nodes, directions, wavenumbers, sigmas, settings.zeta)

    @property
    def points(self) -> np.ndarray:
        """Coordonnées des noeuds d'observation, tableau (M, 2)."""
        return self.grid.node_coordinates(self.nodes)

    @property
    def n_points(self) -> int:
        return self.nodes.shape[0]

    @property
    def n_directions(self) -> int:
        return len(self.directions)

    def groups(self) -> list[tuple[float, float, np.ndarray]]:
        """Groupes (k, σ, indices des directions) par nombre d'onde croissant."""
        out = []
        for k in np.unique(self.wavenumbers):
            members = np.flatnonzero(self.wavenumbers == k)
            sigma = np.unique(self.sigmas[members])
            if sigma.size != 1:
                raise ContractError(f"directions at k={k} carry different noise levels")
            out.append((float(k), float(sigma[0]), members))
        return out

    def permuted(self, order: np.ndarray) -> "ObservationDesign":
        """Même design avec les noeuds réordonnés."""
        return ObservationDesign(self.grid, self.nodes[order], self.directions, self.wavenumbers, self.sigmas, self.zeta)
