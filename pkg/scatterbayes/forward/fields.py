"""Grille uniforme et champs discrets.

Ce module définit Grid2D (le réseau Z²_N de pas h), ScattererField (le
contraste b sur la grille) et ComplexField (champ d'onde complexe).
Les tableaux sont indexés [j1, j2] (convention numpy "ij").
"""

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from scatterbayes.core.errors import ContractError, DomainError


@dataclass(frozen=True)
class Grid2D:
    """Réseau uniforme {origin + j·h : 0 <= j_k <= N}.

    Attributes:
        N: Nombre d'intervalles par axe (N + 1 noeuds)
        h: Pas de grille
        origin: Coordonnées du noeud j = (0, 0)

    Example:
        >>> grid = Grid2D(N=40, h=0.02, origin=(-0.4, -0.4))
        >>> grid.shape
        (41, 41)
    """

    N: int
    h: float
    origin: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        if self.N < 8:
            raise DomainError(f"Grid2D: N must be >= 8, got {self.N}")
        if not self.h > 0.0:
            raise DomainError(f"Grid2D: h must be > 0, got {self.h}")
        object.__setattr__(self, "origin", (float(self.origin[0]), float(self.origin[1])))

    @classmethod
    def centered(cls, N: int, h: float) -> "Grid2D":
        """Grille centrée sur l'origine, couvrant [-N·h/2, N·h/2]²."""
        half = 0.5 * N * h
        return cls(N=N, h=h, origin=(-half, -half))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.N + 1, self.N + 1)

    @property
    def size(self) -> int:
        return (self.N + 1) ** 2

    @property
    def bounds(self) -> tuple[float, float, float, float]:
        """(xmin, ymin, xmax, ymax) du domaine G."""
        x0, y0 = self.origin
        span = self.N * self.h
        return (x0, y0, x0 + span, y0 + span)

    def axes(self) -> tuple[np.ndarray, np.ndarray]:
        j = np.arange(self.N + 1)
        return self.origin[0] + j * self.h, self.origin[1] + j * self.h

    def coordinates(self) -> tuple[np.ndarray, np.ndarray]:
        """Coordonnées X, Y de tous les noeuds, de forme `shape`."""
        x, y = self.axes()
        return np.meshgrid(x, y, indexing="ij")

    def node_coordinates(self, nodes: np.ndarray) -> np.ndarray:
        """Coordonnées des noeuds d'indices (j1, j2), tableau (n, 2)."""
        nodes = np.asarray(nodes, dtype=int).reshape(-1, 2)
        return np.asarray(self.origin) + nodes * self.h

    def flat_index(self, nodes: np.ndarray) -> np.ndarray:
        nodes = np.asarray(nodes, dtype=int).reshape(-1, 2)
        if np.any(nodes < 0) or np.any(nodes > self.N):
            raise ContractError("node index outside the grid")
        return np.ravel_multi_index((nodes[:, 0], nodes[:, 1]), self.shape)

    def unflatten(self, flat: np.ndarray) -> np.ndarray:
        """Indices plats -> indices (j1, j2), tableau (n, 2)."""
        j1, j2 = np.unravel_index(np.asarray(flat, dtype=int), self.shape)
        return np.column_stack([j1, j2])

    def contains(self, points: np.ndarray) -> np.ndarray:
        """Masque des points à l'intérieur (fermé) du domaine G."""
        points = np.asarray(points, dtype=float).reshape(-1, 2)
        xmin, ymin, xmax, ymax = self.bounds
        return (
            (points[:, 0] >= xmin) & (points[:, 0] <= xmax)
            & (points[:, 1] >= ymin) & (points[:, 1] <= ymax)
        )

    def refined(self, factor: int) -> "Grid2D":
        """Grille de même domaine et de pas h / factor.

        Le noeud j de cette grille est le noeud factor·j de la grille fine.
        """
        if factor < 1:
            raise DomainError("refinement factor must be >= 1")
        return Grid2D(N=self.N * factor, h=self.h / factor, origin=self.origin)


@dataclass(frozen=True)
class ScattererField:
    """Contraste d'indice b sur la grille.

    Les champs produits par `rasterize` valent b à l'intérieur de D et 0
    ailleurs ; les solveurs acceptent aussi des contrastes lisses.

    Attributes:
        grid: Grille hôte
        values: Tableau réel de forme grid.shape
        support: Indices plats des noeuds non nuls (calculé)
    """

    grid: Grid2D
    values: np.ndarray
    support: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != self.grid.shape:
            raise ContractError(f"field shape {values.shape} != grid shape {self.grid.shape}")
        if np.any(values == -1.0):
            raise DomainError("contrast value -1 is not admissible")
        values = values.copy()
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "support", np.flatnonzero(values))

    @classmethod
    def zeros(cls, grid: Grid2D) -> "ScattererField":
        return cls(grid, np.zeros(grid.shape))

    @property
    def is_empty(self) -> bool:
        return self.support.size == 0

    @property
    def support_fraction(self) -> float:
        return self.support.size / self.grid.size

    @property
    def b_value(self) -> Optional[float]:
        """Valeur constante sur le support, None si le contraste varie."""
        if self.is_empty:
            return 0.0
        on_support = self.values.ravel()[self.support]
        return float(on_support[0]) if np.all(on_support == on_support[0]) else None


@dataclass(frozen=True)
class ComplexField:
    """Champ complexe sur la grille.

    `values` a la forme grid.shape, ou (n_directions,) + grid.shape pour un
    lot de champs (une résolution par direction incidente).
    """

    grid: Grid2D
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        if values.shape[-2:] != self.grid.shape:
            raise ContractError(f"field shape {values.shape} does not end with {self.grid.shape}")
        if not np.all(np.isfinite(values)):
            raise DomainError("complex field has non-finite entries")
        object.__setattr__(self, "values", values)

    @property
    def batched(self) -> bool:
        return self.values.ndim == 3

    def flat(self) -> np.ndarray:
        """Valeurs aplaties, forme (n_batch, grid.size)."""
        return self.values.reshape(-1, self.grid.size)

    def at(self, nodes: np.ndarray) -> np.ndarray:
        """Valeurs aux noeuds (j1, j2) ; forme (n_batch, n) ou (n,)."""
        flat = self.grid.flat_index(nodes)
        values = self.flat()[:, flat]
        return values if self.batched else values[0]

    def __sub__(self, other: "ComplexField") -> "ComplexField":
        if other.grid != self.grid:
            raise ContractError("fields live on different grids")
        return ComplexField(self.grid, self.values - other.values)


def relative_l2(a: np.ndarray, b: np.ndarray) -> float:
    """Écart relatif ||a - b|| / ||b||."""
    denom = np.linalg.norm(b)
    return float(np.linalg.norm(a - b) / denom) if denom > 0 else float(np.linalg.norm(a - b))


def write_field_csv(path: Path, values: ComplexField, direction: int = 0) -> None:
    """Écrit un champ en CSV `j1,j2,re,im` (une direction d'un lot)."""
    data = values.values[direction] if values.batched else values.values
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(["j1", "j2", "re", "im"])
        for (j1, j2), value in np.ndenumerate(data):
            writer.writerow([j1, j2, repr(float(value.real)), repr(float(value.imag))])
