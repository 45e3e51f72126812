"""Données d'observation et leur format fichier.

Fichier principal : CSV `direction_index,wavenumber,x1,x2,re,im`, une
ligne par (direction, noeud). Métadonnées : fichier JSON voisin (même nom,
suffixe .json) avec la graine, le bruit, la grille et le solveur utilisé.
"""

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from scatterbayes.bayes.design import ObservationDesign
from scatterbayes.core.errors import ContractError

HEADER = ["direction_index", "wavenumber", "x1", "x2", "re", "im"]


@dataclass(frozen=True)
class Observations:
    """Données complexes d_j par (direction, point d'observation).

    Attributes:
        data: Tableau complexe (D, M)
        wavenumbers: Nombre d'onde de chaque direction, (D,)
        points: Coordonnées des points, (M, 2)
        sigmas: Écart-type du bruit de chaque direction, (D,)
        metadata: Provenance (graine, solveur, grille, ζ, ...)
    """

    data: np.ndarray
    wavenumbers: np.ndarray
    points: np.ndarray
    sigmas: np.ndarray
    metadata: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        data = np.asarray(self.data, dtype=complex)
        if data.ndim != 2 or data.shape != (len(self.wavenumbers), len(self.points)):
            raise ContractError(
                f"data shape {data.shape} does not match {len(self.wavenumbers)} directions "
                f"x {len(self.points)} points"
            )
        object.__setattr__(self, "data", data)

    @classmethod
    def from_design(cls, design: ObservationDesign, data: np.ndarray, **metadata: Any) -> "Observations":
        return cls(
            data=data,
            wavenumbers=np.asarray(design.wavenumbers, dtype=float),
            points=design.points,
            sigmas=np.asarray(design.sigmas, dtype=float),
            metadata={"zeta": design.zeta, **metadata},
        )

    def check_design(self, design: ObservationDesign) -> None:
        """Vérifie la compatibilité avec un design.

        Raises:
            ContractError: Si les dimensions, nombres d'onde, bruits ou points diffèrent
        """
        if self.data.shape != (design.n_directions, design.n_points):
            raise ContractError(
                f"observations are {self.data.shape}, design expects "
                f"({design.n_directions}, {design.n_points})"
            )
        if not np.allclose(self.wavenumbers, design.wavenumbers, rtol=0.0, atol=1e-12):
            raise ContractError("observation wavenumbers differ from the design")
        if not np.allclose(self.sigmas, design.sigmas, rtol=0.0, atol=1e-12):
            raise ContractError("observation noise levels differ from the design")
        if not np.allclose(self.points, design.points, rtol=0.0, atol=1e-9):
            raise ContractError("observation points differ from the design nodes")

    def permuted(self, order: np.ndarray) -> "Observations":
        return Observations(self.data[:, order], self.wavenumbers, self.points[order], self.sigmas, dict(self.metadata))


def sidecar_path(path: Path) -> Path:
    return Path(path).with_suffix(".json")


def write_observations(path: Path, obs: Observations) -> None:
    """Écrit le CSV et son fichier de métadonnées."""
    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(HEADER)
        for i, k in enumerate(obs.wavenumbers):
            for (x1, x2), value in zip(obs.points, obs.data[i]):
                writer.writerow([
                    i + 1, repr(float(k)), repr(float(x1)), repr(float(x2)),
                    repr(float(value.real)), repr(float(value.imag)),
                ])
    meta = {**obs.metadata, "sigmas": [float(s) for s in obs.sigmas]}
    with open(sidecar_path(path), "w", encoding="utf-8") as f:
        json.dump(meta, f, indent=2, sort_keys=True)
        f.write("\n")


def read_observations(path: Path) -> Observations:
    """Relit un fichier d'observations et ses métadonnées.

    Raises:
        ContractError: Si l'en-tête ou la structure du fichier est invalide
        FileNotFoundError: Si le CSV ou le fichier JSON manque
    """
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header != HEADER:
            raise ContractError(f"{path}: expected header {','.join(HEADER)}")
        rows = [row for row in reader if row]

    with open(sidecar_path(path), encoding="utf-8") as f:
        meta = json.load(f)

    index = np.array([int(r[0]) for r in rows])
    values = np.array([[float(v) for v in r[1:]] for r in rows]).reshape(-1, 5)
    n_dir = int(index.max()) if index.size else 0
    if n_dir == 0 or index.size % n_dir:
        raise ContractError(f"{path}: rows do not form a direction x point table")
    n_pts = index.size // n_dir
    if not np.array_equal(index, np.repeat(np.arange(1, n_dir + 1), n_pts)):
        raise ContractError(f"{path}: rows must be grouped by direction_index")

    table = values.reshape(n_dir, n_pts, 5)
    sigmas = np.asarray(meta.pop("sigmas"), dtype=float)
    return Observations(
        data=table[:, :, 3] + 1j * table[:, :, 4],
        wavenumbers=table[:, 0, 0],
        points=table[0, :, 1:3],
        sigmas=sigmas,
        metadata=meta,
    )
