"""Dumps CSV `x,y` des polygones, splines et nuages."""

import csv
from pathlib import Path

import numpy as np

from scatterbayes.core.errors import ContractError


def write_points_csv(path: Path, points: np.ndarray) -> None:
    """Écrit un tableau (n, 2) en CSV `x,y`."""
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(["x", "y"])
        for x, y in np.asarray(points, dtype=float):
            writer.writerow([repr(float(x)), repr(float(y))])


def read_points_csv(path: Path) -> np.ndarray:
    """Lit un CSV `x,y` (en-tête obligatoire).

    Raises:
        ContractError: Si l'en-tête n'est pas `x,y`
    """
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["x", "y"]:
            raise ContractError(f"{path}: expected header 'x,y', got {header!r}")
        rows = [(float(x), float(y)) for x, y in reader]
    return np.array(rows, dtype=float).reshape(-1, 2)
