"""Stockage de la chaîne : scalaires par itération et instantanés du nuage.

Fichiers :
- chain.csv : `iter,move,accepted,energy,b,alpha,area`, une ligne par itération
- snapshots.csv : `iter,index,x1,x2`, un bloc par instantané du nuage

Les flottants sont écrits avec repr() : deux chaînes de même graine
produisent des fichiers identiques octet par octet.
"""

import csv
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from scatterbayes.core.errors import ContractError
from scatterbayes.mcmc.state import MoveKind

CHAIN_HEADER = ["iter", "move", "accepted", "energy", "b", "alpha", "area"]
SNAPSHOT_HEADER = ["iter", "index", "x1", "x2"]

_MOVES = MoveKind.ordered()
_MOVE_INDEX = {move.value: i for i, move in enumerate(_MOVES)}


@dataclass
class ChainRecord:
    """Trace d'une chaîne MCMC.

    Les scalaires d'une ligne décrivent l'état courant *après* l'itération ;
    l'énergie enregistrée est donc toujours finie.

    Attributes:
        iterations: Numéros d'itération (1..t_max), tableau (T,)
        moves: Indice du mouvement proposé dans MoveKind.ordered(), (T,)
        accepted: Proposition acceptée, (T,)
        energy: Énergie de l'état courant, (T,)
        b: Contraste courant, (T,)
        alpha: α courant, (T,)
        area: Aire de Γ_{Q,α} courante, (T,)
        snapshots: Nuages complets par itération (0 = état initial)
        rejections: Nombre de rejets par motif (invalidité, solveur, ...)
        wall_clock: Durée de la chaîne en secondes
    """

    iterations: np.ndarray
    moves: np.ndarray
    accepted: np.ndarray
    energy: np.ndarray
    b: np.ndarray
    alpha: np.ndarray
    area: np.ndarray
    snapshots: dict[int, np.ndarray] = field(default_factory=dict)
    rejections: Counter = field(default_factory=Counter)
    wall_clock: float = 0.0

    @classmethod
    def allocate(cls, t_max: int) -> "ChainRecord":
        return cls(
            iterations=np.arange(1, t_max + 1),
            moves=np.zeros(t_max, dtype=np.int8),
            accepted=np.zeros(t_max, dtype=bool),
            energy=np.zeros(t_max),
            b=np.zeros(t_max),
            alpha=np.zeros(t_max),
            area=np.zeros(t_max),
        )

    def __len__(self) -> int:
        return int(self.iterations.shape[0])

    def move_names(self) -> list[str]:
        return [_MOVES[i].value for i in self.moves]

    def after_burn_in(self, burn_in: int) -> "ChainRecord":
        """Trace sans les `burn_in` premières itérations.

        Raises:
            ContractError: Si burn_in est négatif ou >= longueur de la chaîne
        """
        if burn_in < 0 or burn_in >= len(self):
            raise ContractError(f"burn-in {burn_in} must lie in [0, {len(self)})")
        kept = slice(burn_in, None)
        first = int(self.iterations[burn_in])
        return ChainRecord(
            iterations=self.iterations[kept],
            moves=self.moves[kept],
            accepted=self.accepted[kept],
            energy=self.energy[kept],
            b=self.b[kept],
            alpha=self.alpha[kept],
            area=self.area[kept],
            snapshots={t: pts for t, pts in self.snapshots.items() if t >= first},
            rejections=Counter(self.rejections),
            wall_clock=self.wall_clock,
        )

    def acceptance_rates(self) -> dict[str, float]:
        """Taux d'acceptation par mouvement (nan si jamais proposé).

        Example:
            >>> record.acceptance_rates()
            {'point': 0.21, 'translate': 0.08, 'b': 0.35, 'alpha': 0.6}
        """
        rates = {}
        for i, move in enumerate(_MOVES):
            proposed = self.moves == i
            count = int(np.count_nonzero(proposed))
            rates[move.value] = float(np.count_nonzero(self.accepted & proposed)) / count if count else float("nan")
        return rates

    def proposal_counts(self) -> dict[str, int]:
        return {move.value: int(np.count_nonzero(self.moves == i)) for i, move in enumerate(_MOVES)}


def write_chain_csv(path: Path, record: ChainRecord) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(CHAIN_HEADER)
        for t, move, acc, e, b, alpha, area in zip(
            record.iterations.tolist(),
            record.move_names(),
            record.accepted.tolist(),
            record.energy.tolist(),
            record.b.tolist(),
            record.alpha.tolist(),
            record.area.tolist(),
        ):
            writer.writerow([t, move, int(acc), repr(e), repr(b), repr(alpha), repr(area)])


def write_snapshots_csv(path: Path, record: ChainRecord) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(SNAPSHOT_HEADER)
        for t in sorted(record.snapshots):
            for index, (x1, x2) in enumerate(record.snapshots[t].tolist()):
                writer.writerow([t, index, repr(x1), repr(x2)])


def read_chain_csv(path: Path) -> ChainRecord:
    """Relit chain.csv (et snapshots.csv s'il est présent à côté).

    Raises:
        ContractError: Si l'en-tête est invalide ou si le fichier est vide
    """
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        if next(reader, None) != CHAIN_HEADER:
            raise ContractError(f"{path}: expected header {','.join(CHAIN_HEADER)}")
        rows = [row for row in reader if row]
    if not rows:
        raise ContractError(f"{path}: chain file has no rows")

    try:
        moves = np.array([_MOVE_INDEX[row[1]] for row in rows], dtype=np.int8)
    except KeyError as exc:
        raise ContractError(f"{path}: unknown move {exc.args[0]!r}") from exc
    values = np.array([[float(v) for v in row[3:]] for row in rows])
    record = ChainRecord(
        iterations=np.array([int(row[0]) for row in rows]),
        moves=moves,
        accepted=np.array([row[2] == "1" for row in rows]),
        energy=values[:, 0],
        b=values[:, 1],
        alpha=values[:, 2],
        area=values[:, 3],
    )

    snapshots_path = path.with_name("snapshots.csv")
    if snapshots_path.exists():
        record.snapshots = read_snapshots_csv(snapshots_path)
    return record


def read_snapshots_csv(path: Path) -> dict[int, np.ndarray]:
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        if next(reader, None) != SNAPSHOT_HEADER:
            raise ContractError(f"{path}: expected header {','.join(SNAPSHOT_HEADER)}")
        blocks: dict[int, list[tuple[float, float]]] = {}
        for row in reader:
            if row:
                blocks.setdefault(int(row[0]), []).append((float(row[2]), float(row[3])))
    return {t: np.array(points) for t, points in blocks.items()}
