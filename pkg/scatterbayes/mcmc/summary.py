"""Estimateurs a posteriori d'une chaîne.

Moyenne conditionnelle (CM) de l'aire et de b sur la trace après chauffe,
maximum a posteriori (MAP) à l'énergie minimale enregistrée, histogrammes
et trace de −Energy. Les histogrammes ont des bornes fixes, communes à
toutes les chaînes d'une expérience.
"""

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from scatterbayes.core.errors import ContractError
from scatterbayes.mcmc.record import ChainRecord

DEFAULT_BINS = 40


@dataclass(frozen=True)
class Histogram:
    counts: np.ndarray
    edges: np.ndarray

    @classmethod
    def fixed(cls, values: np.ndarray, value_range: tuple[float, float], bins: int) -> "Histogram":
        """Histogramme à bornes fixes ; les valeurs hors plage vont dans la classe extrême.

        Raises:
            ContractError: Si la plage est vide ou bins < 1
        """
        low, high = float(value_range[0]), float(value_range[1])
        if not (np.isfinite(low) and np.isfinite(high) and low < high) or bins < 1:
            raise ContractError(f"histogram needs low < high and bins >= 1, got {value_range}, {bins}")
        edges = np.linspace(low, high, bins + 1)
        counts, _ = np.histogram(np.clip(values, low, high), bins=edges)
        return cls(counts, edges)


@dataclass(frozen=True)
class ChainSummary:
    """Résumé d'une chaîne.

    Attributes:
        burn_in: Itérations écartées
        samples: Nombre d'itérations conservées
        cm_area: Moyenne conditionnelle de l'aire
        cm_b: Moyenne conditionnelle de b
        map_iteration: Itération de l'énergie minimale (sur toute la chaîne)
        map_energy: Énergie minimale
        map_area: Aire au MAP
        map_b: b au MAP
        map_alpha: α au MAP
        area_histogram: Histogramme de l'aire après chauffe
        b_histogram: Histogramme de b après chauffe
        trace_iterations: Itérations de la trace après chauffe
        trace: −Energy après chauffe
        acceptance_rates: Taux d'acceptation par mouvement (chaîne entière)
        map_snapshot: (itération, nuage) de l'instantané le plus proche du MAP
    """

    burn_in: int
    samples: int
    cm_area: float
    cm_b: float
    map_iteration: int
    map_energy: float
    map_area: float
    map_b: float
    map_alpha: float
    area_histogram: Histogram
    b_histogram: Histogram
    trace_iterations: np.ndarray
    trace: np.ndarray
    acceptance_rates: dict[str, float]
    map_snapshot: Optional[tuple[int, np.ndarray]] = None


def nearest_snapshot(record: ChainRecord, iteration: int) -> Optional[tuple[int, np.ndarray]]:
    if not record.snapshots:
        return None
    t = min(record.snapshots, key=lambda s: (abs(s - iteration), s))
    return t, record.snapshots[t]


def summarize(
    record: ChainRecord,
    burn_in: int,
    area_range: tuple[float, float],
    b_range: tuple[float, float],
    bins: int = DEFAULT_BINS,
) -> ChainSummary:
    """Calcule CM, MAP, histogrammes et trace.

    Args:
        record: Trace complète
        burn_in: Itérations à écarter pour CM, histogrammes et trace
        area_range: Bornes de l'histogramme de l'aire
        b_range: Bornes de l'histogramme de b
        bins: Nombre de classes des histogrammes

    Returns:
        ChainSummary

    Raises:
        ContractError: Si burn_in >= longueur de la chaîne ou si une plage est vide

    Example:
        >>> summary = summarize(record, 20_000, area_range=(0.0, 0.64), b_range=(0.0, 185.0))
        >>> summary.map_energy <= record.energy.min()
        True
    """
    kept = record.after_burn_in(burn_in)

    best = int(np.argmin(record.energy))
    map_iteration = int(record.iterations[best])

    return ChainSummary(
        burn_in=burn_in,
        samples=len(kept),
        cm_area=float(np.mean(kept.area)),
        cm_b=float(np.mean(kept.b)),
        map_iteration=map_iteration,
        map_energy=float(record.energy[best]),
        map_area=float(record.area[best]),
        map_b=float(record.b[best]),
        map_alpha=float(record.alpha[best]),
        area_histogram=Histogram.fixed(kept.area, area_range, bins),
        b_histogram=Histogram.fixed(kept.b, b_range, bins),
        trace_iterations=kept.iterations,
        trace=-kept.energy,
        acceptance_rates=record.acceptance_rates(),
        map_snapshot=nearest_snapshot(record, map_iteration),
    )


def write_summary_table(
    path: Path,
    summary: ChainSummary,
    true_area: Optional[float] = None,
    true_b: Optional[float] = None,
) -> None:
    """Table `quantity,true_value,conditional_mean,map` (vide si valeur vraie inconnue)."""

    def cell(value: Optional[float]) -> str:
        return "" if value is None else repr(float(value))

    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(["quantity", "true_value", "conditional_mean", "map"])
        writer.writerow(["area", cell(true_area), cell(summary.cm_area), cell(summary.map_area)])
        writer.writerow(["b", cell(true_b), cell(summary.cm_b), cell(summary.map_b)])


def write_histogram_csv(path: Path, histogram: Histogram) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(["bin_left", "bin_right", "count"])
        for left, right, count in zip(histogram.edges[:-1], histogram.edges[1:], histogram.counts):
            writer.writerow([repr(float(left)), repr(float(right)), int(count)])


def write_trace_csv(path: Path, summary: ChainSummary) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(["iter", "neg_energy"])
        for t, value in zip(summary.trace_iterations.tolist(), summary.trace.tolist()):
            writer.writerow([t, repr(value)])
