"""Classe principale Experiment.

Ce module relie la configuration aux couches de calcul : synthèse des
données, chaîne MCMC, résumé a posteriori et comparaison des solveurs.
Les commandes de la CLI ne font qu'appeler ces méthodes.
"""

import json
import logging
import time
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Any, Optional, Sequence

import numpy as np

from scatterbayes.bayes.design import ObservationDesign
from scatterbayes.bayes.observations import Observations, read_observations
from scatterbayes.bayes.posterior import ForwardModel, Posterior
from scatterbayes.bayes.prior import PriorSpec
from scatterbayes.bayes.synthesis import build_design, inference_grid, synthesize, true_boundary
from scatterbayes.core.config import ExperimentConfig
from scatterbayes.core.errors import SolverError
from scatterbayes.executors.manager import ExecutorKind, ExecutorManager
from scatterbayes.forward.direct import solve_direct
from scatterbayes.forward.fields import Grid2D, ScattererField, relative_l2
from scatterbayes.forward.incident import incident_plane_wave
from scatterbayes.forward.quadrature import quadrature_weights, resolve_c1
from scatterbayes.forward.reference import solve_reference
from scatterbayes.geometry.io import write_points_csv
from scatterbayes.geometry.raster import polygon_area, rasterize
from scatterbayes.geometry.shapes import kite
from scatterbayes.mcmc.record import ChainRecord, read_chain_csv, write_chain_csv, write_snapshots_csv
from scatterbayes.mcmc.sampler import draw_initial_state, run_chain
from scatterbayes.mcmc.state import KernelConfig
from scatterbayes.mcmc.summary import (
    DEFAULT_BINS,
    ChainSummary,
    summarize,
    write_histogram_csv,
    write_summary_table,
    write_trace_csv,
)
from scatterbayes.monitoring.metrics import SamplerMetrics

logger = logging.getLogger(__name__)

RUN_LOG = "run_log.json"
BENCHMARK_SCALES = (0.0, 0.04, 0.07, 0.1, 0.13, 0.16)
AGREEMENT_TOL = 1e-6
# Borne haute de l'histogramme de b : quantile du prior Gamma.
B_HISTOGRAM_QUANTILE = 0.999


@dataclass(frozen=True)
class BenchmarkRow:
    """Une ligne du banc d'essai des solveurs.

    Attributes:
        scale: Facteur d'échelle du cerf-volant
        support_fraction: Fraction des noeuds de la grille dans le support
        t_direct: Meilleur temps du solveur direct (s)
        t_reference: Meilleur temps du solveur FFT + GMRES (s)
        agreement: Écart L² relatif entre les deux champs
    """

    scale: float
    support_fraction: float
    t_direct: float
    t_reference: float
    agreement: float


class Experiment:
    """Expérience d'inversion bayésienne décrite par une configuration.

    Attributes:
        config: Configuration validée
        grid: Grille d'inférence
        prior: Prior
        kernel: Configuration du noyau MCMC
        executor_manager: Gestionnaire d'executors

    Example:
        >>> exp = Experiment(ExperimentConfig.from_preset("example1"))
        >>> obs = exp.synthesize()
        >>> log = exp.run(obs, Path("runs/seed_0"))
        >>> log["acceptance_rates"]["b"]
        0.41
    """

    def __init__(self, config: ExperimentConfig, executor_manager: Optional[ExecutorManager] = None):
        self.config = config
        self.grid: Grid2D = inference_grid(config)
        self.prior = PriorSpec.from_config(config)
        self.kernel = KernelConfig.from_settings(config.kernel)
        self.executor_manager = executor_manager or ExecutorManager()

    @cached_property
    def boundary(self) -> np.ndarray:
        """Polyligne fermée de l'obstacle vrai."""
        return true_boundary(self.config)

    @cached_property
    def design(self) -> ObservationDesign:
        return build_design(self.config, self.boundary)

    @property
    def true_area(self) -> float:
        return polygon_area(self.boundary)

    def synthesize(self, noise: bool = True) -> Observations:
        """Données synthétiques sur la grille fine, par le solveur de référence."""
        solver = self.config.solver
        return synthesize(
            self.boundary,
            self.design,
            self.grid.refined(self.config.synth_grid.refinement),
            seed=self.config.design.data_seed,
            b_value=self.config.scatterer.b_true,
            noise=noise,
            c1=solver.c1,
            rtol=min(solver.gmres_rtol, 1e-10),
            restart=solver.gmres_restart,
            max_iterations=solver.gmres_maxiter,
        )

    def posterior(self, observations: Observations, metrics: Optional[SamplerMetrics] = None) -> Posterior:
        """Posterior des données pour la grille et le design de l'expérience.

        Raises:
            ContractError: Si les données ne correspondent pas au design
        """
        solver = self.config.solver
        executor = None
        if solver.parallel_wavenumbers:
            executor = self.executor_manager.get_executor(ExecutorKind.THREAD)
        model = ForwardModel(
            self.grid,
            self.design,
            c1=solver.c1,
            spline_density=self.config.kernel.spline_density,
            residual_tol=solver.residual_tol,
            rcond_min=solver.rcond_min,
            executor=executor,
            metrics=metrics,
        )
        return Posterior(model, observations, self.prior)

    def sample(self, observations: Observations, metrics: Optional[SamplerMetrics] = None) -> ChainRecord:
        """Tire l'état initial puis exécute la chaîne (graine kernel.seed)."""
        posterior = self.posterior(observations, metrics)
        rng = np.random.default_rng(self.kernel.seed)
        init = draw_initial_state(
            posterior, self.prior, self.config.kernel.cloud_size, rng, attempts=self.kernel.init_attempts
        )
        return run_chain(init, posterior, self.prior, self.kernel, rng=rng, metrics=metrics)

    def run(self, observations: Observations, out_dir: Path, metrics: Optional[SamplerMetrics] = None) -> dict[str, Any]:
        """Exécute une chaîne et écrit ses fichiers dans `out_dir`.

        Fichiers : chain.csv, snapshots.csv, run_log.json, metrics.prom.

        Returns:
            Journal de la chaîne (taux d'acceptation, durée, valeurs vraies)
        """
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        metrics = metrics or SamplerMetrics()

        record = self.sample(observations, metrics)
        write_chain_csv(out_dir / "chain.csv", record)
        write_snapshots_csv(out_dir / "snapshots.csv", record)
        metrics.write_textfile(out_dir / "metrics.prom")

        run_log = {
            "seed": self.kernel.seed,
            "t_max": self.kernel.t_max,
            "mode": self.kernel.mode.value,
            "weights": list(self.kernel.weights),
            "acceptance_rates": record.acceptance_rates(),
            "proposals": record.proposal_counts(),
            "rejections": dict(sorted(record.rejections.items())),
            "wall_clock_seconds": record.wall_clock,
            "true_area": self.true_area,
            "b_true": observations.metadata.get("b_true", self.config.scatterer.b_true),
        }
        with open(out_dir / RUN_LOG, "w", encoding="utf-8") as f:
            json.dump(run_log, f, indent=2, sort_keys=True, default=_json_default)
            f.write("\n")
        logger.info("run written", extra={"out": str(out_dir), "seed": self.kernel.seed})
        return run_log

    @property
    def area_range(self) -> tuple[float, float]:
        """Bornes de l'histogramme de l'aire : [0, aire du domaine G]."""
        xmin, ymin, xmax, ymax = self.grid.bounds
        return (0.0, (xmax - xmin) * (ymax - ymin))

    @property
    def b_range(self) -> tuple[float, float]:
        """Bornes de l'histogramme de b : [0, quantile 0.999 du prior]."""
        return (0.0, float(self.prior.b_distribution.ppf(B_HISTOGRAM_QUANTILE)))

    def summarize(self, chain_dir: Path, out_dir: Path, burn_in: int, bins: int = DEFAULT_BINS) -> ChainSummary:
        """Résume une chaîne écrite par `run` et écrit les CSV de figures.

        Fichiers : summary.csv, area_histogram.csv, b_histogram.csv,
        trace.csv et map_cloud.csv (instantané le plus proche du MAP).

        Raises:
            ContractError: Si burn_in >= longueur de la chaîne
        """
        chain_dir, out_dir = Path(chain_dir), Path(out_dir)
        record = read_chain_csv(chain_dir / "chain.csv")
        summary = summarize(record, burn_in, self.area_range, self.b_range, bins=bins)

        true_area, true_b = self.true_area, self.config.scatterer.b_true
        log_path = chain_dir / RUN_LOG
        if log_path.exists():
            with open(log_path, encoding="utf-8") as f:
                run_log = json.load(f)
            true_area = run_log.get("true_area", true_area)
            true_b = run_log.get("b_true", true_b)

        out_dir.mkdir(parents=True, exist_ok=True)
        write_summary_table(out_dir / "summary.csv", summary, true_area, true_b)
        write_histogram_csv(out_dir / "area_histogram.csv", summary.area_histogram)
        write_histogram_csv(out_dir / "b_histogram.csv", summary.b_histogram)
        write_trace_csv(out_dir / "trace.csv", summary)
        if summary.map_snapshot is not None:
            write_points_csv(out_dir / "map_cloud.csv", summary.map_snapshot[1])
        return summary

    def benchmark(
        self,
        scales: Sequence[float] = BENCHMARK_SCALES,
        repeats: int = 3,
        wavenumber: Optional[float] = None,
    ) -> list[BenchmarkRow]:
        """Compare les deux solveurs sur des cerfs-volants de taille croissante.

        L'accord des champs est vérifié avant toute mesure de temps.

        Raises:
            SolverError: Si les solveurs diffèrent de plus de 1e-6 (L² relatif)
        """
        grid = self.grid
        k = wavenumber or self.config.design.k_high
        c1 = resolve_c1(self.config.solver.c1)
        weights = quadrature_weights(k, grid.h, grid.N, c1)
        incident = incident_plane_wave((1.0, 0.0), k, grid)
        b_value = self.config.scatterer.b_true

        rows = []
        for scale in scales:
            if scale > 0.0:
                field = rasterize(kite(self.config.scatterer.curve_samples, scale), grid, b_value)
            else:
                field = ScattererField.zeros(grid)

            def direct() -> np.ndarray:
                return solve_direct(field, k, incident, weights=weights).values

            def reference() -> np.ndarray:
                return solve_reference(field, k, incident, weights=weights, rtol=1e-10,
                                       restart=self.config.solver.gmres_restart,
                                       max_iterations=self.config.solver.gmres_maxiter).values

            agreement = relative_l2(direct(), reference())
            if agreement > AGREEMENT_TOL:
                raise SolverError(
                    f"solvers disagree on the kite of scale {scale}: relative L2 {agreement:.3e} > {AGREEMENT_TOL:.0e}"
                )
            row = BenchmarkRow(
                scale=float(scale),
                support_fraction=field.support_fraction,
                t_direct=_best_time(direct, repeats),
                t_reference=_best_time(reference, repeats),
                agreement=agreement,
            )
            logger.info("benchmark row", extra={**row.__dict__})
            rows.append(row)
        return rows

    def shutdown(self) -> None:
        self.executor_manager.shutdown_all()


def _best_time(function, repeats: int) -> float:
    best = float("inf")
    for _ in range(max(1, repeats)):
        started = time.perf_counter()
        function()
        best = min(best, time.perf_counter() - started)
    return best


def _json_default(value: Any) -> Any:
    if isinstance(value, np.generic):
        return value.item()
    raise TypeError(f"{type(value).__name__} is not JSON serializable")


def run_seed(config_data: dict[str, Any], observations_path: str, seed: int, out_dir: str) -> dict[str, Any]:
    """Exécute une chaîne pour une graine (tâche du ProcessExecutor).

    Les arguments sont des types simples : la tâche est picklable.
    """
    config = ExperimentConfig.from_dict(config_data).override(**{"kernel.seed": seed})
    experiment = Experiment(config)
    try:
        return experiment.run(read_observations(Path(observations_path)), Path(out_dir))
    finally:
        experiment.shutdown()
