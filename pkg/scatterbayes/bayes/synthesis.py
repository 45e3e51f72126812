"""Génération des données synthétiques.

Les données sont calculées par le solveur de référence (FFT + GMRES) sur
une grille plus fine que la grille d'inférence, puis lues aux noeuds
d'observation communs aux deux grilles et bruitées.
"""

import logging
import time
from pathlib import Path
from typing import Optional

import numpy as np

from scatterbayes.bayes.design import ObservationDesign
from scatterbayes.bayes.observations import Observations
from scatterbayes.core.config import ExperimentConfig
from scatterbayes.core.errors import ContractError, InvalidGeometryError
from scatterbayes.forward.fields import Grid2D
from scatterbayes.forward.incident import incident_plane_wave, plane_wave_at
from scatterbayes.forward.quadrature import resolve_c1
from scatterbayes.forward.reference import solve_reference
from scatterbayes.geometry.cloud import PointCloud
from scatterbayes.geometry.hull import build_shape
from scatterbayes.geometry.io import read_points_csv
from scatterbayes.geometry.raster import rasterize
from scatterbayes.geometry.shapes import named_curve

logger = logging.getLogger(__name__)

REFERENCE_SOLVER = "reference-fft-gmres"


def inference_grid(config: ExperimentConfig) -> Grid2D:
    return Grid2D(N=config.grid.N, h=config.grid.h, origin=config.grid.origin)


def true_boundary(config: ExperimentConfig) -> np.ndarray:
    """Polyligne fermée de l'obstacle vrai (courbe nommée ou nuage + α).

    Raises:
        InvalidGeometryError: Si le nuage vrai n'a pas d'α-shape valide
    """
    settings = config.scatterer
    if settings.cloud_file is None:
        return named_curve(settings.curve, settings.curve_samples, settings.scatterer_scale)
    cloud = PointCloud(read_points_csv(Path(settings.cloud_file)), settings.cloud_alpha)
    shape = build_shape(cloud, density=config.kernel.spline_density)
    if not shape.valid:
        raise InvalidGeometryError(f"true point cloud has no valid hull ({shape.reason})")
    return shape.boundary.samples


def build_design(config: ExperimentConfig, boundary: Optional[np.ndarray] = None) -> ObservationDesign:
    """Design de l'expérience ; les noeuds évitent la boîte de l'obstacle vrai."""
    if boundary is None:
        boundary = true_boundary(config)
    exclusion = (*boundary.min(axis=0), *boundary.max(axis=0))
    return ObservationDesign.from_settings(config.design, inference_grid(config), exclusion)


def fine_nodes(design: ObservationDesign, synth_grid: Grid2D) -> np.ndarray:
    """Indices, sur la grille fine, des noeuds d'observation.

    Raises:
        ContractError: Si un point d'observation n'est pas un noeud de synth_grid
    """
    ratio = design.grid.h / synth_grid.h
    factor = int(round(ratio))
    if factor < 1 or abs(ratio - factor) > 1e-9:
        raise ContractError(f"synthesis grid spacing {synth_grid.h} does not divide {design.grid.h}")
    nodes = design.nodes * factor
    if np.any(nodes > synth_grid.N):
        raise ContractError("observation nodes fall outside the synthesis grid")
    if not np.allclose(synth_grid.node_coordinates(nodes), design.points, rtol=0.0, atol=1e-9 * synth_grid.h):
        raise ContractError("observation points are not nodes of the synthesis grid")
    return nodes


def synthesize(
    boundary: np.ndarray,
    design: ObservationDesign,
    synth_grid: Grid2D,
    seed: int,
    b_value: float,
    noise: bool = True,
    c1: Optional[float] = None,
    rtol: float = 1e-10,
    restart: int = 30,
    max_iterations: int = 500,
) -> Observations:
    """Données d = F_ref(θ_vrai) + η aux noeuds d'observation.

    Args:
        boundary: Polyligne fermée de l'obstacle vrai
        design: Design d'observation (grille d'inférence)
        synth_grid: Grille fine de synthèse
        seed: Graine du bruit
        b_value: Contraste vrai
        noise: Ajouter le bruit gaussien (False = champ exact)
        c1: Coefficient de correction (fixture si None)
        rtol: Résidu relatif de GMRES
        restart: Redémarrage de GMRES
        max_iterations: Itérations GMRES maximum

    Returns:
        Observations avec leur provenance

    Raises:
        ContractError: Si les noeuds d'observation ne sont pas communs aux grilles
    """
    nodes = fine_nodes(design, synth_grid)
    field = rasterize(boundary, synth_grid, b_value)
    c1 = resolve_c1(c1)

    clean = np.empty((design.n_directions, design.n_points), dtype=complex)
    started = time.perf_counter()
    for k, _, members in design.groups():
        incident = incident_plane_wave(design.directions[members], k, synth_grid)
        total = solve_reference(field, k, incident, c1=c1, rtol=rtol, restart=restart, max_iterations=max_iterations)
        clean[members] = total.at(nodes)

    data = clean
    if noise:
        rng = np.random.default_rng(seed)
        scale = np.asarray(design.sigmas, dtype=float)[:, None]
        real = rng.standard_normal(clean.shape)
        imag = rng.standard_normal(clean.shape)
        data = clean + scale * (real + 1j * imag)

    scattered = clean - incident_at(design)
    snr = float(np.sqrt(np.mean(np.abs(scattered) ** 2)) / max(float(np.mean(design.sigmas)), 1e-300))
    logger.info(
        "synthetic data generated",
        extra={"seed": seed, "support": int(field.support.size), "snr": round(snr, 2),
               "seconds": round(time.perf_counter() - started, 3)},
    )
    return Observations.from_design(
        design,
        data,
        seed=int(seed),
        noise=bool(noise),
        solver=REFERENCE_SOLVER,
        gmres_rtol=rtol,
        c1=c1,
        b_true=float(b_value),
        snr=snr,
        grid={"N": design.grid.N, "h": design.grid.h, "origin": list(design.grid.origin)},
        synth_grid={"N": synth_grid.N, "h": synth_grid.h, "origin": list(synth_grid.origin)},
    )


def incident_at(design: ObservationDesign) -> np.ndarray:
    """uⁱ aux noeuds d'observation, tableau (D, M)."""
    out = np.empty((design.n_directions, design.n_points), dtype=complex)
    for k, _, members in design.groups():
        out[members] = plane_wave_at(design.points, design.directions[members], k)
    return out


def synthesize_from_config(config: ExperimentConfig, noise: bool = True) -> Observations:
    """Synthèse complète à partir de la configuration."""
    boundary = true_boundary(config)
    design = build_design(config, boundary)
    synth_grid = design.grid.refined(config.synth_grid.refinement)
    return synthesize(
        boundary,
        design,
        synth_grid,
        seed=config.design.data_seed,
        b_value=config.scatterer.b_true,
        noise=noise,
        c1=config.solver.c1,
        rtol=min(config.solver.gmres_rtol, 1e-10),
        restart=config.solver.gmres_restart,
        max_iterations=config.solver.gmres_maxiter,
    )
