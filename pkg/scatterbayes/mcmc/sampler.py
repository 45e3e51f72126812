"""Chaîne de Metropolis-Hastings sur θ = (Q, α, b).

Une itération : choisir un mouvement selon les poids, construire le
candidat, rejeter d'emblée un candidat hors support ou d'α-shape invalide,
sinon accepter avec probabilité min(1, exp(E(θ) − E(θ′) + log_hastings)).
Un échec du solveur direct sur le candidat compte comme un rejet.
"""

import logging
import math
import time
from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional

import numpy as np

from scatterbayes.bayes.prior import IMPOSSIBLE, PriorSpec, Theta
from scatterbayes.core.errors import DegenerateGeometryError, InitializationError, SolverError
from scatterbayes.geometry.cloud import PointCloud
from scatterbayes.geometry.triangulation import circumradius_range, delaunay
from scatterbayes.mcmc.kernel import propose_alpha, propose_b, propose_point_move, propose_translate
from scatterbayes.mcmc.record import ChainRecord
from scatterbayes.mcmc.state import ChainState, KernelConfig, MoveKind, Target

if TYPE_CHECKING:
    from scatterbayes.monitoring.metrics import SamplerMetrics

logger = logging.getLogger(__name__)

_MOVES = MoveKind.ordered()

# Période des logs de progression (itérations).
PROGRESS_EVERY = 10_000


@dataclass(frozen=True)
class StepResult:
    """Issue d'une itération.

    Attributes:
        state: État après l'itération (inchangé si rejet)
        move: Mouvement proposé
        accepted: Le candidat a été installé
        reason: Motif d'un rejet sans test d'acceptation (None sinon)
    """

    state: ChainState
    move: MoveKind
    accepted: bool
    reason: Optional[str] = None

    @property
    def outcome(self) -> str:
        if self.accepted:
            return "accepted"
        return "rejected" if self.reason is None else "invalid"


def accept_probability(energy_old: float, energy_new: float, log_hastings: float = 0.0) -> float:
    """min(1, exp(E_old − E_new + log_hastings)).

    Example:
        >>> accept_probability(1.0, 1.0 + math.log(2.0))
        0.5
    """
    exponent = energy_old - energy_new + log_hastings
    if exponent >= 0.0:
        return 1.0
    return math.exp(exponent)


def _propose(
    move: MoveKind,
    state: ChainState,
    rng: np.random.Generator,
    prior: PriorSpec,
    config: KernelConfig,
) -> tuple[Theta, float]:
    if move is MoveKind.POINT:
        return propose_point_move(state, rng)
    if move is MoveKind.TRANSLATE:
        return propose_translate(state, rng)
    if move is MoveKind.B:
        return propose_b(state, rng, prior, config.mode)
    return propose_alpha(state, rng, config.mode)


def mh_step(
    state: ChainState,
    target: Target,
    prior: PriorSpec,
    config: KernelConfig,
    rng: np.random.Generator,
    metrics: Optional["SamplerMetrics"] = None,
) -> StepResult:
    """Une itération de Metropolis-Hastings.

    Le mouvement b réutilise toute la géométrie de l'état courant, le
    mouvement α sa triangulation.

    Args:
        state: État courant (valide)
        target: Loi cible (Posterior, ou toute cible exposant shape/log_prior/energy)
        prior: Prior (loi de proposition de b)
        config: Configuration du noyau
        rng: Générateur aléatoire de la chaîne
        metrics: Métriques Prometheus (optionnel)

    Returns:
        StepResult avec le nouvel état
    """
    move = _MOVES[int(rng.choice(len(_MOVES), p=config.weights))]
    result = _step(move, state, target, prior, config, rng)
    if metrics is not None:
        metrics.record_proposal(move.value, result.outcome)
        if result.accepted:
            metrics.set_energy(result.state.energy)
    return result


def _step(
    move: MoveKind,
    state: ChainState,
    target: Target,
    prior: PriorSpec,
    config: KernelConfig,
    rng: np.random.Generator,
) -> StepResult:
    def reject(reason: str) -> StepResult:
        return StepResult(state, move, False, reason)

    try:
        candidate, log_hastings = _propose(move, state, rng, prior, config)
    except DegenerateGeometryError:
        return reject("degenerate")
    if log_hastings == IMPOSSIBLE:
        return reject("irreversible")
    if target.log_prior(candidate) == IMPOSSIBLE:
        return reject("prior")

    if move is MoveKind.B:
        shape = state.shape
    elif move is MoveKind.ALPHA:
        shape = target.shape(candidate.cloud, state.shape.triangulation)
    else:
        shape = target.shape(candidate.cloud)
    if not shape.valid:
        return reject(shape.reason or "invalid")

    try:
        energy = target.energy(candidate, shape)
    except SolverError as exc:
        logger.warning(
            "forward solve failed on candidate, rejecting",
            extra={"move": move.value, "error": str(exc), "b": candidate.b_value, "alpha": candidate.alpha},
        )
        return reject("solver")
    if not np.isfinite(energy):
        return reject("energy")

    probability = accept_probability(state.energy, energy, log_hastings)
    if probability < 1.0 and rng.random() >= probability:
        return StepResult(state, move, False)
    return StepResult(ChainState(candidate, shape, float(energy)), move, True)


def draw_initial_state(
    target: Target,
    prior: PriorSpec,
    cloud_size: int,
    rng: np.random.Generator,
    attempts: int = 10_000,
) -> ChainState:
    """Tire un état initial valide.

    Q est uniforme sur G, α uniforme sur (r_min, r_max) de sa
    triangulation, b suit son prior. Les tirages invalides sont recommencés.

    Raises:
        InitializationError: Si aucun tirage n'est valide après `attempts` essais
    """
    xmin, ymin, xmax, ymax = prior.bounds
    for attempt in range(1, attempts + 1):
        points = rng.uniform((xmin, ymin), (xmax, ymax), size=(cloud_size, 2))
        try:
            tri = delaunay(points)
        except DegenerateGeometryError:
            continue
        r_min, r_max = circumradius_range(tri)
        alpha = float(rng.uniform(r_min, r_max))
        b_value = prior.sample_b(rng)
        if alpha > prior.alpha_max:
            continue
        try:
            theta = Theta(PointCloud(points, alpha), b_value)
            state = ChainState.evaluate(theta, target, tri)
        except (DegenerateGeometryError, SolverError):
            continue
        if state.valid:
            logger.info("initial state drawn", extra={"attempts": attempt, "energy": state.energy})
            return state
    raise InitializationError(f"no valid initial state in {attempts} attempts")


def run_chain(
    init: ChainState,
    target: Target,
    prior: PriorSpec,
    config: KernelConfig,
    rng: Optional[np.random.Generator] = None,
    metrics: Optional["SamplerMetrics"] = None,
) -> ChainRecord:
    """Exécute t_max itérations de Metropolis-Hastings.

    Args:
        init: État initial valide
        target: Loi cible
        prior: Prior
        config: Configuration du noyau
        rng: Générateur (défaut: default_rng(config.seed))
        metrics: Métriques Prometheus (optionnel)

    Returns:
        ChainRecord de longueur t_max, avec un instantané du nuage à
        l'itération 0 puis toutes les `snapshot_every` itérations

    Raises:
        InvalidStateError: Si l'état initial est invalide

    Example:
        >>> record = run_chain(init, posterior, prior, KernelConfig(t_max=10))
        >>> len(record)
        10
    """
    state = init.require_valid()
    if rng is None:
        rng = np.random.default_rng(config.seed)

    record = ChainRecord.allocate(config.t_max)
    record.snapshots[0] = state.points.copy()
    if metrics is not None:
        metrics.set_energy(state.energy)

    started = time.perf_counter()
    for i in range(config.t_max):
        step = mh_step(state, target, prior, config, rng, metrics)
        state = step.state
        if step.reason is not None:
            record.rejections[step.reason] += 1
            logger.debug("candidate rejected", extra={"iter": i + 1, "move": step.move.value, "reason": step.reason})

        record.moves[i] = _MOVES.index(step.move)
        record.accepted[i] = step.accepted
        record.energy[i] = state.energy
        record.b[i] = state.b_value
        record.alpha[i] = state.alpha
        record.area[i] = state.area

        t = i + 1
        if t % config.snapshot_every == 0:
            record.snapshots[t] = state.points.copy()
        if t % PROGRESS_EVERY == 0:
            logger.info(
                "chain progress",
                extra={"iter": t, "energy": round(state.energy, 4), "area": round(state.area, 6),
                       "b": round(state.b_value, 4)},
            )

    record.wall_clock = time.perf_counter() - started
    logger.info(
        "chain finished",
        extra={"t_max": config.t_max, "seconds": round(record.wall_clock, 2), **record.acceptance_rates()},
    )
    return record
