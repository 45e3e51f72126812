"""Noyau de transition : les quatre propositions.

Les mouvements du nuage (point, translation) et de α sont construits à
partir de la géométrie propre de l'état (distances entre points, rayons
circonscrits) : mettre le nuage à l'échelle s met les propositions à la
même échelle, pour le même flux aléatoire.

Chaque proposition renvoie (candidat, log_hastings) où log_hastings vaut
log q(θ|θ') − log q(θ'|θ).
"""

import numpy as np

from scatterbayes.bayes.prior import IMPOSSIBLE, PriorSpec, Theta
from scatterbayes.geometry.cloud import mean_pairwise_distance
from scatterbayes.mcmc.state import AcceptanceMode, ChainState

# Tolérance relative du test de réversibilité du mouvement α.
REVERSIBILITY_RTOL = 1e-12


def propose_point_move(state: ChainState, rng: np.random.Generator) -> tuple[Theta, float]:
    """Déplace un point p_k tiré uniformément.

    L'incrément a des coordonnées indépendantes uniformes sur (−d̄₋ₖ, d̄₋ₖ),
    d̄₋ₖ étant la moyenne des distances entre les autres points. d̄₋ₖ ne
    dépend pas de p_k : la proposition est symétrique.

    Returns:
        (candidat, 0.0)

    Raises:
        DegenerateGeometryError: Si le point déplacé coïncide avec un autre
    """
    points = state.points
    k = int(rng.integers(points.shape[0]))
    spread = mean_pairwise_distance(points, exclude=k)
    step = rng.uniform(-spread, spread, size=2)

    moved = points.copy()
    moved[k] += step
    return state.theta.with_cloud(state.theta.cloud.with_points(moved)), 0.0


def propose_translate(state: ChainState, rng: np.random.Generator) -> tuple[Theta, float]:
    """Translate tout le nuage d'un même incrément u ~ U(−d̄, d̄)²."""
    spread = mean_pairwise_distance(state.points)
    step = rng.uniform(-spread, spread, size=2)
    return state.theta.with_cloud(state.theta.cloud.translated(step)), 0.0


def propose_b(
    state: ChainState,
    rng: np.random.Generator,
    prior: PriorSpec,
    mode: AcceptanceMode = AcceptanceMode.EXACT_MH,
) -> tuple[Theta, float]:
    """Tire b′ selon son prior, indépendamment de b.

    En mode exact, log_hastings = log π(b) − log π(b′) : combiné au terme
    −log π(b) de l'énergie, l'exposant d'acceptation se réduit au rapport
    des vraisemblances.

    Example:
        >>> candidate, lh = propose_b(state, rng, prior)
        >>> candidate.b_value > 0
        True
    """
    b_new = prior.sample_b(rng)
    log_hastings = 0.0
    if mode is AcceptanceMode.EXACT_MH:
        log_hastings = prior.log_prior_b(state.b_value) - prior.log_prior_b(b_new)
    return state.theta.with_b(b_new), log_hastings


def propose_alpha(
    state: ChainState,
    rng: np.random.Generator,
    mode: AcceptanceMode = AcceptanceMode.EXACT_MH,
) -> tuple[Theta, float]:
    """α′ = α/2 + U/2 avec U ~ U(r_min, r_max) de la triangulation courante.

    Q ne bouge pas : r_min et r_max sont communs aux mouvements direct et
    inverse. Les deux densités conditionnelles valent 2/(r_max − r_min) sur
    leur support ; en mode exact la correction se réduit à l'indicatrice
    de réversibilité, −inf si 2α − α′ sort de [r_min, r_max]. Si
    r_min = r_max, α′ est déterministe.

    Returns:
        (candidat, log_hastings) avec log_hastings ∈ {0, −inf}
    """
    r_min, r_max = state.shape.r_min, state.shape.r_max
    alpha = state.alpha
    alpha_new = 0.5 * alpha + 0.5 * rng.uniform(r_min, r_max)

    log_hastings = 0.0
    if mode is AcceptanceMode.EXACT_MH:
        reverse = 2.0 * alpha - alpha_new
        slack = REVERSIBILITY_RTOL * max(r_max, abs(alpha))
        if reverse < r_min - slack or reverse > r_max + slack:
            log_hastings = IMPOSSIBLE
    return state.theta.with_cloud(state.theta.cloud.with_alpha(alpha_new)), log_hastings
