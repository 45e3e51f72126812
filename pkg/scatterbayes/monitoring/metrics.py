"""Module de métriques Prometheus.

Ce module définit les métriques d'une chaîne MCMC. Chaque instance a son
propre registre : plusieurs chaînes dans un même processus (tests, graines
successives) ne se marchent pas dessus.
"""

import logging
from pathlib import Path
from typing import Optional

from prometheus_client import CollectorRegistry, Counter, Gauge, Histogram, start_http_server, write_to_textfile

logger = logging.getLogger(__name__)

SOLVE_BUCKETS = (0.001, 0.005, 0.01, 0.025, 0.05, 0.1, 0.25, 0.5, 1.0, 2.5, 5.0, 10.0)


class SamplerMetrics:
    """Métriques Prometheus du sampler.

    Attributes:
        registry: Registre propre à l'instance
        proposals_total: Counter - Propositions par type de mouvement et issue
        forward_solve_seconds: Histogram - Durée des résolutions du problème direct
        chain_energy: Gauge - Énergie de l'état courant

    Example:
        >>> metrics = SamplerMetrics()
        >>> metrics.record_proposal("point", "accepted")
        >>> metrics.write_textfile(Path("metrics.prom"))
    """

    def __init__(self, registry: Optional[CollectorRegistry] = None):
        self.registry = registry or CollectorRegistry()

        self.proposals_total = Counter(
            "scatterbayes_proposals_total",
            "Number of Metropolis-Hastings proposals",
            ["move", "outcome"],
            registry=self.registry,
        )
        self.forward_solve_seconds = Histogram(
            "scatterbayes_forward_solve_seconds",
            "Duration of one forward solve (one wavenumber group)",
            ["solver"],
            buckets=SOLVE_BUCKETS,
            registry=self.registry,
        )
        self.chain_energy = Gauge(
            "scatterbayes_chain_energy",
            "Energy of the current chain state",
            registry=self.registry,
        )

    def record_proposal(self, move: str, outcome: str) -> None:
        """Enregistre une proposition.

        Args:
            move: Type de mouvement (point, translate, b, alpha)
            outcome: Issue (accepted, rejected, invalid)
        """
        self.proposals_total.labels(move=move, outcome=outcome).inc()

    def observe_solve(self, solver: str, seconds: float) -> None:
        self.forward_solve_seconds.labels(solver=solver).observe(seconds)

    def set_energy(self, energy: float) -> None:
        self.chain_energy.set(energy)

    def proposal_count(self, move: str, outcome: str) -> float:
        """Valeur courante du compteur pour (move, outcome)."""
        value = self.registry.get_sample_value(
            "scatterbayes_proposals_total", {"move": move, "outcome": outcome}
        )
        return value or 0.0

    def write_textfile(self, path: Path) -> None:
        """Écrit le registre au format texte Prometheus (node exporter)."""
        write_to_textfile(str(path), self.registry)

    @staticmethod
    def start_metrics_server(port: int = 9090, registry: Optional[CollectorRegistry] = None) -> None:
        """Démarre le serveur HTTP pour exposer les métriques.

        Args:
            port: Port pour le serveur HTTP (défaut: 9090)
            registry: Registre à exposer (défaut: registre global)

        Example:
            >>> SamplerMetrics.start_metrics_server(9090, metrics.registry)
            >>> # Métriques disponibles sur http://localhost:9090/metrics
        """
        if registry is None:
            start_http_server(port)
        else:
            start_http_server(port, registry=registry)
        logger.info("metrics server started", extra={"port": port, "url": f"http://localhost:{port}/metrics"})
