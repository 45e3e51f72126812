"""Résultats d'exécution des tâches soumises aux executors.

Une tâche est un appel de fonction (une résolution par nombre d'onde, une
chaîne MCMC pour une graine). Les executors ne lèvent pas : ils renvoient un
`ExecutionResult` que l'appelant inspecte.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Optional


class ExecutionStatus(Enum):
    """Statut d'une tâche."""

    SUCCESS = "SUCCESS"
    FAILED = "FAILED"


@dataclass
class ExecutionResult:
    """Résultat d'une tâche.

    Attributes:
        status: Statut de l'exécution
        result: Valeur renvoyée (si succès)
        error: Message d'erreur (si échec)
        exception: Exception d'origine (si échec, pour la relancer)
        traceback: Stack trace complète (si échec)
        duration_seconds: Durée d'exécution en secondes
    """

    status: ExecutionStatus
    result: Any = None
    error: Optional[str] = None
    exception: Optional[BaseException] = None
    traceback: Optional[str] = None
    duration_seconds: Optional[float] = None

    @property
    def ok(self) -> bool:
        return self.status == ExecutionStatus.SUCCESS

    def unwrap(self) -> Any:
        """Retourne le résultat ou relance l'exception d'origine.

        Raises:
            Exception: L'exception capturée par l'executor
        """
        if self.ok:
            return self.result
        if self.exception is not None:
            raise self.exception
        raise RuntimeError(self.error or "task failed")
