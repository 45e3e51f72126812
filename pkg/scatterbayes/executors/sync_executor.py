"""Exécuteur synchrone : les tâches s'exécutent dans le thread appelant."""

from typing import Any, Callable, Iterable, Sequence

from scatterbayes.core.execution import ExecutionResult
from scatterbayes.executors.base import BaseExecutor, run_task


class SyncExecutor(BaseExecutor):
    """Exécution séquentielle, sans pool.

    C'est l'exécuteur par défaut d'une chaîne unique : il garde l'ordre des
    calculs identique d'une exécution à l'autre.
    """

    name = "SyncExecutor"

    def map(self, function: Callable[..., Any], tasks: Iterable[Sequence[Any]]) -> list[ExecutionResult]:
        return [run_task(function, args) for args in tasks]

    def shutdown(self, wait: bool = True) -> None:
        """Rien à libérer."""
