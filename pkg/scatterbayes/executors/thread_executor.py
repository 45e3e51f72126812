"""Exécuteur avec threading.

Utilisé pour résoudre en parallèle les systèmes réduits des deux nombres
d'onde : LAPACK libère le GIL pendant la factorisation.
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Iterable, Sequence

from scatterbayes.core.execution import ExecutionResult
from scatterbayes.executors.base import BaseExecutor, run_task


class ThreadExecutor(BaseExecutor):
    """Exécuteur avec ThreadPoolExecutor.

    Attributes:
        pool_size: Taille du pool de threads
        executor: ThreadPoolExecutor instance

    Example:
        >>> with ThreadExecutor(pool_size=2) as executor:
        ...     results = executor.map(model._solve_group, tasks)
    """

    name = "ThreadExecutor"

    def __init__(self, pool_size: int = 2):
        """Initialise l'executor threading.

        Args:
            pool_size: Nombre de threads dans le pool (défaut: 2, un par nombre d'onde)
        """
        self.pool_size = pool_size
        self.executor = ThreadPoolExecutor(max_workers=pool_size, thread_name_prefix="scatterbayes")

    def map(self, function: Callable[..., Any], tasks: Iterable[Sequence[Any]]) -> list[ExecutionResult]:
        futures = [self.executor.submit(run_task, function, args) for args in tasks]
        return [future.result() for future in futures]

    def shutdown(self, wait: bool = True) -> None:
        """Arrête l'executor et libère les ressources.

        Args:
            wait: Attendre que les tâches en cours se terminent (défaut: True)
        """
        self.executor.shutdown(wait=wait)
