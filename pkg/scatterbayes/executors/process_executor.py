"""Exécuteur avec multiprocessing.

Utilisé pour lancer plusieurs chaînes MCMC (une par graine) en parallèle.
Chaque processus a son propre GIL et son propre générateur aléatoire ; les
chaînes ne partagent aucun état mutable.
"""

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Iterable, Sequence

from scatterbayes.core.execution import ExecutionResult
from scatterbayes.executors.base import BaseExecutor, run_task


class ProcessExecutor(BaseExecutor):
    """Exécuteur avec ProcessPoolExecutor.

    Limitations :
    - La fonction et ses arguments doivent être picklable
    - Les exceptions capturées doivent l'être aussi (voir core.errors)

    Attributes:
        pool_size: Taille du pool de processus
        executor: ProcessPoolExecutor instance
    """

    name = "ProcessExecutor"

    def __init__(self, pool_size: int | None = None):
        """Initialise l'executor multiprocessing.

        Args:
            pool_size: Nombre de processus dans le pool
                (None = os.cpu_count(), défaut: None)
        """
        self.pool_size = pool_size or os.cpu_count() or 4
        self.executor = ProcessPoolExecutor(max_workers=self.pool_size)

    def map(self, function: Callable[..., Any], tasks: Iterable[Sequence[Any]]) -> list[ExecutionResult]:
        futures = [self.executor.submit(run_task, function, tuple(args)) for args in tasks]
        return [future.result() for future in futures]

    def shutdown(self, wait: bool = True) -> None:
        self.executor.shutdown(wait=wait)
