"""Gestionnaire d'executors.

Ce module sélectionne et crée à la demande l'executor adapté à un type de
tâche, et les arrête tous à la fin d'une commande.
"""

from enum import Enum
from typing import Optional

from scatterbayes.executors.base import BaseExecutor
from scatterbayes.executors.process_executor import ProcessExecutor
from scatterbayes.executors.sync_executor import SyncExecutor
from scatterbayes.executors.thread_executor import ThreadExecutor


class ExecutorKind(Enum):
    """Modèle de concurrence d'une tâche."""

    SYNC = "sync"
    THREAD = "thread"
    PROCESS = "process"


class ExecutorManager:
    """Gestionnaire d'executors.

    Les pools ne sont créés qu'au premier `get_executor` de leur type.

    Attributes:
        thread_pool_size: Taille du pool de threads
        process_pool_size: Taille du pool de processus (None = nombre de CPU)
        _executors: Cache des executors par type

    Example:
        >>> with ExecutorManager(process_pool_size=2) as manager:
        ...     results = manager.get_executor(ExecutorKind.PROCESS).map(run_seed, tasks)
    """

    def __init__(self, thread_pool_size: int = 2, process_pool_size: Optional[int] = None):
        self.thread_pool_size = thread_pool_size
        self.process_pool_size = process_pool_size
        self._executors: dict[ExecutorKind, BaseExecutor] = {}

    def get_executor(self, kind: ExecutorKind | str) -> BaseExecutor:
        """Retourne l'executor d'un type, en le créant si besoin.

        Raises:
            ValueError: Si le type n'est pas supporté
        """
        kind = ExecutorKind(kind)
        if kind not in self._executors:
            if kind is ExecutorKind.SYNC:
                self._executors[kind] = SyncExecutor()
            elif kind is ExecutorKind.THREAD:
                self._executors[kind] = ThreadExecutor(pool_size=self.thread_pool_size)
            else:
                self._executors[kind] = ProcessExecutor(pool_size=self.process_pool_size)
        return self._executors[kind]

    def shutdown_all(self) -> None:
        """Arrête tous les executors créés."""
        for executor in self._executors.values():
            executor.shutdown()
        self._executors.clear()

    def __enter__(self) -> "ExecutorManager":
        return self

    def __exit__(self, *exc_info) -> None:
        self.shutdown_all()
