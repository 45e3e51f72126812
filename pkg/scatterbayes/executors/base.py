"""Base classes pour les executors.

Une tâche est un tuple d'arguments passé à une même fonction. Les executors
renvoient un `ExecutionResult` par tâche, dans l'ordre de soumission, et ne
lèvent jamais pour une tâche en échec.
"""

import time
import traceback
from abc import ABC, abstractmethod
from typing import Any, Callable, Iterable, Sequence

from scatterbayes.core.execution import ExecutionResult, ExecutionStatus


def run_task(function: Callable[..., Any], args: Sequence[Any]) -> ExecutionResult:
    """Exécute `function(*args)` et capture l'éventuelle exception.

    Args:
        function: Fonction à appeler
        args: Arguments positionnels

    Returns:
        ExecutionResult SUCCESS avec la valeur, ou FAILED avec l'exception
    """
    start_time = time.perf_counter()
    try:
        value = function(*args)
    except Exception as exc:
        return ExecutionResult(
            status=ExecutionStatus.FAILED,
            error=f"{type(exc).__name__}: {exc}",
            exception=exc,
            traceback=traceback.format_exc(),
            duration_seconds=time.perf_counter() - start_time,
        )
    return ExecutionResult(
        status=ExecutionStatus.SUCCESS,
        result=value,
        duration_seconds=time.perf_counter() - start_time,
    )


class BaseExecutor(ABC):
    """Interface commune pour tous les executors.

    Chaque type d'executor (sync, thread, process) hérite de cette classe et
    implémente `map()`.

    Example:
        >>> executor = SyncExecutor()
        >>> [r.result for r in executor.map(pow, [(2, 3), (3, 2)])]
        [8, 9]
    """

    name = "BaseExecutor"

    @abstractmethod
    def map(self, function: Callable[..., Any], tasks: Iterable[Sequence[Any]]) -> list[ExecutionResult]:
        """Exécute `function(*args)` pour chaque tuple de `tasks`.

        Args:
            function: Fonction à appeler (picklable pour le ProcessExecutor)
            tasks: Tuples d'arguments

        Returns:
            Un ExecutionResult par tâche, dans l'ordre de `tasks`
        """
        raise NotImplementedError("Subclass must implement map()")

    @abstractmethod
    def shutdown(self, wait: bool = True) -> None:
        """Arrête l'executor et libère ses ressources."""
        raise NotImplementedError("Subclass must implement shutdown()")

    def __enter__(self) -> "BaseExecutor":
        return self

    def __exit__(self, *exc_info) -> None:
        self.shutdown()
