"""Executors - sync, thread and process pools sharing one interface."""

from scatterbayes.executors.base import BaseExecutor, run_task
from scatterbayes.executors.manager import ExecutorKind, ExecutorManager
from scatterbayes.executors.process_executor import ProcessExecutor
from scatterbayes.executors.sync_executor import SyncExecutor
from scatterbayes.executors.thread_executor import ThreadExecutor

__all__ = [
    "BaseExecutor",
    "ExecutorKind",
    "ExecutorManager",
    "ProcessExecutor",
    "SyncExecutor",
    "ThreadExecutor",
    "run_task",
]
