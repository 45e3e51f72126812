"""Module de logging structuré.

Ce module configure le logging du package `scatterbayes` : JSON (une ligne
par événement, via python-json-logger) ou texte lisible avec les champs
`extra` ajoutés en fin de ligne.
"""

import logging
import sys
from typing import Any, Optional

from pythonjsonlogger import jsonlogger

# Attributs posés par logging sur chaque LogRecord ; tout le reste vient de `extra`.
_STANDARD_ATTRS = frozenset(
    logging.LogRecord("", 0, "", 0, "", None, None).__dict__
) | {"message", "asctime", "taskName"}


class TextFormatter(logging.Formatter):
    """Formatter texte classique.

    Ajoute les champs extra à la fin du message.

    Example:
        >>> logger.info("chain finished", extra={"seed": 3, "seconds": 12.5})
        # 2024-01-01 12:00:00 - scatterbayes.mcmc - INFO - chain finished | seed=3 | seconds=12.5
    """

    def format(self, record: logging.LogRecord) -> str:
        msg = super().format(record)
        extra = {k: v for k, v in record.__dict__.items() if k not in _STANDARD_ATTRS and not k.startswith("_")}
        if extra:
            extra_str = " | ".join(f"{k}={v}" for k, v in extra.items())
            return f"{msg} | {extra_str}"
        return msg


def build_formatter(format_type: str) -> logging.Formatter:
    """Formatter pour un type de sortie (json ou text)."""
    if format_type == "json":
        return jsonlogger.JsonFormatter(
            "%(asctime)s %(levelname)s %(name)s %(message)s",
            rename_fields={"asctime": "timestamp", "levelname": "level", "name": "logger"},
        )
    return TextFormatter(fmt="%(asctime)s - %(name)s - %(levelname)s - %(message)s", datefmt="%Y-%m-%d %H:%M:%S")


def configure_logger(
    name: str = "scatterbayes",
    level: str = "INFO",
    format_type: str = "text",
    extra_context: Optional[dict[str, Any]] = None,
) -> logging.Logger | logging.LoggerAdapter:
    """Configure le logger du package.

    Les modules utilisent `logging.getLogger(__name__)` : configurer le
    logger `scatterbayes` suffit pour tous les sous-modules.

    Args:
        name: Nom du logger
        level: Niveau de logging (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        format_type: Type de format (json ou text)
        extra_context: Contexte ajouté à tous les logs (ex: {"seed": 3})

    Returns:
        Logger configuré (LoggerAdapter si extra_context est fourni)

    Example:
        >>> logger = configure_logger(level="INFO", format_type="json")
        >>> logger.info("run started", extra={"preset": "example1"})
        # {"timestamp": "2024-01-01 12:00:00,000", "level": "INFO", "logger": "scatterbayes", "message": "run started", "preset": "example1"}
    """
    logger = logging.getLogger(name)
    logger.setLevel(getattr(logging, level.upper()))
    logger.handlers.clear()
    logger.propagate = False

    # stderr : stdout reste aux tableaux rich
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(build_formatter(format_type))
    logger.addHandler(handler)

    if extra_context:
        return logging.LoggerAdapter(logger, extra_context)
    return logger


def get_logger(name: Optional[str] = None) -> logging.Logger:
    """Récupère un logger par son nom (None = logger du package)."""
    return logging.getLogger(name or "scatterbayes")
