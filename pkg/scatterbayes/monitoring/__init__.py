"""Monitoring - structured logging and Prometheus metrics."""

from scatterbayes.monitoring.logger import configure_logger, get_logger
from scatterbayes.monitoring.metrics import SamplerMetrics

__all__ = ["SamplerMetrics", "configure_logger", "get_logger"]
