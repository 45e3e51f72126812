"""Command-line interface."""

from scatterbayes.cli.main import cli

__all__ = ["cli"]
