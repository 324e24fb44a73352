"""API layer: the command line interface."""

from .cli_app import PolyEigCLI, main

__all__ = ["PolyEigCLI", "main"]
