"""Infrastructure layer for file formats and report output."""

from .polynomial_store import PolynomialStore
from .report_writer import ReportWriter

__all__ = [
    "PolynomialStore",
    "ReportWriter",
]
