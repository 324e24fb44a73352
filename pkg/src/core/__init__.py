"""Core numerical layer: linear algebra, matrix polynomials, families and theorem checks."""

from .services import VerificationService

__all__ = ["VerificationService"]
