"""Domain models, reports and errors."""

from .models import Family, MatrixPolynomial, ScalarPolynomial, Spectrum, EnsembleSpec
from .reports import (
    AnnulusReport,
    DiscReport,
    UnitCircleReport,
    SweepReport,
    WitnessValue,
    VerificationReport,
)
from .errors import (
    PolyEigError,
    DimensionError,
    DegreeError,
    SingularLeadingError,
    SolverError,
    FamilyError,
    DomainError,
    TheoremViolation,
    PolynomialParseError,
    UsageError,
)

__all__ = [
    "Family", "MatrixPolynomial", "ScalarPolynomial", "Spectrum", "EnsembleSpec",
    "AnnulusReport", "DiscReport", "UnitCircleReport", "SweepReport", "WitnessValue",
    "VerificationReport",
    "PolyEigError", "DimensionError", "DegreeError", "SingularLeadingError", "SolverError",
    "FamilyError", "DomainError", "TheoremViolation", "PolynomialParseError", "UsageError",
]
