"""Exception hierarchy shared by every layer."""

from typing import List, Optional, Sequence


class PolyEigError(Exception):
    """Base class for all toolkit errors."""


class DimensionError(PolyEigError, ValueError):
    """Non-square input or coefficient size mismatch."""


class DegreeError(PolyEigError, ValueError):
    """Zero leading coefficient or a degree too small for the operation."""


class SingularLeadingError(PolyEigError):
    """Leading coefficient is numerically singular."""

    def __init__(self, sigma_min: float, norm: float):
        self.sigma_min = sigma_min
        self.norm = norm
        super().__init__(
            f"leading coefficient is singular (sigma_min={sigma_min:.3e}, "
            f"norm={norm:.3e}); infinite eigenvalues are not supported, "
            f"study reverse(P) instead"
        )


class SolverError(PolyEigError):
    """Eigensolver failed; carries whatever spectrum was obtained."""

    def __init__(self, message: str, partial=None):
        self.partial = partial
        super().__init__(message)


class FamilyError(PolyEigError):
    """A theorem's hypothesis does not hold for the given polynomial."""

    def __init__(self, family: str, failed: Sequence[str]):
        self.family = family
        self.failed: List[str] = list(failed)
        super().__init__(
            f"polynomial is not in family {family}: failed {', '.join(self.failed)}"
        )


class DomainError(PolyEigError, ValueError):
    """Construction parameter outside its admissible range."""


class TheoremViolation(PolyEigError):
    """A verified bound does not hold."""

    def __init__(self, message: str, report=None):
        self.report = report
        super().__init__(message)


class PolynomialParseError(PolyEigError, ValueError):
    """Malformed MatrixPolynomial document."""

    def __init__(self, field: str, message: str, index: Optional[int] = None):
        self.field = field
        self.index = index
        where = f"{field}[{index}]" if index is not None else field
        super().__init__(f"{where}: {message}")


class UsageError(PolyEigError, ValueError):
    """A command was invoked without a parameter it needs."""
