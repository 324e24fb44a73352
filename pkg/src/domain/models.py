"""Domain models for matrix polynomials and their spectra."""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import numpy.typing as npt
from numpy.polynomial import polynomial as npoly

from .errors import DegreeError, DimensionError, DomainError

ComplexMatrix = npt.NDArray[np.complex128]

# trailing scalar coefficients below this fraction of the largest are dropped
TRIM_TOL = 1e-10


def complex_pair(z: complex) -> List[float]:
    """Serialize a complex number as [re, im]."""
    z = complex(z)
    return [float(z.real), float(z.imag)]


def matrix_to_pairs(a: np.ndarray) -> List[List[List[float]]]:
    """Serialize a matrix as rows of [re, im] pairs."""
    return [[complex_pair(entry) for entry in row] for row in a]


def _frozen(values: Any) -> np.ndarray:
    array = np.array(values, dtype=np.complex128)
    array.setflags(write=False)
    return array


class Family(str, Enum):
    """Coefficient families with an eigenvalue location theorem."""
    D = "D"
    SR = "S_r"
    UNITARY = "U"


@dataclass(frozen=True, eq=False)
class MatrixPolynomial:
    """P(λ) = A_0 + A_1 λ + ... + A_m λ^m with square coefficients of equal size."""
    coeffs: Tuple[ComplexMatrix, ...]

    def __post_init__(self):
        coeffs = tuple(_frozen(c) for c in self.coeffs)
        if not coeffs:
            raise DegreeError("a matrix polynomial needs at least one coefficient")
        size = None
        for i, coeff in enumerate(coeffs):
            if coeff.ndim != 2 or coeff.shape[0] != coeff.shape[1]:
                raise DimensionError(f"coefficient A_{i} is not square: shape {coeff.shape}")
            if size is None:
                size = coeff.shape[0]
            elif coeff.shape[0] != size:
                raise DimensionError(
                    f"coefficient A_{i} has size {coeff.shape[0]}, expected {size}"
                )
            if not np.all(np.isfinite(coeff)):
                raise ValueError(f"coefficient A_{i} has non-finite entries")
        if size == 0:
            raise DimensionError("coefficients must be at least 1x1")
        if not np.any(coeffs[-1]):
            raise DegreeError("leading coefficient A_m must be nonzero")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[Any], trim: bool = False) -> "MatrixPolynomial":
        """Build from A_0..A_m, optionally dropping exactly-zero top coefficients."""
        coeffs = [np.asarray(c, dtype=np.complex128) for c in coeffs]
        if trim:
            while len(coeffs) > 1 and not np.any(coeffs[-1]):
                coeffs.pop()
        return cls(tuple(coeffs))

    @property
    def n(self) -> int:
        """Coefficient size."""
        return self.coeffs[0].shape[0]

    @property
    def m(self) -> int:
        """Degree."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> ComplexMatrix:
        return self.coeffs[-1]

    @property
    def constant(self) -> ComplexMatrix:
        return self.coeffs[0]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatrixPolynomial):
            return NotImplemented
        return len(self.coeffs) == len(other.coeffs) and all(
            np.array_equal(a, b) for a, b in zip(self.coeffs, other.coeffs)
        )

    __hash__ = None

    def to_dict(self) -> Dict[str, Any]:
        """Convert to the MatrixPolynomial text-format document."""
        return {
            "n": self.n,
            "m": self.m,
            "coeffs": [matrix_to_pairs(c) for c in self.coeffs],
        }


@dataclass(frozen=True, eq=False)
class ScalarPolynomial:
    """Scalar polynomial with complex coefficients, ascending by degree."""
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = _frozen(np.atleast_1d(self.coeffs))
        if coeffs.ndim != 1 or coeffs.size == 0:
            raise DimensionError("scalar polynomial coefficients must be a nonempty vector")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def trimmed(cls, coeffs: Sequence[complex], rel_tol: float = TRIM_TOL) -> "ScalarPolynomial":
        """Drop trailing coefficients below rel_tol times the largest magnitude."""
        values = np.array(coeffs, dtype=np.complex128)
        scale = np.max(np.abs(values)) if values.size else 0.0
        end = values.size
        while end > 1 and np.abs(values[end - 1]) <= rel_tol * scale:
            end -= 1
        if scale == 0.0:
            return cls(np.zeros(1, dtype=np.complex128))
        return cls(values[:end])

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    @property
    def leading(self) -> complex:
        return complex(self.coeffs[-1])

    @property
    def is_zero(self) -> bool:
        return not np.any(self.coeffs)

    def __call__(self, z):
        return npoly.polyval(z, self.coeffs)

    def divmod(self, divisor: "ScalarPolynomial") -> Tuple["ScalarPolynomial", "ScalarPolynomial"]:
        """Quotient and remainder of polynomial division."""
        quotient, remainder = npoly.polydiv(self.coeffs, divisor.coeffs)
        return ScalarPolynomial(quotient), ScalarPolynomial(remainder)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ScalarPolynomial):
            return NotImplemented
        return np.array_equal(self.coeffs, other.coeffs)

    __hash__ = None

    def to_dict(self) -> Dict[str, Any]:
        return {"degree": self.degree, "coeffs": [complex_pair(c) for c in self.coeffs]}


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Finite eigenvalues with a per-eigenvalue backward-error estimate.

    Multiplicity is implied by repetition. `tolerance` is the bound every
    residual met when the spectrum was produced.
    """
    eigenvalues: np.ndarray
    residuals: np.ndarray
    tolerance: float = 0.0

    def __post_init__(self):
        eigenvalues = _frozen(np.atleast_1d(self.eigenvalues))
        residuals = np.array(self.residuals, dtype=np.float64).reshape(-1)
        residuals.setflags(write=False)
        if residuals.shape != eigenvalues.shape:
            raise DimensionError("one residual per eigenvalue is required")
        object.__setattr__(self, "eigenvalues", eigenvalues)
        object.__setattr__(self, "residuals", residuals)

    @property
    def count(self) -> int:
        return int(self.eigenvalues.size)

    @property
    def moduli(self) -> np.ndarray:
        return np.abs(self.eigenvalues)

    @property
    def max_modulus(self) -> float:
        return float(self.moduli.max()) if self.count else 0.0

    @property
    def min_modulus(self) -> float:
        return float(self.moduli.min()) if self.count else 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "count": self.count,
            "eigenvalues": [complex_pair(z) for z in self.eigenvalues],
            "moduli": [float(x) for x in self.moduli],
            "residuals": [float(x) for x in self.residuals],
        }


@dataclass(frozen=True)
class EnsembleSpec:
    """Parameters of a random verification campaign."""
    family: Family
    n: int
    m: int
    r: Optional[float] = None
    trials: int = 0
    seed: int = 0
    k: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if self.n < 1 or self.m < 1:
            raise DomainError(f"n and m must be at least 1, got n={self.n}, m={self.m}")
        if self.trials < 0:
            raise DomainError(f"trials must be nonnegative, got {self.trials}")
        if self.seed < 0:
            raise DomainError(f"seed must be nonnegative, got {self.seed}")
        if self.family is Family.SR and (self.r is None or self.r <= 0):
            raise DomainError(f"family S_r needs r > 0, got {self.r}")
        if self.k is not None and self.k < 1:
            raise DomainError(f"k must be at least 1, got {self.k}")

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "family": self.family.value,
            "n": self.n,
            "m": self.m,
            "trials": self.trials,
            "seed": self.seed,
        }
        if self.r is not None:
            data["r"] = self.r
        if self.k is not None:
            data["k"] = self.k
        return data
