"""Dense complex linear algebra used by every other module.

All routines take array-likes, work on complex128 copies and never mutate
their inputs. Randomness goes through `make_rng`, a Philox (counter-based)
generator keyed by an explicit seed.
"""

import logging
import warnings
from typing import Sequence, Union

import numpy as np
import scipy.linalg
from scipy.linalg import LinAlgError, LinAlgWarning

from ..domain.errors import DegreeError, DimensionError, SolverError
from ..domain.models import ComplexMatrix, ScalarPolynomial, Spectrum

logger = logging.getLogger(__name__)

# eigenvector residual bound, relative to ‖A‖₂
EIG_RESIDUAL_TOL = 1e-8
# sigma_min ≤ SINGULAR_TOL·‖A‖₂ counts as singular
SINGULAR_TOL = 1e-8


def make_rng(seed: int) -> np.random.Generator:
    """Seeded counter-based generator."""
    if seed < 0:
        raise ValueError(f"seed must be nonnegative, got {seed}")
    return np.random.Generator(np.random.Philox(seed))


def as_matrix(a, square: bool = True, name: str = "matrix") -> ComplexMatrix:
    """Validate and convert to a finite complex128 matrix."""
    array = np.array(a, dtype=np.complex128)
    if array.ndim != 2:
        raise DimensionError(f"{name} must be two-dimensional, got shape {array.shape}")
    if square and array.shape[0] != array.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {array.shape}")
    if array.size == 0:
        raise DimensionError(f"{name} is empty")
    if not np.all(np.isfinite(array)):
        raise ValueError(f"{name} has non-finite entries")
    return array


def det(a) -> complex:
    """Determinant from a partially pivoted LU factorization."""
    a = as_matrix(a)
    with warnings.catch_warnings():
        # exactly singular input is a legitimate zero determinant
        warnings.simplefilter("ignore", LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(a, check_finite=False)
    swaps = int(np.count_nonzero(piv != np.arange(piv.size)))
    sign = -1.0 if swaps % 2 else 1.0
    return complex(sign * np.prod(np.diag(lu)))


def singular_values(a) -> np.ndarray:
    """Singular values in descending order."""
    return scipy.linalg.svdvals(as_matrix(a), check_finite=False)


def sigma_min(a) -> float:
    return float(singular_values(a)[-1])


def spectral_norm(a) -> float:
    return float(singular_values(a)[0])


def inf_norm(a) -> float:
    """Maximum absolute row sum."""
    a = as_matrix(a, square=False)
    return float(np.abs(a).sum(axis=1).max())


def is_singular(a, tol: float = SINGULAR_TOL) -> bool:
    """Scale-invariant singularity test: sigma_min ≤ tol·‖A‖₂."""
    values = singular_values(a)
    return bool(values[-1] <= tol * values[0])


def eigenvalues_dense(a, balance: bool = True, tol: float = EIG_RESIDUAL_TOL) -> Spectrum:
    """All eigenvalues of a dense matrix with eigenvector residuals.

    The matrix is balanced by a diagonal similarity, then handed to LAPACK's
    Hessenberg/shifted-QR driver. Residuals are ‖Av − λv‖/‖v‖ in the original
    coordinates and must stay below tol·‖A‖₂.
    """
    a = as_matrix(a)
    work, scaling = a, None
    if balance:
        work, scaling = scipy.linalg.matrix_balance(a, permute=True, scale=True)
    try:
        values, vectors = scipy.linalg.eig(work, check_finite=False)
    except LinAlgError as exc:
        empty = Spectrum(np.zeros(0, dtype=np.complex128), np.zeros(0))
        raise SolverError(f"QR iteration did not converge for order {a.shape[0]}", empty) from exc
    if scaling is not None:
        vectors = scaling @ vectors
    norms = np.linalg.norm(vectors, axis=0)
    residuals = np.linalg.norm(a @ vectors - vectors * values, axis=0) / norms

    limit = tol * spectral_norm(a)
    spectrum = Spectrum(values, residuals, tolerance=limit)
    worst = float(residuals.max())
    if worst > limit:
        raise SolverError(
            f"eigenvector residual {worst:.3e} exceeds {limit:.3e} for order {a.shape[0]}",
            spectrum,
        )
    logger.debug(f"order {a.shape[0]} eigensolve, worst residual {worst:.2e}")
    return spectrum


def spectral_radius(a) -> float:
    """Largest eigenvalue modulus."""
    return eigenvalues_dense(a).max_modulus


def scalar_companion(coeffs: Sequence[complex]) -> ComplexMatrix:
    """Companion matrix of a scalar polynomial, same layout as the block form."""
    c = np.array(coeffs, dtype=np.complex128)
    degree = c.size - 1
    if degree < 1:
        raise DegreeError(f"polynomial degree must be at least 1, got {degree}")
    if c[-1] == 0:
        raise DegreeError("leading coefficient is zero")
    companion = np.diag(np.ones(degree - 1, dtype=np.complex128), 1)
    companion[-1, :] = -c[:-1] / c[-1]
    return companion


def scalar_roots(coeffs: Union[ScalarPolynomial, Sequence[complex]]) -> Spectrum:
    """All roots of a scalar polynomial given by ascending coefficients."""
    if isinstance(coeffs, ScalarPolynomial):
        coeffs = coeffs.coeffs
    return eigenvalues_dense(scalar_companion(coeffs))


def haar_unitary(n: int, seed: int) -> ComplexMatrix:
    """Haar-distributed unitary from a seeded Ginibre matrix.

    QR of the Gaussian matrix, with the phases of R's diagonal folded back into
    Q so the distribution is exactly Haar.
    """
    if n < 1:
        raise DimensionError(f"n must be at least 1, got {n}")
    rng = make_rng(seed)
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = scipy.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))
