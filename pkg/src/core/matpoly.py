"""Matrix polynomial transformations and polynomial eigenvalues."""

import logging

import numpy as np
import scipy.linalg

from ..domain.errors import DegreeError, SingularLeadingError, SolverError
from ..domain.models import ComplexMatrix, MatrixPolynomial, ScalarPolynomial, Spectrum
from .numerics import (
    SINGULAR_TOL,
    det,
    eigenvalues_dense,
    sigma_min,
    singular_values,
    spectral_norm,
)

logger = logging.getLogger(__name__)

# sigma_min(P(λ)) ≤ EIGENVALUE_TOL·residual_scale(P, λ) accepts λ as an eigenvalue
EIGENVALUE_TOL = 1e-6
# det_poly coefficients below this fraction of the largest are snapped to zero
DET_SNAP_TOL = 1e-9
# Hausdorff matching tolerance between two computed spectra
MATCH_TOL = 1e-5


def evaluate(P: MatrixPolynomial, z: complex) -> ComplexMatrix:
    """P(z) by Horner's scheme over the matrix coefficients."""
    acc = np.array(P.coeffs[-1], dtype=np.complex128)
    for coeff in reversed(P.coeffs[:-1]):
        acc = acc * z + coeff
    return acc


def reverse(P: MatrixPolynomial) -> MatrixPolynomial:
    """λ^m P(1/λ); zero top coefficients (from A_0 = 0) are trimmed."""
    return MatrixPolynomial.from_coeffs(P.coeffs[::-1], trim=True)


def _check_leading(P: MatrixPolynomial, tol: float) -> None:
    values = singular_values(P.leading)
    if values[-1] <= tol * values[0]:
        raise SingularLeadingError(float(values[-1]), float(values[0]))


def monic_reduce(P: MatrixPolynomial, tol: float = SINGULAR_TOL) -> MatrixPolynomial:
    """P_U(λ) with U_i = A_m⁻¹A_i and leading coefficient exactly I."""
    _check_leading(P, tol)
    identity = np.eye(P.n, dtype=np.complex128)
    if np.array_equal(P.leading, identity):
        return P
    factor = scipy.linalg.lu_factor(P.leading, check_finite=False)
    reduced = [scipy.linalg.lu_solve(factor, coeff, check_finite=False) for coeff in P.coeffs[:-1]]
    return MatrixPolynomial(tuple(reduced) + (identity,))


def companion(P: MatrixPolynomial, tol: float = SINGULAR_TOL) -> ComplexMatrix:
    """Block companion matrix: identity blocks on the superdiagonal, -U_i in the last block row."""
    if P.m < 1:
        raise DegreeError("companion linearization needs degree at least 1")
    monic = monic_reduce(P, tol=tol)
    n, m = P.n, P.m
    block = np.zeros((m * n, m * n), dtype=np.complex128)
    block[: (m - 1) * n, n:] = np.eye((m - 1) * n)
    block[(m - 1) * n:, :] = -np.hstack(monic.coeffs[:-1])
    return block


def residual_scale(P: MatrixPolynomial, z: complex) -> float:
    """Backward-error normalization max_i ‖A_i‖₂ · max(1, |z|)^m."""
    coeff_norm = max(spectral_norm(coeff) for coeff in P.coeffs)
    return coeff_norm * max(1.0, abs(z)) ** P.m


def eigen_residual(P: MatrixPolynomial, z: complex) -> float:
    """Relative backward error sigma_min(P(z)) / residual_scale(P, z)."""
    return sigma_min(evaluate(P, z)) / residual_scale(P, z)


def is_eigenvalue(P: MatrixPolynomial, z: complex, tol: float = EIGENVALUE_TOL) -> bool:
    """True when P(z) is numerically singular at the polynomial's scale."""
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    return eigen_residual(P, z) <= tol


def polyeig(P: MatrixPolynomial, tol: float = EIGENVALUE_TOL, balance: bool = True) -> Spectrum:
    """The mn finite eigenvalues of P via its block companion matrix.

    Residuals in the returned spectrum are polynomial backward errors
    (eigen_residual), each required to be at most `tol`.
    """
    linearized = eigenvalues_dense(companion(P), balance=balance)
    residuals = np.array([eigen_residual(P, z) for z in linearized.eigenvalues])
    spectrum = Spectrum(linearized.eigenvalues, residuals, tolerance=tol)
    worst = float(residuals.max())
    if worst > tol:
        raise SolverError(
            f"polynomial backward error {worst:.3e} exceeds {tol:.1e} "
            f"(n={P.n}, m={P.m})",
            spectrum,
        )
    logger.debug(f"polyeig n={P.n} m={P.m}: worst backward error {worst:.2e}")
    return spectrum


def det_poly(
    P: MatrixPolynomial,
    radius: float = 1.0,
    snap_tol: float = DET_SNAP_TOL,
) -> ScalarPolynomial:
    """det P(λ) by evaluation at mn+1 scaled roots of unity and DFT inversion.

    With nodes z_j = ρω^j the samples det P(z_j) are the DFT of c_k ρ^k, so one
    FFT recovers the coefficients. Real and imaginary parts below snap_tol
    times the largest magnitude are set to zero.
    """
    if radius <= 0:
        raise ValueError(f"node radius must be positive, got {radius}")
    count = P.m * P.n + 1
    nodes = radius * np.exp(2j * np.pi * np.arange(count) / count)
    samples = np.array([det(evaluate(P, z)) for z in nodes])
    coeffs = np.fft.fft(samples) / count
    coeffs = coeffs / radius ** np.arange(count)

    threshold = snap_tol * np.max(np.abs(coeffs))
    real = np.where(np.abs(coeffs.real) < threshold, 0.0, coeffs.real)
    imag = np.where(np.abs(coeffs.imag) < threshold, 0.0, coeffs.imag)
    return ScalarPolynomial.trimmed(real + 1j * imag)
