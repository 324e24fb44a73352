"""Coefficient families, their validators, and the explicit witness polynomials."""

import itertools
import logging
from typing import List, Optional, Tuple

import numpy as np

from ..domain.errors import DomainError
from ..domain.models import ComplexMatrix, MatrixPolynomial
from .numerics import haar_unitary, make_rng, spectral_norm, spectral_radius

logger = logging.getLogger(__name__)

IDENTITY_2 = np.eye(2, dtype=np.complex128)
SWAP_2 = np.array([[0, 1], [1, 0]], dtype=np.complex128)

VALIDATE_TOL = 1e-10
SR_VALIDATE_TOL = 1e-8
# diagonal entries of the triangular factors are drawn from this fraction of the r-disc
SR_DISC_FRACTION = 0.95


def _permutation(rng: np.random.Generator, n: int) -> ComplexMatrix:
    return np.eye(n, dtype=np.complex128)[rng.permutation(n)]


def _doubly_stochastic(rng: np.random.Generator, n: int, k: int) -> ComplexMatrix:
    weights = rng.dirichlet(np.ones(k))
    terms = [w * _permutation(rng, n) for w in weights]
    return np.sum(terms, axis=0)


def random_permutation(n: int, seed: int) -> ComplexMatrix:
    """Uniformly shuffled permutation matrix."""
    if n < 1:
        raise DomainError(f"n must be at least 1, got {n}")
    return _permutation(make_rng(seed), n)


def random_doubly_stochastic(n: int, k: int, seed: int) -> ComplexMatrix:
    """Convex combination of k random permutations with Dirichlet(1, ..., 1) weights."""
    if n < 1 or k < 1:
        raise DomainError(f"n and k must be at least 1, got n={n}, k={k}")
    return _doubly_stochastic(make_rng(seed), n, k)


def random_D_polynomial(n: int, m: int, k: Optional[int] = None, seed: int = 0) -> MatrixPolynomial:
    """Member of D: permutation end coefficients, doubly stochastic interior."""
    if n < 1 or m < 1:
        raise DomainError(f"n and m must be at least 1, got n={n}, m={m}")
    k = n * n if k is None else k
    rng = make_rng(seed)
    interior = [_doubly_stochastic(rng, n, k) for _ in range(m - 1)]
    coeffs = [_permutation(rng, n)] + interior + [_permutation(rng, n)]
    return MatrixPolynomial(tuple(coeffs))


def random_ds_polynomial(
    n: int,
    m: int,
    k: Optional[int] = None,
    seed: int = 0,
    singular_leading: bool = False,
) -> MatrixPolynomial:
    """Every coefficient doubly stochastic, ends unconstrained.

    With singular_leading the leading coefficient is the all-1/n matrix, so the
    polynomial has eigenvalues at infinity and only pointwise checks apply.
    """
    if n < 1 or m < 1:
        raise DomainError(f"n and m must be at least 1, got n={n}, m={m}")
    k = n * n if k is None else k
    rng = make_rng(seed)
    coeffs = [_doubly_stochastic(rng, n, k) for _ in range(m + 1)]
    if singular_leading:
        coeffs[-1] = np.full((n, n), 1.0 / n, dtype=np.complex128)
    return MatrixPolynomial(tuple(coeffs))


def is_doubly_stochastic(a, tol: float = VALIDATE_TOL) -> bool:
    """Entrywise ≥ -tol, real within tol, row and column sums within tol of 1."""
    a = np.asarray(a, dtype=np.complex128)
    if np.max(np.abs(a.imag)) > tol:
        return False
    real = a.real
    return bool(
        np.all(real >= -tol)
        and np.all(np.abs(real.sum(axis=1) - 1.0) <= tol)
        and np.all(np.abs(real.sum(axis=0) - 1.0) <= tol)
    )


def is_permutation(a, tol: float = VALIDATE_TOL) -> bool:
    """Within tol of the 0/1 pattern obtained by thresholding at 1/2."""
    a = np.asarray(a, dtype=np.complex128)
    pattern = (a.real > 0.5).astype(np.float64)
    if not (np.all(pattern.sum(axis=0) == 1) and np.all(pattern.sum(axis=1) == 1)):
        return False
    return bool(np.max(np.abs(a - pattern)) <= tol)


def validate_D(P: MatrixPolynomial, tol: float = VALIDATE_TOL) -> bool:
    """Membership in D."""
    return not D_violations(P, tol)


def D_violations(P: MatrixPolynomial, tol: float = VALIDATE_TOL) -> List[str]:
    """Names of the D predicates P fails."""
    failed = []
    if P.m < 1:
        failed.append("degree")
    if not all(is_doubly_stochastic(c, tol) for c in P.coeffs):
        failed.append("doubly_stochastic")
    if not (is_permutation(P.constant, tol) and is_permutation(P.leading, tol)):
        failed.append("permutation_ends")
    return failed


def random_commuting_sr(
    n: int,
    m: int,
    r: float,
    seed: int = 0,
    rotate: bool = True,
    off_diagonal: bool = True,
) -> MatrixPolynomial:
    """Monic member of S_r built as A_i = U T_i U* with one Haar unitary U.

    The T_i are S D_i S⁻¹ for a shared unit upper triangular S and diagonal
    D_i, so they are upper triangular, commute, and carry D_i on the diagonal.
    Diagonal entries are uniform in the disc of radius 0.95r. The strict upper
    part of S is shrunk until every off-diagonal entry of every T_i is at most r.
    """
    if r <= 0:
        raise DomainError(f"r must be positive, got {r}")
    if n < 1 or m < 1:
        raise DomainError(f"n and m must be at least 1, got n={n}, m={m}")
    rng = make_rng(seed)
    radius = SR_DISC_FRACTION * r
    diagonals = [
        radius * np.sqrt(rng.uniform(size=n)) * np.exp(2j * np.pi * rng.uniform(size=n))
        for _ in range(m)
    ]
    strict = np.triu(rng.uniform(-1.0, 1.0, (n, n)) + 1j * rng.uniform(-1.0, 1.0, (n, n)), 1)
    unitary_seed = int(rng.integers(2 ** 62))

    shrink = 1.0 if off_diagonal else 0.0
    while True:
        basis = np.eye(n, dtype=np.complex128) + shrink * strict
        inverse = np.linalg.inv(basis)
        triangular = [basis @ np.diag(d) @ inverse for d in diagonals]
        largest = max(np.max(np.abs(np.triu(t, 1)), initial=0.0) for t in triangular)
        if largest <= r:
            break
        shrink *= 0.5

    if 0.0 < shrink < 1.0:
        logger.debug(f"off-diagonal part shrunk by {shrink:g} to respect r={r}")

    unitary = haar_unitary(n, unitary_seed) if rotate else np.eye(n, dtype=np.complex128)
    coeffs = [unitary @ t @ unitary.conj().T for t in triangular]
    coeffs.append(np.eye(n, dtype=np.complex128))
    return MatrixPolynomial(tuple(coeffs))


def commutator_defect(P: MatrixPolynomial) -> float:
    """max ‖A_iA_j − A_jA_i‖₂ / max‖A_i‖₂² over the non-leading coefficients."""
    coeffs = P.coeffs[:-1]
    scale = max((spectral_norm(c) for c in coeffs), default=0.0) ** 2
    worst = 0.0
    for a, b in itertools.combinations(coeffs, 2):
        worst = max(worst, spectral_norm(a @ b - b @ a))
    if worst == 0.0:
        return 0.0
    return worst / scale


def sr_violations(P: MatrixPolynomial, r: float, tol: float = SR_VALIDATE_TOL) -> List[str]:
    """Names of the S_r predicates P fails: monicity, spectral_radius, commutativity."""
    failed = []
    if P.m < 1:
        return ["degree"]
    if np.max(np.abs(P.leading - np.eye(P.n))) > tol:
        failed.append("monicity")
    if any(spectral_radius(c) >= r for c in P.coeffs[:-1]):
        failed.append("spectral_radius")
    if commutator_defect(P) > tol:
        failed.append("commutativity")
    return failed


def validate_sr(P: MatrixPolynomial, r: float, tol: float = SR_VALIDATE_TOL) -> bool:
    """Membership in S_r."""
    if r <= 0:
        raise DomainError(f"r must be positive, got {r}")
    return not sr_violations(P, r, tol)


def random_unitary_polynomial(n: int, m: int, seed: int = 0) -> MatrixPolynomial:
    """Haar unitary coefficients, the setting whose annulus D inherits."""
    if n < 1 or m < 1:
        raise DomainError(f"n and m must be at least 1, got n={n}, m={m}")
    seeds = make_rng(seed).integers(2 ** 62, size=m + 1)
    return MatrixPolynomial(tuple(haar_unitary(n, int(s)) for s in seeds))


def validate_unitary(P: MatrixPolynomial, tol: float = SR_VALIDATE_TOL) -> bool:
    """Every coefficient satisfies ‖A*A − I‖₂ ≤ tol."""
    identity = np.eye(P.n)
    return P.m >= 1 and all(
        spectral_norm(c.conj().T @ c - identity) <= tol for c in P.coeffs
    )


def extremal_inf_witness(r: float) -> Tuple[MatrixPolynomial, int]:
    """Iλ^d + ... + Iλ + I′ with d minimal such that r + r² + ... + r^d > 1.

    Its determinant carries λ^d + ... + λ − 1, which has a root in (1/2, r).
    """
    if not 0.5 < r < 1.0:
        raise DomainError(f"r must lie in (1/2, 1), got {r}")
    d, partial, power = 0, 0.0, 1.0
    while partial <= 1.0:
        d += 1
        power *= r
        partial += power
    coeffs = [SWAP_2] + [IDENTITY_2] * d
    return MatrixPolynomial(tuple(coeffs)), d


def extremal_sup_witness(m: int) -> MatrixPolynomial:
    """Iλ^m + I′λ^(m−1) + ... + I′; det carries λ^m − λ^(m−1) − ... − 1."""
    if m < 1:
        raise DomainError(f"m must be at least 1, got {m}")
    return MatrixPolynomial(tuple([SWAP_2] * m + [IDENTITY_2]))


def schur_sup_witness(m: int, n_param: int, r: float) -> MatrixPolynomial:
    """Iλ^m + A(λ^(m−1) + ... + 1) with A = −(r − 1/n_param)I, a 2×2 member of S_r."""
    if m < 1 or n_param < 1:
        raise DomainError(f"m and n_param must be at least 1, got m={m}, n_param={n_param}")
    if r < 1.0 / n_param:
        raise DomainError(f"r must be at least 1/n_param = {1.0 / n_param}, got {r}")
    a = -(r - 1.0 / n_param) * IDENTITY_2
    return MatrixPolynomial(tuple([a] * m + [IDENTITY_2]))


def zero_sr_polynomial(n: int = 2) -> MatrixPolynomial:
    """Iλ + 0: puts 0 in the modulus set of every S_r."""
    return MatrixPolynomial((np.zeros((n, n)), np.eye(n)))


def noncommuting_counterexample(n_param: int) -> MatrixPolynomial:
    """Quadratic with nilpotent, non-commuting coefficients and moduli n^(2/3)."""
    if n_param < 1:
        raise DomainError(f"n_param must be at least 1, got {n_param}")
    a1 = np.array([[0, 0], [-n_param, 0]], dtype=np.complex128)
    a0 = np.array([[0, -n_param], [0, 0]], dtype=np.complex128)
    return MatrixPolynomial((a0, a1, IDENTITY_2))


def ds_endpoint_counterexample(n: int) -> MatrixPolynomial:
    """Iλ + J_n: doubly stochastic, but the constant term is no permutation.

    Eigenvalues are −1 and 0 (n−1 times), so the annulus fails without the
    permutation hypothesis on the end coefficients.
    """
    if n < 2:
        raise DomainError(f"n must be at least 2, got {n}")
    return MatrixPolynomial((np.full((n, n), 1.0 / n), np.eye(n)))


def tridiagonal_T(size: int) -> ComplexMatrix:
    """tridiag(−1, 3, −1) of the given order."""
    off = -np.ones(size - 1)
    return (np.diag(np.full(size, 3.0)) + np.diag(off, 1) + np.diag(off, -1)).astype(np.complex128)


def mass_spring(size: int, damping: float = 10.0, stiffness: float = 5.0) -> MatrixPolynomial:
    """Linearly damped mass-spring system Iλ² + (damping·T)λ + stiffness·T."""
    if size < 1:
        raise DomainError(f"size must be at least 1, got {size}")
    t = tridiagonal_T(size)
    return MatrixPolynomial((stiffness * t, damping * t, np.eye(size)))
