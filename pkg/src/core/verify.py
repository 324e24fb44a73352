"""Theorem checks: analytic bounds, containment reports, counting and sweeps.

Strict inequalities from exact arithmetic are checked as closed intervals
padded by BOUND_SLACK; every report also carries the signed margin.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Sequence, Tuple, TypeVar, Union

import numpy as np
import scipy.linalg
from scipy.cluster.hierarchy import fcluster, linkage
from scipy.spatial.distance import directed_hausdorff

from ..domain.errors import DegreeError, DomainError, FamilyError, TheoremViolation
from ..domain.models import EnsembleSpec, Family, MatrixPolynomial, ScalarPolynomial, Spectrum
from ..domain.reports import (
    ANNULUS_INNER,
    ANNULUS_OUTER,
    BOUND_SLACK,
    AnnulusReport,
    DiscReport,
    SweepReport,
    UnitCircleReport,
    WitnessValue,
)
from .ensembles import (
    SR_VALIDATE_TOL,
    VALIDATE_TOL,
    D_violations,
    extremal_inf_witness,
    extremal_sup_witness,
    is_doubly_stochastic,
    random_commuting_sr,
    random_D_polynomial,
    random_unitary_polynomial,
    schur_sup_witness,
    sr_violations,
    validate_unitary,
    zero_sr_polynomial,
)
from .matpoly import det_poly, evaluate, polyeig, residual_scale
from .numerics import is_singular, make_rng, scalar_roots, sigma_min, spectral_radius

logger = logging.getLogger(__name__)

CLUSTER_TOL = 1e-6
UNIT_CIRCLE_TOL = 1e-8
DIVISIBILITY_TOL = 1e-7
# lower-triangular leakage allowed after a common Schur basis
TRIANGULARIZE_TOL = 1e-6

T = TypeVar("T")


def cauchy_bound(p: Union[ScalarPolynomial, Sequence[complex]]) -> float:
    """1 + max_i |a_i / a_n|: every root lies in this disc."""
    coeffs = p.coeffs if isinstance(p, ScalarPolynomial) else np.asarray(p, dtype=np.complex128)
    if coeffs.size < 2:
        raise DegreeError("Cauchy bound needs degree at least 1")
    if coeffs[-1] == 0:
        raise DegreeError("leading coefficient is zero")
    return 1.0 + float(np.max(np.abs(coeffs[:-1]) / abs(coeffs[-1])))


def default_cluster_tol(spectrum: Spectrum) -> float:
    return CLUSTER_TOL * max(1.0, spectrum.max_modulus)


def distinct_count(s: Union[Spectrum, Sequence[complex]], cluster_tol: float) -> int:
    """Number of single-linkage clusters at distance cluster_tol in the complex plane."""
    if cluster_tol <= 0:
        raise ValueError(f"cluster_tol must be positive, got {cluster_tol}")
    values = s.eigenvalues if isinstance(s, Spectrum) else np.asarray(s, dtype=np.complex128)
    if values.size <= 1:
        return int(values.size)
    points = np.column_stack([values.real, values.imag])
    labels = fcluster(linkage(points, method="single"), t=cluster_tol, criterion="distance")
    return int(np.unique(labels).size)


def annulus_check(
    P: MatrixPolynomial,
    instance_id: str = "P",
    family: Family = Family.D,
    tol: Optional[float] = None,
    slack: float = BOUND_SLACK,
) -> AnnulusReport:
    """All eigenvalue moduli against (1/2, 2) for a member of D (or of the unitary family)."""
    family = Family(family)
    if family is Family.D:
        failed = D_violations(P, VALIDATE_TOL if tol is None else tol)
    elif family is Family.UNITARY:
        ok = validate_unitary(P, SR_VALIDATE_TOL if tol is None else tol)
        failed = [] if ok else ["unitary"]
    else:
        raise DomainError(f"annulus theorem does not cover family {family.value}")
    if failed:
        raise FamilyError(family.value, failed)

    spectrum = polyeig(P)
    distinct = distinct_count(spectrum, default_cluster_tol(spectrum))
    report = AnnulusReport.from_moduli(instance_id, spectrum.moduli, slack=slack, distinct=distinct)
    logger.debug(
        f"{instance_id}: annulus margins {report.inner_margin:.3e} / {report.outer_margin:.3e}"
    )
    return report


def triangular_factors(
    P: MatrixPolynomial,
    seed: int = 0,
    tol: float = TRIANGULARIZE_TOL,
) -> List[ScalarPolynomial]:
    """Per-diagonal scalar factors of det P for a monic commuting family.

    A generic combination of the coefficients has a Schur basis that
    upper-triangularizes every coefficient at once; det P is then the product
    of λ^m + t_kk^(m−1) λ^(m−1) + ... + t_kk^(0) over the diagonal positions k.
    """
    if P.m < 1 or np.max(np.abs(P.leading - np.eye(P.n))) > SR_VALIDATE_TOL:
        raise FamilyError(Family.SR.value, ["monicity"])
    coeffs = P.coeffs[:-1]
    rng = make_rng(seed)
    weights = rng.standard_normal(len(coeffs)) + 1j * rng.standard_normal(len(coeffs))
    combination = sum(w * c for w, c in zip(weights, coeffs))
    _, basis = scipy.linalg.schur(combination, output="complex")

    triangular = [basis.conj().T @ c @ basis for c in coeffs]
    for original, t in zip(coeffs, triangular):
        scale = max(1.0, float(np.max(np.abs(original))))
        if np.max(np.abs(np.tril(t, -1)), initial=0.0) > tol * scale:
            raise FamilyError(Family.SR.value, ["triangularization"])

    factors = []
    for k in range(P.n):
        diagonal = [t[k, k] for t in triangular]
        factors.append(ScalarPolynomial(np.array(diagonal + [1.0], dtype=np.complex128)))
    return factors


def diagonal_cauchy_bound(P: MatrixPolynomial) -> float:
    """Largest Cauchy bound among the diagonal factors; below r + 1 for members of S_r."""
    return max(cauchy_bound(f) for f in triangular_factors(P))


def disc_check(
    P: MatrixPolynomial,
    r_declared: float,
    instance_id: str = "P",
    tol: float = SR_VALIDATE_TOL,
    slack: float = BOUND_SLACK,
    with_factors: bool = True,
) -> DiscReport:
    """Maximum eigenvalue modulus against r_eff + 1 for a member of S_r."""
    if r_declared <= 0:
        raise DomainError(f"r must be positive, got {r_declared}")
    failed = sr_violations(P, r_declared, tol)
    if failed:
        raise FamilyError(Family.SR.value, failed)

    spectrum = polyeig(P)
    r_eff = max(spectral_radius(c) for c in P.coeffs[:-1])
    diagonal = None
    if with_factors:
        try:
            diagonal = diagonal_cauchy_bound(P)
        except FamilyError:
            logger.warning(f"{instance_id}: no common Schur basis found, skipping diagonal bound")
    report = DiscReport.from_moduli(
        instance_id, spectrum.moduli, r_declared, r_eff, slack=slack, diagonal_cauchy=diagonal
    )
    logger.debug(f"{instance_id}: disc margin {report.margin:.3e} (r_eff={r_eff:.6f})")
    return report


def _require_doubly_stochastic(P: MatrixPolynomial, tol: float) -> None:
    if not all(is_doubly_stochastic(c, tol) for c in P.coeffs):
        raise FamilyError("DS", ["doubly_stochastic"])


def unit_circle_eigs(
    P: MatrixPolynomial,
    tol: float = UNIT_CIRCLE_TOL,
) -> List[Tuple[complex, float]]:
    """Confirm the m-th roots ω_j = e^(2πij/(m+1)) as eigenvalues with null vector e.

    Works without inverting A_m, so singular leading coefficients are fine.
    Returns (ω_j, sigma_min(P(ω_j)) / scale) per point.
    """
    _require_doubly_stochastic(P, max(tol, VALIDATE_TOL))
    ones = np.ones(P.n)
    confirmed = []
    for j in range(1, P.m + 1):
        omega = np.exp(2j * np.pi * j / (P.m + 1))
        value = evaluate(P, omega)
        scale = residual_scale(P, omega)
        null_residual = np.linalg.norm(value @ ones) / scale
        singular_residual = sigma_min(value) / scale
        if null_residual > tol or singular_residual > tol:
            raise TheoremViolation(
                f"ω_{j} = {omega:.6f} is not an eigenvalue: ‖P(ω)e‖ residual "
                f"{null_residual:.3e}, sigma_min residual {singular_residual:.3e}"
            )
        confirmed.append((complex(omega), float(singular_residual)))
    return confirmed


def divisibility_check(P: MatrixPolynomial) -> float:
    """Largest remainder coefficient of det P(λ) ÷ (λ^m + ... + λ + 1)."""
    _require_doubly_stochastic(P, VALIDATE_TOL)
    determinant = det_poly(P)
    if determinant.is_zero:
        return 0.0
    divisor = ScalarPolynomial(np.ones(P.m + 1, dtype=np.complex128))
    _, remainder = determinant.divmod(divisor)
    return float(np.max(np.abs(remainder.coeffs)))


def unit_circle_report(
    P: MatrixPolynomial,
    instance_id: str = "P",
    tol: float = UNIT_CIRCLE_TOL,
    divisibility_max_order: int = 12,
) -> UnitCircleReport:
    """Pointwise roots-of-unity check, plus the spectral and divisibility views when cheap.

    The distinct unit-modulus count needs polyeig and so a nonsingular A_m;
    the division check runs only for mn ≤ divisibility_max_order.
    """
    points = unit_circle_eigs(P, tol)
    passed = True

    distinct_unit = None
    if not is_singular(P.leading):
        spectrum = polyeig(P)
        on_circle = spectrum.eigenvalues[np.abs(spectrum.moduli - 1.0) <= CLUSTER_TOL]
        distinct_unit = distinct_count(on_circle, CLUSTER_TOL) if on_circle.size else 0
        passed = passed and distinct_unit >= P.m

    remainder = remainder_scale = None
    if P.m * P.n <= divisibility_max_order:
        remainder = divisibility_check(P)
        remainder_scale = float(np.max(np.abs(det_poly(P).coeffs)))
        passed = passed and remainder <= DIVISIBILITY_TOL * max(remainder_scale, 1.0)

    return UnitCircleReport(
        instance_id=instance_id,
        m=P.m,
        points=tuple(points),
        distinct_unit=distinct_unit,
        remainder=remainder,
        remainder_scale=remainder_scale,
        passed=passed,
    )


def linearization_gap(P: MatrixPolynomial) -> float:
    """Hausdorff distance between polyeig(P) and the roots of det P(λ).

    Infinite when the two counts differ.
    """
    linearized = polyeig(P).eigenvalues
    determinant = det_poly(P)
    if determinant.degree != linearized.size:
        return float("inf")
    roots = scalar_roots(determinant).eigenvalues
    a = np.column_stack([linearized.real, linearized.imag])
    b = np.column_stack([roots.real, roots.imag])
    return float(max(directed_hausdorff(a, b)[0], directed_hausdorff(b, a)[0]))


def run_trials(fn: Callable[[int], T], seeds: Sequence[int], workers: int = 1) -> List[T]:
    """Apply fn to every seed; results come back in seed order."""
    if workers <= 1:
        return [fn(seed) for seed in seeds]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, seeds))


def _trial_fn(spec: EnsembleSpec, slack: float) -> Callable[[int], Union[AnnulusReport, DiscReport]]:
    if spec.family is Family.D:
        return lambda seed: annulus_check(
            random_D_polynomial(spec.n, spec.m, spec.k, seed), f"trial-{seed}", slack=slack
        )
    if spec.family is Family.UNITARY:
        return lambda seed: annulus_check(
            random_unitary_polynomial(spec.n, spec.m, seed), f"trial-{seed}",
            family=Family.UNITARY, slack=slack,
        )
    return lambda seed: disc_check(
        random_commuting_sr(spec.n, spec.m, spec.r, seed), spec.r, f"trial-{seed}",
        slack=slack, with_factors=False,
    )


def sweep_extremes(
    spec: EnsembleSpec,
    workers: int = 1,
    inf_radii: Sequence[float] = (0.6, 0.55, 0.51, 0.505, 0.501),
    sup_max_degree: int = 12,
    schur_ladder: Sequence[Tuple[int, int]] = ((2, 2), (4, 4), (8, 8), (16, 16), (32, 32),
                                               (64, 64), (64, 128), (64, 256), (64, 512),
                                               (64, 1024)),
    slack: float = BOUND_SLACK,
) -> SweepReport:
    """Random trials plus the deterministic witness sequences of a family.

    Observed extreme moduli must stay inside the analytic (inf, sup); the
    witnesses show both limits are approached.
    """
    seeds = [spec.seed + t for t in range(spec.trials)]
    reports = run_trials(_trial_fn(spec, slack), seeds, workers)
    for report in reports:
        if not report.passed:
            raise TheoremViolation(f"{report.instance_id} violates its bound", report)

    moduli: List[float] = [x for report in reports for x in report.moduli]
    witnesses: List[WitnessValue] = []

    if spec.family in (Family.D, Family.UNITARY):
        analytic_inf, analytic_sup = ANNULUS_INNER, ANNULUS_OUTER
        for r in inf_radii:
            P, d = extremal_inf_witness(r)
            spectrum = polyeig(P)
            smallest = spectrum.min_modulus
            if not ANNULUS_INNER - slack < smallest < r:
                raise TheoremViolation(f"inf witness for r={r} (d={d}) reached {smallest}")
            witnesses.append(WitnessValue("inf", r, smallest))
            moduli.extend(spectrum.moduli)
        for m in range(1, sup_max_degree + 1):
            spectrum = polyeig(extremal_sup_witness(m))
            witnesses.append(WitnessValue("sup", m, spectrum.max_modulus))
            moduli.extend(spectrum.moduli)
    else:
        r = spec.r
        analytic_inf, analytic_sup = 0.0, r + 1.0
        spectrum = polyeig(zero_sr_polynomial())
        witnesses.append(WitnessValue("inf", 0, spectrum.min_modulus))
        moduli.extend(spectrum.moduli)
        for m, n_param in schur_ladder:
            if r < 1.0 / n_param:
                continue
            spectrum = polyeig(schur_sup_witness(m, n_param, r))
            witnesses.append(WitnessValue("sup", (m, n_param), spectrum.max_modulus))
            moduli.extend(spectrum.moduli)

    report = SweepReport(
        spec=spec,
        observed_min=float(min(moduli)),
        observed_max=float(max(moduli)),
        witnesses=tuple(witnesses),
        analytic_inf=analytic_inf,
        analytic_sup=analytic_sup,
        trials_run=len(reports),
        slack=slack,
    )
    logger.info(
        f"sweep {spec.family.value}: observed [{report.observed_min:.6f}, "
        f"{report.observed_max:.6f}] within ({analytic_inf}, {analytic_sup})"
    )
    if not report.passed:
        raise TheoremViolation("sweep extremes leave the analytic limits", report)
    return report
