import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from src.core import ensembles, verify
from src.core.matpoly import MATCH_TOL, polyeig
from src.core.numerics import scalar_roots
from src.domain.errors import DegreeError, DomainError, FamilyError, TheoremViolation
from src.domain.models import EnsembleSpec, Family, MatrixPolynomial

from tests.conftest import GOLDEN

RANK_ONE = np.full((2, 2), 0.5)


@pytest.mark.parametrize("coeffs, expected", [
    ([-1, 1, 1], 2.0),
    ([-1, 1], 2.0),
    ([20, 40, 1], 41.0),
    ([1, 0, 0, 2], 1.5),
])
def test_cauchy_bound(coeffs, expected):
    assert verify.cauchy_bound(coeffs) == pytest.approx(expected)


def test_cauchy_bound_rejects_degenerate():
    with pytest.raises(DegreeError):
        verify.cauchy_bound([1.0, 0.0])
    with pytest.raises(DegreeError):
        verify.cauchy_bound([3.0])


@settings(max_examples=100, deadline=None)
@given(st.lists(st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
                min_size=2, max_size=11).filter(lambda c: abs(c[-1]) > 1e-3))
def test_cauchy_bound_dominates_roots(coeffs):
    bound = verify.cauchy_bound(coeffs)
    assert scalar_roots(coeffs).max_modulus <= bound * (1 + 1e-8) + 1e-8


@pytest.mark.parametrize("values, tol, expected", [
    ([1, 1 + 1e-12, 2], 1e-9, 2),
    ([1, 2, 3], 1e-9, 3),
    ([1, 1.5, 2], 0.6, 1),
    ([0.5j], 1e-9, 1),
    ([], 1e-9, 0),
])
def test_distinct_count(values, tol, expected):
    assert verify.distinct_count(values, tol) == expected


def test_distinct_count_q2(q2):
    assert verify.distinct_count(polyeig(q2), 1e-6) == 4


def test_distinct_count_rejects_tol():
    with pytest.raises(ValueError):
        verify.distinct_count([1, 2], 0.0)


def test_annulus_check_q2(q2):
    report = verify.annulus_check(q2, "Q2")
    assert report.passed
    assert_allclose(sorted(report.moduli), [GOLDEN - 1, 1, 1, GOLDEN], atol=1e-10)
    assert report.inner_margin == pytest.approx(GOLDEN - 1.5, abs=1e-10)
    assert report.distinct == 4


def test_annulus_check_swap_pencil(swap_pencil):
    report = verify.annulus_check(swap_pencil)
    assert report.inner_margin == pytest.approx(0.5)
    assert report.outer_margin == pytest.approx(1.0)


def test_annulus_check_rejects_non_permutation_end():
    P = MatrixPolynomial((RANK_ONE, ensembles.IDENTITY_2))
    with pytest.raises(FamilyError) as info:
        verify.annulus_check(P)
    assert info.value.failed == ["permutation_ends"]


def test_annulus_check_unitary_family():
    P = ensembles.random_unitary_polynomial(3, 3, seed=9)
    assert verify.annulus_check(P, family=Family.UNITARY).passed
    with pytest.raises(DomainError):
        verify.annulus_check(P, family=Family.SR)


def test_disc_check_schur_witness():
    report = verify.disc_check(ensembles.schur_sup_witness(5, 10, 1.0), 1.0)
    assert report.passed
    assert report.margin > 0
    assert report.r_eff == pytest.approx(0.9)


def test_disc_check_mass_spring():
    report = verify.disc_check(ensembles.mass_spring(2), 50.0)
    assert report.passed
    assert report.max_modulus == pytest.approx(39.4936, abs=1e-3)
    assert report.max_modulus < report.declared_bound == 51.0


def test_disc_check_rejects_noncommuting():
    with pytest.raises(FamilyError) as info:
        verify.disc_check(ensembles.noncommuting_counterexample(8), 1.0)
    assert "commutativity" in info.value.failed


def test_disc_check_rejects_r():
    with pytest.raises(DomainError):
        verify.disc_check(ensembles.schur_sup_witness(2, 2, 1.0), 0.0)


def test_triangular_factors_reproduce_spectrum():
    P = ensembles.random_commuting_sr(3, 2, 1.0, seed=1)
    roots = np.concatenate([scalar_roots(f).eigenvalues for f in verify.triangular_factors(P)])
    expected = polyeig(P).eigenvalues
    assert_allclose(np.sort_complex(roots), np.sort_complex(expected), atol=1e-6)
    assert verify.diagonal_cauchy_bound(P) < 2.0


def test_triangular_factors_need_monic():
    with pytest.raises(FamilyError):
        verify.triangular_factors(MatrixPolynomial((np.eye(2), 2 * np.eye(2))))


@pytest.mark.parametrize("m", [1, 2, 3])
def test_unit_circle_eigs(m):
    P = ensembles.random_ds_polynomial(3, m, seed=m)
    points = verify.unit_circle_eigs(P)
    assert len(points) == m
    for j, (omega, residual) in enumerate(points, start=1):
        assert omega == pytest.approx(np.exp(2j * np.pi * j / (m + 1)))
        assert residual <= verify.UNIT_CIRCLE_TOL


def test_unit_circle_eigs_m1_is_minus_one(swap_pencil):
    (omega, _), = verify.unit_circle_eigs(swap_pencil)
    assert omega == pytest.approx(-1.0)


def test_unit_circle_eigs_singular_leading():
    P = ensembles.random_ds_polynomial(3, 2, seed=0, singular_leading=True)
    assert len(verify.unit_circle_eigs(P)) == 2


def test_unit_circle_eigs_null_residual_is_not_normalized():
    # P(-1)e = delta * e, so the residual is delta * sqrt(4) / (1 + delta)
    delta = 0.8e-6
    P = MatrixPolynomial(((1.0 + delta) * np.eye(4), np.eye(4)))
    with pytest.raises(TheoremViolation, match="not an eigenvalue"):
        verify.unit_circle_eigs(P, tol=1e-6)
    assert len(verify.unit_circle_eigs(P, tol=2e-6)) == 1


def test_unit_circle_eigs_rejects_non_ds():
    with pytest.raises(FamilyError):
        verify.unit_circle_eigs(ensembles.mass_spring(2))


def test_unit_circle_eigs_rejects_row_stochastic():
    # row sums 1, column sums not
    with pytest.raises(FamilyError):
        verify.unit_circle_eigs(MatrixPolynomial((np.array([[1.0, 0.0], [1.0, 0.0]]), np.eye(2))))


def test_divisibility_check_q2(q2):
    assert verify.divisibility_check(q2) <= 1e-12


def test_divisibility_check_random():
    P = ensembles.random_ds_polynomial(3, 3, seed=4)
    assert verify.divisibility_check(P) <= 1e-7


def test_unit_circle_report(q2):
    report = verify.unit_circle_report(q2, "Q2")
    assert report.passed
    assert report.distinct_unit == 2
    assert report.remainder <= 1e-12
    assert report.to_dict()["pass"] is True


def test_unit_circle_report_singular_leading_skips_spectrum():
    P = ensembles.random_ds_polynomial(2, 3, seed=1, singular_leading=True)
    report = verify.unit_circle_report(P)
    assert report.passed
    assert report.distinct_unit is None


def test_linearization_gap(q2):
    assert verify.linearization_gap(q2) <= MATCH_TOL


def test_run_trials_preserves_order():
    assert verify.run_trials(lambda s: s * s, [3, 1, 2], workers=3) == [9, 1, 4]
    assert verify.run_trials(lambda s: s * s, [3, 1, 2]) == [9, 1, 4]


def test_sweep_extremes_D_witnesses_only():
    report = verify.sweep_extremes(EnsembleSpec(Family.D, n=2, m=2, trials=0))
    assert report.passed
    assert report.observed_max >= 1.999
    assert report.observed_min < 0.56
    sups = [w.modulus for w in report.witnesses if w.label == "sup"]
    assert len(sups) == 12


def test_sweep_extremes_sr():
    report = verify.sweep_extremes(EnsembleSpec(Family.SR, n=2, m=2, r=1.0, trials=5))
    assert report.passed
    assert report.observed_min == pytest.approx(0.0, abs=1e-12)
    assert report.observed_max >= 1.99
    assert report.trials_run == 5


def test_sweep_extremes_small_r_skips_witnesses():
    report = verify.sweep_extremes(EnsembleSpec(Family.SR, n=2, m=2, r=0.1, trials=2))
    assert [w.parameter for w in report.witnesses if w.label == "sup"][0] == (16, 16)
