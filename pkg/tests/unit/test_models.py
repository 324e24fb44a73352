import numpy as np
import pytest

from src.domain.errors import DegreeError, DimensionError, DomainError
from src.domain.models import EnsembleSpec, Family, MatrixPolynomial, ScalarPolynomial, Spectrum
from src.domain.reports import AnnulusReport, DiscReport, VerificationReport


def test_matrix_polynomial_properties(q2):
    assert (q2.n, q2.m) == (2, 2)
    np.testing.assert_array_equal(q2.leading, np.eye(2))
    with pytest.raises(ValueError):
        q2.leading[0, 0] = 3


@pytest.mark.parametrize("coeffs, error", [
    ((np.ones((2, 3)),), DimensionError),
    ((np.eye(2), np.eye(3)), DimensionError),
    ((np.eye(2), np.zeros((2, 2))), DegreeError),
])
def test_matrix_polynomial_rejects(coeffs, error):
    with pytest.raises(error):
        MatrixPolynomial(coeffs)


def test_matrix_polynomial_equality(q2):
    assert q2 == MatrixPolynomial(q2.coeffs)
    assert q2 != MatrixPolynomial(q2.coeffs[1:])


def test_from_coeffs_trim():
    P = MatrixPolynomial.from_coeffs([np.eye(2), np.eye(2), np.zeros((2, 2))], trim=True)
    assert P.m == 1


def test_to_dict_uses_pairs():
    P = MatrixPolynomial((np.array([[1 + 2j]]), np.array([[1.0]])))
    assert P.to_dict() == {"n": 1, "m": 1, "coeffs": [[[[1.0, 2.0]]], [[[1.0, 0.0]]]]}


def test_scalar_polynomial():
    p = ScalarPolynomial.trimmed([2, -3, 1, 1e-14])
    assert p.degree == 2
    assert p(2.0) == 0
    quotient, remainder = p.divmod(ScalarPolynomial(np.array([-1, 1])))
    np.testing.assert_allclose(quotient.coeffs, [-2, 1])
    assert remainder.is_zero


def test_spectrum_needs_matching_residuals():
    with pytest.raises(DimensionError):
        Spectrum(np.array([1, 2]), np.array([0.0]))
    spectrum = Spectrum(np.array([3j, -1]), np.zeros(2))
    assert (spectrum.count, spectrum.max_modulus, spectrum.min_modulus) == (2, 3.0, 1.0)


@pytest.mark.parametrize("kwargs", [
    dict(family="S_r", n=2, m=2),
    dict(family="D", n=0, m=2),
    dict(family="D", n=2, m=2, trials=-1),
    dict(family="D", n=2, m=2, k=0),
])
def test_ensemble_spec_rejects(kwargs):
    with pytest.raises(DomainError):
        EnsembleSpec(**kwargs)


def test_ensemble_spec_coerces_family():
    assert EnsembleSpec("S_r", n=2, m=2, r=1.0).family is Family.SR


def test_annulus_report_slack():
    assert AnnulusReport.from_moduli("a", [0.5 - 5e-7, 1.0]).passed
    assert not AnnulusReport.from_moduli("a", [0.5 - 5e-6, 1.0]).passed
    assert not AnnulusReport.from_moduli("a", [1.0, 2.1]).passed


def test_disc_report_margin():
    report = DiscReport.from_moduli("d", [0.2, 1.5], r_declared=1.0, r_eff=0.8)
    assert report.bound == pytest.approx(1.8)
    assert report.margin == pytest.approx(0.3)
    assert report.passed


def test_verification_report_summary():
    report = VerificationReport(command="verify ds", config={"seed": 0})
    report.add({"id": "a", "pass": True})
    report.track_margin("inner", 0.2)
    report.track_margin("inner", 0.1)
    report.track_margin("outer", 0.4)
    assert report.passed
    report.add({"id": "b", "pass": False})
    doc = report.to_dict()
    assert doc["summary"] == {
        "pass": False,
        "instances": 2,
        "worst_margins": {"inner": 0.1, "outer": 0.4},
    }
