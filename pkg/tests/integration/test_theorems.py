"""Full verification campaigns over the random families and witness sequences."""

import time

import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.core import ensembles, verify
from src.core.matpoly import MATCH_TOL, det_poly, evaluate, polyeig, residual_scale
from src.core.numerics import make_rng, scalar_roots, sigma_min
from src.domain.models import EnsembleSpec, Family, MatrixPolynomial

pytestmark = pytest.mark.integration

SLACK = 1e-6


def d_instance(seed):
    rng = make_rng(10_000 + seed)
    n, m = int(rng.integers(2, 7)), int(rng.integers(2, 6))
    return ensembles.random_D_polynomial(n, m, seed=seed)


def test_annulus_and_two_distinct_over_500_instances():
    start = time.perf_counter()
    for seed in range(500):
        P = d_instance(seed)
        spectrum = polyeig(P)
        assert np.all(spectrum.moduli > 0.5 - SLACK), seed
        assert np.all(spectrum.moduli < 2.0 + SLACK), seed
        assert verify.distinct_count(spectrum, 1e-6) >= 2, seed
    assert time.perf_counter() - start < 60


@pytest.mark.parametrize("r", [0.6, 0.55, 0.51])
def test_inf_witness_strictly_inside(r):
    P, _ = ensembles.extremal_inf_witness(r)
    assert 0.5 < polyeig(P).min_modulus < r


def test_inf_witness_degree_two():
    P, d = ensembles.extremal_inf_witness(0.7)
    assert d == 2
    assert polyeig(P).min_modulus == pytest.approx(0.6180339887, abs=1e-8)


def test_sup_witness_values():
    tops = {m: polyeig(ensembles.extremal_sup_witness(m)).max_modulus for m in (2, 3, 12)}
    assert tops[2] == pytest.approx(1.6180339887, abs=1e-8)
    assert tops[3] == pytest.approx(1.8392867552, abs=1e-7)
    assert 1.999 < tops[12] < 2.0


@pytest.mark.parametrize("seed", range(200))
def test_unit_circle_guarantee(seed):
    rng = make_rng(20_000 + seed)
    n, m = int(rng.integers(1, 5)), int(rng.integers(1, 5))
    P = ensembles.random_ds_polynomial(n, m, seed=seed, singular_leading=seed % 4 == 3 and n > 1)
    ones = np.ones(n)
    for j in range(1, m + 1):
        omega = np.exp(2j * np.pi * j / (m + 1))
        value = evaluate(P, omega)
        scale = residual_scale(P, omega)
        assert np.linalg.norm(value @ ones) <= 1e-8 * scale
        assert sigma_min(value) <= 1e-7 * scale
    report = verify.unit_circle_report(P, f"trial-{seed}")
    assert report.passed
    if m * n <= 12:
        assert report.remainder <= 1e-7 * max(report.remainder_scale, 1.0)


@pytest.mark.parametrize("r", [0.5, 1.0, 2.0])
def test_disc_over_500_instances(r):
    for seed in range(500):
        rng = make_rng(30_000 + seed)
        n, m = int(rng.integers(1, 6)), int(rng.integers(1, 5))
        report = verify.disc_check(
            ensembles.random_commuting_sr(n, m, r, seed), r, with_factors=False
        )
        assert report.max_modulus < report.r_eff + 1 + SLACK, (r, seed)


def test_schur_witness_sweep_reaches_limit():
    report = verify.sweep_extremes(EnsembleSpec(Family.SR, n=2, m=2, r=1.0, trials=0))
    at_64 = [w.modulus for w in report.witnesses if w.parameter == (64, 64)]
    assert at_64[0] > 1.98
    assert report.observed_max >= 1.99


@pytest.mark.parametrize("n_param, expected", [(8, 4.0), (64, 16.0), (512, 64.0)])
def test_noncommuting_moduli_grow(n_param, expected):
    moduli = np.sort(polyeig(ensembles.noncommuting_counterexample(n_param)).moduli)
    assert moduli[0] < 1e-6 * expected
    assert_allclose(moduli[1:], expected, rtol=1e-5)


def test_mass_spring_fifty():
    P = ensembles.mass_spring(50)
    spectrum = polyeig(P)
    report = verify.disc_check(P, 50.0)
    assert spectrum.max_modulus <= 51
    assert report.r_eff < 50
    assert spectrum.max_modulus < report.r_eff + 1


def test_mass_spring_two():
    moduli = np.sort(polyeig(ensembles.mass_spring(2)).moduli)
    assert_allclose(moduli, [0.5064, 0.5132, 19.4868, 39.4936], atol=1e-3)


@pytest.mark.parametrize("seed", range(50))
def test_polyeig_matches_det_roots(seed):
    rng = make_rng(40_000 + seed)
    n, m = int(rng.integers(1, 4)), int(rng.integers(1, 4))
    coeffs = [rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)) for _ in range(m + 1)]
    P = MatrixPolynomial(tuple(coeffs))
    scale = max(1.0, polyeig(P).max_modulus)
    assert verify.linearization_gap(P) <= MATCH_TOL * scale


def test_cauchy_dominance_200_polynomials():
    rng = make_rng(50_000)
    for _ in range(200):
        degree = int(rng.integers(1, 11))
        coeffs = rng.uniform(-10, 10, degree + 1) + 1j * rng.uniform(-10, 10, degree + 1)
        roots = scalar_roots(coeffs)
        assert roots.max_modulus <= verify.cauchy_bound(coeffs) + 1e-8


def test_sweep_D_with_trials():
    report = verify.sweep_extremes(EnsembleSpec(Family.D, n=3, m=3, trials=50), workers=4)
    assert report.passed
    assert report.trials_run == 50


def test_det_poly_degree_with_singular_leading():
    P = ensembles.random_ds_polynomial(3, 2, seed=1, singular_leading=True)
    # J/3 has rank one: det P has degree at most (m − 1)n + 1
    assert det_poly(P).degree <= 4
