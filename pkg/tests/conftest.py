"""Shared polynomials used across the test suite."""

import numpy as np
import pytest

from src.core.ensembles import IDENTITY_2, SWAP_2, extremal_sup_witness
from src.domain.models import MatrixPolynomial

GOLDEN = (1 + np.sqrt(5)) / 2


@pytest.fixture
def q2():
    """Iλ² + I′λ + I′, det = λ⁴ − λ² − 2λ − 1."""
    return extremal_sup_witness(2)


@pytest.fixture
def swap_pencil():
    """Iλ + I′, det = λ² − 1."""
    return MatrixPolynomial((SWAP_2, IDENTITY_2))


@pytest.fixture
def tmp_polynomial(tmp_path, q2):
    """Q₂ written in the text format."""
    from src.infrastructure.polynomial_store import PolynomialStore

    path = tmp_path / "q2.json"
    PolynomialStore().save(q2, str(path))
    return path
