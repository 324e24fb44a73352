"""MatrixPolynomial text format: parsing, loading and saving.

A document is a JSON object with integer fields `n` and `m` and a list
`coeffs` of m+1 matrices (ascending degree), each n rows of n [re, im] pairs.

Parsing accepts integer or float parts. Saving always writes floats, so that
form is canonical: a file written by `save` reloads and resaves byte for byte.
"""

import json
import logging
import numbers
from typing import Any

import numpy as np

from ..domain.errors import PolyEigError, PolynomialParseError
from ..domain.models import MatrixPolynomial


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _is_real(value: Any) -> bool:
    return isinstance(value, numbers.Real) and not isinstance(value, bool)


class PolynomialStore:
    """File-backed reader and writer for the MatrixPolynomial text format."""

    def __init__(self, indent: int = 2):
        self.indent = indent
        self.logger = logging.getLogger(__name__)

    def parse(self, document: Any) -> MatrixPolynomial:
        """Build a MatrixPolynomial from a decoded document."""
        if not isinstance(document, dict):
            raise PolynomialParseError("document", "expected an object with n, m and coeffs")
        for name in ("n", "m", "coeffs"):
            if name not in document:
                raise PolynomialParseError(name, "missing field")

        n, m, coeffs = document["n"], document["m"], document["coeffs"]
        if not _is_int(n) or n < 1:
            raise PolynomialParseError("n", f"expected a positive integer, got {n!r}")
        if not _is_int(m) or m < 0:
            raise PolynomialParseError("m", f"expected a nonnegative integer, got {m!r}")
        if not isinstance(coeffs, list) or len(coeffs) != m + 1:
            got = len(coeffs) if isinstance(coeffs, list) else type(coeffs).__name__
            raise PolynomialParseError("coeffs", f"expected a list of {m + 1} matrices, got {got}")

        matrices = [self._parse_matrix(coeff, n, i) for i, coeff in enumerate(coeffs)]
        try:
            return MatrixPolynomial(tuple(matrices))
        except PolyEigError as exc:
            raise PolynomialParseError("coeffs", str(exc), index=m) from exc

    def _parse_matrix(self, rows: Any, n: int, index: int) -> np.ndarray:
        if not isinstance(rows, list) or len(rows) != n:
            raise PolynomialParseError("coeffs", f"expected {n} rows", index=index)
        matrix = np.zeros((n, n), dtype=np.complex128)
        for i, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != n:
                raise PolynomialParseError("coeffs", f"row {i}: expected {n} entries", index=index)
            for j, pair in enumerate(row):
                if not (isinstance(pair, list) and len(pair) == 2
                        and _is_real(pair[0]) and _is_real(pair[1])):
                    raise PolynomialParseError(
                        "coeffs", f"entry ({i}, {j}): expected [re, im], got {pair!r}", index=index
                    )
                matrix[i, j] = complex(pair[0], pair[1])
        if not np.all(np.isfinite(matrix)):
            raise PolynomialParseError("coeffs", "non-finite entry", index=index)
        return matrix

    def loads(self, text: str) -> MatrixPolynomial:
        try:
            document = json.loads(text)
        except json.JSONDecodeError as exc:
            raise PolynomialParseError("document", f"invalid JSON: {exc}") from exc
        return self.parse(document)

    def dumps(self, P: MatrixPolynomial) -> str:
        return json.dumps(P.to_dict(), indent=self.indent) + "\n"

    def load(self, path: str) -> MatrixPolynomial:
        """Load a polynomial from a file."""
        with open(path, "r", encoding="utf-8") as handle:
            P = self.loads(handle.read())
        self.logger.debug(f"Loaded n={P.n}, m={P.m} polynomial from {path}")
        return P

    def save(self, P: MatrixPolynomial, path: str) -> None:
        """Save a polynomial to a file."""
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(self.dumps(P))
        self.logger.debug(f"Saved n={P.n}, m={P.m} polynomial to {path}")
