"""Report output: JSON documents and flat CSV of eigenvalue moduli."""

import io
import json
import logging
import sys
from typing import Optional

import pandas as pd

from ..domain.reports import VerificationReport

JSON_REPORT = "json-report"
CSV_MODULI = "csv-moduli"
FORMATS = (JSON_REPORT, CSV_MODULI)


class ReportWriter:
    """Render a VerificationReport and write it to a file or stdout."""

    def __init__(self, indent: int = 2):
        self.indent = indent
        self.logger = logging.getLogger(__name__)

    def render_json(self, report: VerificationReport) -> str:
        return json.dumps(report.to_dict(), indent=self.indent, allow_nan=False) + "\n"

    def moduli_frame(self, report: VerificationReport) -> pd.DataFrame:
        """One row per reported modulus: instance id, position, modulus."""
        rows = [
            {"instance": instance.get("id", str(i)), "index": j, "modulus": modulus}
            for i, instance in enumerate(report.instances)
            for j, modulus in enumerate(instance.get("moduli", []))
        ]
        return pd.DataFrame(rows, columns=["instance", "index", "modulus"])

    def render_csv(self, report: VerificationReport) -> str:
        buffer = io.StringIO()
        self.moduli_frame(report).to_csv(buffer, index=False, lineterminator="\n")
        return buffer.getvalue()

    def render(self, report: VerificationReport, output_format: str = JSON_REPORT) -> str:
        if output_format == JSON_REPORT:
            return self.render_json(report)
        if output_format == CSV_MODULI:
            return self.render_csv(report)
        raise ValueError(f"unknown output format {output_format!r}")

    def write(
        self,
        report: VerificationReport,
        path: Optional[str] = None,
        output_format: str = JSON_REPORT,
    ) -> None:
        """Write once, to `path` or to stdout."""
        text = self.render(report, output_format)
        if path is None:
            sys.stdout.write(text)
            sys.stdout.flush()
            return
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
        self.logger.info(f"Report written to {path}")
