import json

import pandas as pd
import pytest

from src.domain.reports import VerificationReport
from src.infrastructure.report_writer import CSV_MODULI, JSON_REPORT, ReportWriter


@pytest.fixture
def report():
    report = VerificationReport(command="eig", config={"command": "eig", "seed": 0})
    report.add({"id": "a", "moduli": [0.5, 1.5], "pass": True})
    report.add({"id": "b", "moduli": [2.0], "pass": True})
    report.track_margin("inner", 0.25)
    return report


def test_render_json(report):
    doc = json.loads(ReportWriter().render(report, JSON_REPORT))
    assert doc["command"] == "eig"
    assert doc["summary"]["pass"] is True
    assert "runtime_s" not in doc["summary"]


def test_render_json_rejects_nan(report):
    report.track_margin("bad", float("nan"))
    with pytest.raises(ValueError):
        ReportWriter().render_json(report)


def test_moduli_frame(report):
    frame = ReportWriter().moduli_frame(report)
    assert list(frame.columns) == ["instance", "index", "modulus"]
    assert frame["instance"].tolist() == ["a", "a", "b"]
    assert frame["modulus"].tolist() == [0.5, 1.5, 2.0]


def test_render_csv(report):
    text = ReportWriter().render(report, CSV_MODULI)
    assert text.splitlines()[0] == "instance,index,modulus"
    assert len(text.splitlines()) == 4


def test_render_rejects_unknown_format(report):
    with pytest.raises(ValueError):
        ReportWriter().render(report, "yaml")


def test_write_to_file(report, tmp_path):
    path = tmp_path / "out.csv"
    ReportWriter().write(report, str(path), CSV_MODULI)
    assert pd.read_csv(path)["modulus"].sum() == pytest.approx(4.0)


def test_write_to_stdout(report, capsys):
    ReportWriter().write(report)
    assert json.loads(capsys.readouterr().out)["summary"]["instances"] == 2
