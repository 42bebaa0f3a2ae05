"""Tests for the report emitters."""

import io
import json
import math
from pathlib import Path

import numpy as np

from trojan_lab.data import RunConfig
from trojan_lab.output import Report, emit, flatten, format_cell, render


def _config(**overrides: object) -> RunConfig:
    return RunConfig.from_mapping({"subcommand": "tables", **overrides})


def _report() -> Report:
    report = Report("tables")
    report.add("first", [{"a": 1, "b": 0.5}, {"a": 2, "c": True}])
    report.add("second", [{"z": 1 + 2j, "v": np.array([1.0, 2.0])}])
    return report


def test_flatten_numpy() -> None:
    """Numpy scalars become plain Python values."""
    row = flatten({"k": np.float64(0.25), "n": np.int64(3), "ok": np.bool_(True)})
    assert row == {"k": 0.25, "n": 3, "ok": True}
    assert type(row["k"]) is float
    assert type(row["ok"]) is bool


def test_format_cell() -> None:
    """Cells are text with 17 significant digits for floats."""
    assert format_cell(None) == ""
    assert format_cell(False) == "false"
    assert format_cell(7) == "7"
    assert format_cell(-2.5) == "-2.5000000000000000e+00"
    assert float(format_cell(math.pi)) == math.pi
    assert format_cell("L4") == "L4"


def test_table_columns() -> None:
    """Columns follow first appearance across rows."""
    assert _report().tables[0].columns == ["a", "b", "c"]


def test_render_csv() -> None:
    """Delimited text has a metadata header and one block per table."""
    text = render(_report(), _config())
    lines = text.splitlines()
    assert lines[0] == "# trojan_lab tables"
    meta = json.loads(lines[1].removeprefix("# metadata: "))
    assert meta["program"] == "trojan_lab"
    assert "numpy" in meta["versions"]
    assert "# table: first" in lines
    start = lines.index("# table: first")
    assert lines[start + 1 : start + 4] == [
        "a,b,c",
        "1,5.0000000000000000e-01,",
        "2,,true",
    ]
    second = lines.index("# table: second")
    assert lines[second + 1] == "z.re,z.im,v.0,v.1"


def test_render_json() -> None:
    """Structured output keeps values typed; non-finite floats become text."""
    report = _report()
    report.add("edge", [{"inf": math.inf}])
    report.flag("something odd")
    payload = json.loads(render(report, _config(format="json")))
    assert payload["tables"]["first"][1] == {"a": 2, "c": True}
    assert payload["tables"]["second"][0]["z.im"] == 2.0
    assert payload["tables"]["edge"][0]["inf"] == "inf"
    assert payload["violations"] == ["something odd"]


def test_emit_stream_and_file(tmp_path: Path) -> None:
    """Reports go to the given stream, or to the configured file."""
    stream = io.StringIO()
    emit(_report(), _config(), stream)
    assert stream.getvalue().startswith("# trojan_lab tables")

    target = tmp_path / "out" / "report.csv"
    emit(_report(), _config(output=str(target)))
    assert target.read_text(encoding="utf-8") == stream.getvalue()
