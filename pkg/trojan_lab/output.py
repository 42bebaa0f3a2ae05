"""Emitters for experiment tables."""

from __future__ import annotations

import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any

import numpy as np
import scipy

from .const import COMMENT_PREFIX, DOMAIN, SIGNIFICANT_DIGITS, VERSION
from .mechanics.models.enums import OutputFormat

if TYPE_CHECKING:
    from collections.abc import Iterable, Mapping
    from typing import TextIO

    from .data import RunConfig


@dataclass(frozen=True)
class Table:
    """Named rows sharing one set of columns."""

    name: str
    rows: list[dict[str, Any]]

    @property
    def columns(self) -> list[str]:
        """Column names in order of first appearance."""
        seen: dict[str, None] = {}
        for row in self.rows:
            seen.update(dict.fromkeys(row))
        return list(seen)


@dataclass
class Report:
    """
    The tables of one run and the validity flags it raised.

    Attributes:
        subcommand (str): The subcommand that produced the report.
        tables (list[Table]): Emitted in order.
        violations (list[str]): Validity flags; fatal under --strict.

    """

    subcommand: str
    tables: list[Table] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)

    def add(self, name: str, rows: Iterable[Mapping[str, Any]]) -> None:
        """Append a table, flattening nested values of each row."""
        self.tables.append(Table(name=name, rows=[flatten(row) for row in rows]))

    def flag(self, message: str) -> None:
        """Record a validity violation."""
        self.violations.append(message)


def _plain(value: Any) -> Any:
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


def flatten(row: Mapping[str, Any], prefix: str = "") -> dict[str, Any]:
    """
    Flatten nested mappings and sequences to dotted column names.

    Complex numbers become .re and .im columns.

    >>> flatten({"C1": 1 + 2j, "p": {"x": [3, 4]}})
    {'C1.re': 1.0, 'C1.im': 2.0, 'p.x.0': 3, 'p.x.1': 4}

    """
    flat: dict[str, Any] = {}
    for key, value in row.items():
        name = f"{prefix}{key}"
        value = _plain(value)
        if isinstance(value, dict):
            flat.update(flatten(value, f"{name}."))
        elif isinstance(value, (list, tuple, np.ndarray)):
            flat.update(flatten(dict(enumerate(value)), f"{name}."))
        elif isinstance(value, complex):
            flat[f"{name}.re"] = value.real
            flat[f"{name}.im"] = value.imag
        else:
            flat[name] = value
    return flat


def metadata(config: RunConfig) -> dict[str, Any]:
    """Header describing what produced a set of tables."""
    return {
        "program": DOMAIN,
        **config.to_dict(),
        "versions": {
            DOMAIN: VERSION,
            "numpy": np.__version__,
            "scipy": scipy.__version__,
        },
    }


def format_cell(value: Any) -> str:
    """
    Render one delimited cell; floats carry 17 significant digits.

    >>> format_cell(0.1)
    '1.0000000000000001e-01'
    >>> format_cell(True)
    'true'

    """
    value = _plain(value)
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{value:.{SIGNIFICANT_DIGITS - 1}e}"
    return str(value)


def _json_safe(value: Any) -> Any:
    value = _plain(value)
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    if isinstance(value, dict):
        return {str(k): _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    return value


def render_csv(report: Report, config: RunConfig) -> str:
    """Delimited text with a commented metadata header."""
    buffer = io.StringIO()
    header = json.dumps(
        _json_safe(metadata(config)), sort_keys=True, separators=(",", ":")
    )
    buffer.write(f"{COMMENT_PREFIX}{DOMAIN} {report.subcommand}\n")
    buffer.write(f"{COMMENT_PREFIX}metadata: {header}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    for table in report.tables:
        columns = table.columns
        buffer.write(f"\n{COMMENT_PREFIX}table: {table.name}\n")
        writer.writerow(columns)
        for row in table.rows:
            writer.writerow([format_cell(row.get(column)) for column in columns])
    return buffer.getvalue()


def render_json(report: Report, config: RunConfig) -> str:
    """Structured records: metadata, tables and validity flags."""
    payload = {
        "metadata": metadata(config),
        "tables": {table.name: table.rows for table in report.tables},
        "violations": report.violations,
    }
    return (
        json.dumps(_json_safe(payload), indent=2, sort_keys=True, allow_nan=False)
        + "\n"
    )


def render(report: Report, config: RunConfig) -> str:
    """Render a report in the configured format."""
    if config.output_format is OutputFormat.JSON:
        return render_json(report, config)
    return render_csv(report, config)


def emit(report: Report, config: RunConfig, stream: TextIO | None = None) -> None:
    """Write a report to the configured file, or to stream when there is none."""
    text = render(report, config)
    if config.output is None:
        (stream or sys.stdout).write(text)
        return
    config.output.parent.mkdir(parents=True, exist_ok=True)
    config.output.write_text(text, encoding="utf-8", newline="")
