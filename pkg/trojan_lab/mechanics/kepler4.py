"""
Keplerian fourth law for a third body in an isosceles configuration.

rho = {(T3/T2)^(4/3) (1 + M2/M1)^2 - M2/M1}^(1/2) r2 links the radius of a
circular orbit about the mass centre of two primaries with its period.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import math
import os
from pathlib import Path
from typing import TYPE_CHECKING, Any, TextIO

from .const import DATA_DIR_ENV, LOGGER, REFERENCE_DIGIT_SLACK
from .exceptions import (
    ConfigurationError,
    DatasetError,
    ImaginaryRadiusError,
    MissingFieldError,
    UnitTagError,
)
from .models.bodies import BodyRecord, PrimaryPair, TableRow
from .models.enums import AxisUnit, OutputFormat, R2Convention

if TYPE_CHECKING:
    from collections.abc import Iterable, Mapping

REQUIRED_FIELDS = ("name", "mass_kg", "period_days", "axis", "axis_unit", "system")
PAIR_FIELDS = ("M1", "M2", "T2", "r2", "unit")

TABLES: tuple[tuple[str, str, AxisUnit], ...] = (
    ("The Solar System", "solar_system.csv", AxisUnit.AU),
    ("Moons of Jupiter", "jupiter_moons.csv", AxisUnit.KM),
    ("The Moons of Pluto", "pluto_moons.csv", AxisUnit.KM),
    ("Circumbinary Systems", "circumbinary.json", AxisUnit.AU),
)


def data_dir() -> Path:
    """Directory of the bundled fixtures, overridable through the environment."""
    override = os.environ.get(DATA_DIR_ENV)
    if override:
        return Path(override)
    return Path(__file__).parent / "data"


def predict_radius(pair: PrimaryPair, period: float) -> float:
    """
    Radius of the circular isosceles orbit with period T3.

    Arguments:
        pair: The primaries.
        period: Orbital period T3 of the third body, in days.

    Returns:
        rho in the length unit of pair.r2.

    Raises:
        ConfigurationError: If the period is not positive.
        ImaginaryRadiusError: If the brace in the formula is negative.

    Example usage:

    >>> pair = PrimaryPair("toy", 1.0, 0.5, 1.0, 2.0, AxisUnit.AU)
    >>> round(predict_radius(pair, 1.0), 6)
    2.645751

    """
    if not (math.isfinite(period) and period > 0):
        msg = f"Period must be positive, got {period}"
        raise ConfigurationError(msg)
    m = pair.mass_ratio
    brace = (period / pair.T2) ** (4.0 / 3.0) * (1.0 + m) ** 2 - m
    if brace < 0:
        msg = f"{pair.name}: period {period} gives an imaginary radius"
        raise ImaginaryRadiusError(msg)
    return math.sqrt(brace) * pair.secondary_distance


def is_valid(pair: PrimaryPair, rho: float) -> bool:
    """Whether rho exceeds (r2 - r1) / 2, where the isosceles triangle exists."""
    return rho > (pair.secondary_distance - pair.r1) / 2.0


def invert_period(pair: PrimaryPair, rho: float) -> float:
    """
    Period T3 of the circular isosceles orbit of radius rho.

    Raises:
        ConfigurationError: If rho is not positive.

    """
    if not (math.isfinite(rho) and rho > 0):
        msg = f"Radius must be positive, got {rho}"
        raise ConfigurationError(msg)
    m = pair.mass_ratio
    scaled = ((rho / pair.secondary_distance) ** 2 + m) / (1.0 + m) ** 2
    return pair.T2 * scaled**0.75


# Ingestion


def _missing(fields: Mapping[str, Any], key: str) -> bool:
    value = fields.get(key)
    return value is None or not str(value).strip()


def _number(fields: Mapping[str, Any], key: str, row: int) -> float:
    try:
        value = float(str(fields[key]).strip())
    except ValueError:
        msg = f"malformed number {fields[key]!r}"
        raise DatasetError(msg, row=row, column=key) from None
    if not math.isfinite(value):
        msg = f"non-finite number {fields[key]!r}"
        raise DatasetError(msg, row=row, column=key)
    return value


def _record(fields: Mapping[str, Any], row: int, source: str) -> BodyRecord:
    for key in REQUIRED_FIELDS:
        if _missing(fields, key):
            if key == "axis_unit":
                msg = "length has no unit tag"
                raise UnitTagError(msg, row=row, column=key)
            msg = "required field is empty"
            raise MissingFieldError(msg, row=row, column=key)
    unit = AxisUnit.from_str(str(fields["axis_unit"]))
    if unit is None:
        msg = f"unknown unit tag {fields['axis_unit']!r}"
        raise UnitTagError(msg, row=row, column="axis_unit")
    reference = None if _missing(fields, "reference_rho") else fields["reference_rho"]
    provenance = "" if _missing(fields, "provenance") else fields["provenance"]
    try:
        return BodyRecord(
            name=str(fields["name"]).strip(),
            mass=_number(fields, "mass_kg", row),
            period=_number(fields, "period_days", row),
            semi_major_axis=_number(fields, "axis", row),
            axis_unit=unit,
            parent_system=str(fields["system"]).strip(),
            reference_rho=None if reference is None else str(reference).strip(),
            provenance=str(provenance).strip() or source,
        )
    except ConfigurationError as err:
        raise DatasetError(str(err), row=row) from err


def _read_delimited(text: str, source: str) -> list[BodyRecord]:
    reader = csv.reader(io.StringIO(text))
    header: list[str] | None = None
    records: list[BodyRecord] = []
    for row in reader:
        if not row or row[0].lstrip().startswith("#"):
            continue
        if header is None:
            header = [name.strip() for name in row]
            for key in REQUIRED_FIELDS:
                if key not in header:
                    msg = "header lacks a required column"
                    raise MissingFieldError(msg, row=reader.line_num, column=key)
            continue
        if len(row) != len(header):
            msg = f"expected {len(header)} columns, found {len(row)}"
            raise DatasetError(msg, row=reader.line_num)
        fields = dict(zip(header, row, strict=True))
        records.append(_record(fields, reader.line_num, source))
    return records


def _read_structured(text: str, source: str) -> list[BodyRecord]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        msg = f"{err.msg} at column {err.colno}"
        raise DatasetError(msg, row=err.lineno) from err
    entries = data.get("records", []) if isinstance(data, dict) else data
    if not isinstance(entries, list):
        msg = "expected a list of records"
        raise DatasetError(msg)
    records = []
    for index, entry in enumerate(entries, start=1):
        if not isinstance(entry, dict):
            msg = "record is not an object"
            raise DatasetError(msg, row=index)
        records.append(_record(entry, index, source))
    return records


def ingest(
    source: str | Path | TextIO,
    fmt: OutputFormat | None = None,
    *,
    unit: AxisUnit | None = None,
    logger: Any = LOGGER,
) -> list[BodyRecord]:
    """
    Read body records from delimited text or structured records.

    Delimited text has a header naming at least name, mass_kg, period_days,
    axis, axis_unit and system; lines starting with # are comments. The
    structured form is a JSON list of objects with the same keys, optionally
    wrapped as {"records": [...]}.

    Arguments:
        source: A path, or an open text stream.
        fmt: The format; taken from the file suffix when None.
        unit: Convert every axis to this unit when given.
        logger: Receives a summary of what was read.

    Returns:
        The records in file order; an empty input gives an empty list.

    Raises:
        DatasetError: For malformed input, addressed by row and column.
        MissingFieldError: For an absent or empty required field.
        UnitTagError: For a missing or unknown axis unit.

    """
    if isinstance(source, (str, Path)):
        path = Path(source)
        text = path.read_text(encoding="utf-8")
        name = path.name
        if fmt is None:
            fmt = OutputFormat.JSON if path.suffix == ".json" else OutputFormat.CSV
    else:
        text = source.read()
        name = getattr(source, "name", "<stream>")
    if not text.strip():
        logger.debug("No records in %s", name)
        return []

    if fmt is OutputFormat.JSON:
        records = _read_structured(text, name)
    else:
        records = _read_delimited(text, name)
    if unit is not None:
        records = [
            dataclasses.replace(r, semi_major_axis=r.axis_in(unit), axis_unit=unit)
            for r in records
        ]
    logger.debug("Read %d records from %s", len(records), name)
    return records


def load_pairs(source: str | Path | None = None) -> dict[str, PrimaryPair]:
    """
    Read the primary pairs keyed by system name.

    Raises:
        MissingFieldError: If a pair lacks M1, M2, T2, r2 or unit.
        UnitTagError: For an unknown unit.
        DatasetError: For an unknown r2 convention or unparsable JSON.

    """
    path = Path(source) if source is not None else data_dir() / "pairs.json"
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as err:
        msg = f"{path.name}: {err.msg} at column {err.colno}"
        raise DatasetError(msg, row=err.lineno) from err

    pairs = {}
    for index, (name, entry) in enumerate(data.get("pairs", {}).items(), start=1):
        for key in PAIR_FIELDS:
            if _missing(entry, key):
                msg = f"pair {name!r} lacks a field"
                raise MissingFieldError(msg, row=index, column=key)
        unit = AxisUnit.from_str(str(entry["unit"]))
        if unit is None:
            msg = f"unknown unit tag {entry['unit']!r}"
            raise UnitTagError(msg, row=index, column="unit")
        convention = R2Convention.from_str(entry.get("convention", "heliocentric"))
        if convention is None:
            msg = f"unknown r2 convention {entry.get('convention')!r}"
            raise DatasetError(msg, row=index, column="convention")
        try:
            pairs[name] = PrimaryPair(
                name=name,
                M1=_number(entry, "M1", index),
                M2=_number(entry, "M2", index),
                T2=_number(entry, "T2", index),
                r2=_number(entry, "r2", index),
                unit=unit,
                convention=convention,
            )
        except ConfigurationError as err:
            raise DatasetError(str(err), row=index) from err
    return pairs


# Tables


def _matches_reference(record: BodyRecord, predicted: float) -> bool | None:
    reference, digit = record.reference_value, record.reference_unit
    if reference is None or digit is None:
        return None
    return abs(predicted - reference) <= digit * (1.0 + REFERENCE_DIGIT_SLACK)


def reproduce_table(
    records: Iterable[BodyRecord],
    pairs: PrimaryPair | Mapping[str, PrimaryPair],
    *,
    logger: Any = LOGGER,
) -> list[TableRow]:
    """
    Predict each body's radius and compare it with the observed orbit.

    Arguments:
        records: The bodies.
        pairs: One pair for every record, or pairs keyed by parent system.
        logger: Receives rows that miss the printed digit or the validity bound.

    Returns:
        One row per record, lengths in the pair's unit.

    Raises:
        DatasetError: If a record's system has no pair.

    """
    rows = []
    for record in records:
        if isinstance(pairs, PrimaryPair):
            pair = pairs
        else:
            pair = pairs.get(record.parent_system)
            if pair is None:
                msg = f"{record.name}: no primary pair for {record.parent_system!r}"
                raise DatasetError(msg)
        observed = record.axis_in(pair.unit)
        predicted = predict_radius(pair, record.period)
        valid = is_valid(pair, predicted)
        matches = _matches_reference(record, predicted)
        if not valid:
            logger.warning(
                "%s: rho = %s does not exceed (r2 - r1)/2", record.name, predicted
            )
        if matches is False:
            logger.warning(
                "%s: predicted %s misses the printed %s (%s)",
                record.name,
                predicted,
                record.reference_rho,
                record.provenance,
            )
        rows.append(
            TableRow(
                name=record.name,
                observed_axis=observed,
                predicted_rho=predicted,
                relative_error=(predicted - observed) / observed,
                valid=valid,
                reference_rho=record.reference_rho,
                matches_reference=matches,
                provenance=record.provenance,
            )
        )
    return rows


def reproduce_tables(
    directory: str | Path | None = None, *, logger: Any = LOGGER
) -> dict[str, list[TableRow]]:
    """Reproduce every bundled table, keyed by title."""
    root = Path(directory) if directory is not None else data_dir()
    pairs = load_pairs(root / "pairs.json")
    return {
        title: reproduce_table(ingest(root / name, logger=logger), pairs, logger=logger)
        for title, name, _ in TABLES
    }


def _decimals(text: str | None) -> int | None:
    if text is None or "." not in text:
        return None if text is None else 0
    return len(text.split(".", 1)[1])


def render_table(title: str, rows: Iterable[TableRow], unit: AxisUnit) -> str:
    """
    Render rows as an aligned plain-text table.

    Predicted radii are printed to the digits of the published value where
    one exists.
    """
    label = "Au" if unit is AxisUnit.AU else "km"
    header = ("Body", f"Semi-Major Axis ({label})", f"Predicted rho ({label})", "Error")
    body = []
    for row in rows:
        digits = _decimals(row.reference_rho)
        if digits is None:
            predicted = f"{row.predicted_rho:.10g}"
        else:
            predicted = f"{row.predicted_rho:.{digits}f}"
        body.append(
            (
                row.name,
                f"{row.observed_axis:.10g}",
                predicted,
                f"{100.0 * row.relative_error:+.2f}%",
            )
        )
    widths = [max(len(line[i]) for line in (header, *body)) for i in range(4)]
    rule = "-+-".join("-" * w for w in widths)
    lines = [title, " | ".join(h.ljust(w) for h, w in zip(header, widths, strict=True))]
    lines.append(rule)
    lines.extend(
        " | ".join(
            cell.ljust(w) if i == 0 else cell.rjust(w)
            for i, (cell, w) in enumerate(zip(line, widths, strict=True))
        )
        for line in body
    )
    return "\n".join(lines)
