"""Tests for the Keplerian fourth law and its datasets."""

import io
import json
import math
from pathlib import Path
from unittest.mock import MagicMock

import pytest

from trojan_lab.mechanics.const import AU_KM, DATA_DIR_ENV
from trojan_lab.mechanics.exceptions import (
    ConfigurationError,
    DatasetError,
    ImaginaryRadiusError,
    MissingFieldError,
    UnitTagError,
)
from trojan_lab.mechanics.frame import lagrange_points
from trojan_lab.mechanics.kepler4 import (
    TABLES,
    data_dir,
    ingest,
    invert_period,
    is_valid,
    load_pairs,
    predict_radius,
    render_table,
    reproduce_table,
    reproduce_tables,
)
from trojan_lab.mechanics.models.bodies import BodyRecord, PrimaryPair
from trojan_lab.mechanics.models.enums import AxisUnit, OutputFormat, R2Convention
from trojan_lab.mechanics.models.system import SystemParams

HEADER = "name,mass_kg,period_days,axis,axis_unit,system\n"
PLUTO = PrimaryPair("pluto-charon", 1.303e22, 1.586e21, 6.38723, 17536, AxisUnit.KM)


@pytest.fixture(scope="module")
def tables() -> dict:
    """Reproduce every bundled table once."""
    return reproduce_tables()


@pytest.mark.parametrize(
    ("title", "body", "printed", "digit"),
    [
        ("The Solar System", "Saturn", 9.54, 0.01),
        ("Circumbinary Systems", "Kepler-16b", 0.6985, 1e-4),
        ("Circumbinary Systems", "Kepler-34b", 1.0836, 1e-4),
        ("Circumbinary Systems", "Kepler-38b", 0.4604, 1e-4),
    ],
)
def test_printed_predictions(
    tables: dict, title: str, body: str, printed: float, digit: float
) -> None:
    """Test spot rows against the printed predicted radius."""
    row = next(r for r in tables[title] if r.name == body)
    assert abs(row.predicted_rho - printed) <= digit


def test_catalogue_periods_flag_missed_rows(tables: dict) -> None:
    """Test which rows reproduce their printed radius from catalogue periods."""
    assert [len(tables[title]) for title, _, _ in TABLES] == [4, 12, 4, 4]
    rows = [row for title_rows in tables.values() for row in title_rows]
    matched = {row.name for row in rows if row.matches_reference}
    assert matched == {"Saturn", "Kepler-16b", "Kepler-34b", "Kepler-38b"}
    for row in rows:
        assert row.valid
        assert row.provenance
        printed = float(row.reference_rho)
        assert abs(row.predicted_rho - printed) < 1e-2 * printed, row.name


def test_fixtures_hold_catalogue_periods() -> None:
    """Test that the bundled periods are the catalogue values."""
    periods = {
        record.name: record.period
        for _, name, _ in TABLES
        for record in ingest(data_dir() / name)
    }
    assert periods["Saturn"] == 10759.22
    assert periods["Europa"] == 3.551181
    assert periods["Valetudo"] == 532.00
    assert periods["Hydra"] == 38.20177
    assert periods["Kepler-35b"] == 131.458


def test_kepler_third_law_limit() -> None:
    """Test that M2 -> 0 gives rho = (T3/T2)^(2/3) r2."""
    pair = PrimaryPair("sun", 1.0, 1e-20, 365.25, 1.0, AxisUnit.AU)
    for period in (100.0, 365.25, 4000.0):
        expected = (period / 365.25) ** (2.0 / 3.0)
        assert abs(predict_radius(pair, period) - expected) / expected < 1e-12


def test_equal_periods_give_lagrange_radius() -> None:
    """Test T3 = T2 gives sqrt(1 + m + m^2) r2, the L4 distance."""
    pair = PrimaryPair("toy", 1.0, 0.12172, 6.0, 2.0, AxisUnit.KM)
    m = pair.mass_ratio
    rho = predict_radius(pair, 6.0)
    assert rho == pytest.approx(math.sqrt(1.0 + m + m * m) * 2.0, rel=1e-14)

    params = SystemParams(mu1=1.0, mu2=0.12172, a0=2.0 * (1.0 + m))
    assert rho == pytest.approx(math.hypot(*lagrange_points(params).l4), rel=1e-12)


def test_prediction_is_monotone() -> None:
    """Test rho strictly increases with the period."""
    radii = [predict_radius(PLUTO, period) for period in (7.0, 10.0, 20.0, 40.0, 80.0)]
    assert all(a < b for a, b in zip(radii, radii[1:], strict=False))


@pytest.mark.parametrize("convention", list(R2Convention))
def test_invert_period_round_trip(convention: R2Convention) -> None:
    """Test that inverting the prediction recovers T3."""
    pair = PrimaryPair("pair", 1.0, 0.9, 20.0, 0.2, AxisUnit.AU, convention)
    for period in (25.0, 131.3, 900.0):
        rho = predict_radius(pair, period)
        assert invert_period(pair, rho) == pytest.approx(period, rel=1e-10)


def test_binary_separation_convention() -> None:
    """Test r2 = a / (1 + m) for a quoted binary separation."""
    pair = PrimaryPair(
        "binary", 1.0, 0.5, 20.0, 0.3, AxisUnit.AU, R2Convention.BINARY_SEPARATION
    )
    assert pair.secondary_distance == pytest.approx(0.2)
    assert pair.r1 == pytest.approx(0.1)


def test_imaginary_radius() -> None:
    """Test that a short period with a heavy secondary is rejected."""
    pair = PrimaryPair("pair", 1.0, 0.97, 30.0, 0.2, AxisUnit.AU)
    with pytest.raises(ImaginaryRadiusError):
        predict_radius(pair, 3.0)
    with pytest.raises(ConfigurationError):
        predict_radius(pair, 0.0)
    with pytest.raises(ConfigurationError):
        invert_period(pair, -1.0)


def test_validity_bound() -> None:
    """Test rho > (r2 - r1) / 2."""
    pair = PrimaryPair("toy", 1.0, 0.5, 1.0, 2.0, AxisUnit.AU)
    assert not is_valid(pair, 0.4)
    assert is_valid(pair, 0.6)


def test_ingest_solar_fixture() -> None:
    """Test the outer planets and their provenance."""
    records = ingest(data_dir() / "solar_system.csv")
    assert [r.name for r in records] == ["Saturn", "Uranus", "Neptune", "Pluto"]
    assert all(r.axis_unit is AxisUnit.AU for r in records)
    assert "nssdc" in records[0].provenance
    assert records[0].reference_rho == "9.54"


def test_ingest_unit_normalisation() -> None:
    """Test conversion of every axis to kilometres."""
    records = ingest(data_dir() / "solar_system.csv", unit=AxisUnit.KM)
    assert records[0].axis_unit is AxisUnit.KM
    assert records[0].semi_major_axis == pytest.approx(9.57 * AU_KM)


def test_ingest_structured_stream() -> None:
    """Test a bare JSON list read from a stream."""
    stream = io.StringIO(
        json.dumps(
            [
                {
                    "name": "Nix",
                    "mass_kg": 4.5e16,
                    "period_days": 24.85,
                    "axis": 48690,
                    "axis_unit": "km",
                    "system": "pluto-charon",
                }
            ]
        )
    )
    (record,) = ingest(stream, OutputFormat.JSON)
    assert record.name == "Nix"
    assert record.reference_rho is None
    assert record.provenance == "<stream>"


@pytest.mark.parametrize("text", ["", "   \n", "# only a comment\n"])
def test_ingest_empty(text: str) -> None:
    """Test that an input without records gives an empty collection."""
    assert ingest(io.StringIO(text)) == []


def test_ingest_empty_file(tmp_path: Path) -> None:
    """Test an empty file on disk."""
    path = tmp_path / "empty.csv"
    path.write_text("", encoding="utf-8")
    assert ingest(path) == []


def test_ingest_malformed_mass() -> None:
    """Test that a bad number names its row and column."""
    text = (
        HEADER
        + "Nix,4.5e16,24.85,48690,km,pluto-charon\n"
        + "Hydra,heavy,38.2,64740,km,pluto-charon\n"
    )
    with pytest.raises(DatasetError) as err:
        ingest(io.StringIO(text))
    assert err.value.row == 3
    assert err.value.column == "mass_kg"
    assert "row 3, column 'mass_kg'" in str(err.value)


@pytest.mark.parametrize(
    ("line", "error", "column"),
    [
        ("Nix,4.5e16,24.85,48690,,pluto-charon", UnitTagError, "axis_unit"),
        ("Nix,4.5e16,24.85,48690,parsec,pluto-charon", UnitTagError, "axis_unit"),
        (",4.5e16,24.85,48690,km,pluto-charon", MissingFieldError, "name"),
        ("Nix,4.5e16,-24.85,48690,km,pluto-charon", DatasetError, None),
    ],
)
def test_ingest_row_errors(line: str, error: type, column: str | None) -> None:
    """Test row-addressed errors for unit tags, empty fields and bad values."""
    with pytest.raises(error) as err:
        ingest(io.StringIO(HEADER + line + "\n"))
    assert err.value.row == 2
    assert err.value.column == column


def test_ingest_header_and_width_errors() -> None:
    """Test a missing column and a short row."""
    with pytest.raises(MissingFieldError):
        ingest(io.StringIO("name,mass_kg,period_days,axis,system\n"))
    with pytest.raises(DatasetError):
        ingest(io.StringIO(HEADER + "Nix,4.5e16,24.85\n"))


def test_ingest_bad_json(tmp_path: Path) -> None:
    """Test that unparsable JSON reports its line."""
    path = tmp_path / "bad.json"
    path.write_text('{\n  "records": [\n    {"name": }\n  ]\n}\n', encoding="utf-8")
    with pytest.raises(DatasetError) as err:
        ingest(path)
    assert err.value.row == 3


def test_load_pairs() -> None:
    """Test the bundled pairs and their conventions."""
    pairs = load_pairs()
    assert len(pairs) == 7
    assert pairs["kepler-34"].convention is R2Convention.BINARY_SEPARATION
    assert pairs["pluto-charon"].mass_ratio == pytest.approx(0.12172, abs=1e-5)
    assert pairs["jupiter-ganymede"].unit is AxisUnit.KM


def test_load_pairs_bad_unit(tmp_path: Path) -> None:
    """Test that a pair without a known unit is rejected."""
    path = tmp_path / "pairs.json"
    entry = {"M1": 2.0, "M2": 1.0, "T2": 1.0, "r2": 1.0, "unit": "furlong"}
    path.write_text(json.dumps({"pairs": {"toy": entry}}), encoding="utf-8")
    with pytest.raises(UnitTagError):
        load_pairs(path)


def test_data_dir_override(monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> None:
    """Test the environment override of the fixture directory."""
    monkeypatch.setenv(DATA_DIR_ENV, str(tmp_path))
    assert data_dir() == tmp_path


def test_reproduce_table_unknown_system() -> None:
    """Test that a record without a pair is rejected."""
    record = BodyRecord("Nix", 4.5e16, 24.85, 48690, AxisUnit.KM, "nowhere")
    with pytest.raises(DatasetError):
        reproduce_table([record], {"pluto-charon": PLUTO})


def test_reproduce_table_reports_misses() -> None:
    """Test that a row missing its printed digit is logged with provenance."""
    logger = MagicMock()
    record = BodyRecord(
        "Nix", 4.5e16, 24.85463, 48690, AxisUnit.KM, "pluto-charon", "40000", "jpl"
    )
    (row,) = reproduce_table([record], PLUTO, logger=logger)
    assert row.matches_reference is False
    assert logger.warning.called
    assert "jpl" in logger.warning.call_args.args


def test_render_table(tables: dict) -> None:
    """Test the aligned rendering."""
    text = render_table("The Solar System", tables["The Solar System"], AxisUnit.AU)
    lines = text.splitlines()
    assert lines[0] == "The Solar System"
    assert len(lines) == 3 + 4
    assert "9.54" in lines[3]
    assert len({len(line) for line in lines[1:]}) == 1
