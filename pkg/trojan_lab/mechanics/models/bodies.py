"""Body dataset models for the Keplerian fourth law."""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from typing import Any

from trojan_lab.mechanics.const import AU_KM
from trojan_lab.mechanics.exceptions import ConfigurationError

from .enums import AxisUnit, R2Convention


@dataclass(frozen=True)
class BodyRecord:
    """
    A named body orbiting a pair of primaries.

    Attributes:
        name (str): The body's name.
        mass (float): Mass in kg.
        period (float): Orbital period in days.
        semi_major_axis (float): Observed orbit radius in axis_unit.
        axis_unit (AxisUnit): Unit of the orbit radius.
        parent_system (str): Name of the primary pair.
        reference_rho (str | None): Published prediction, as printed.
        provenance (str): Where the row's inputs come from.

    Example usage:

    >>> saturn = BodyRecord("Saturn", 5.683e26, 10749.2143, 9.57, AxisUnit.AU, "sun")
    >>> round(saturn.axis_in(AxisUnit.KM) / 1e9, 3)
    1.432

    """

    name: str
    mass: float
    period: float
    semi_major_axis: float
    axis_unit: AxisUnit
    parent_system: str
    reference_rho: str | None = None
    provenance: str = ""

    def __post_init__(self) -> None:
        """Validate the positive quantities."""
        for label, value in (
            ("mass", self.mass),
            ("period", self.period),
            ("semi_major_axis", self.semi_major_axis),
        ):
            if not (math.isfinite(value) and value > 0):
                msg = f"{self.name}: {label} must be positive, got {value}"
                raise ConfigurationError(msg)

    def axis_in(self, unit: AxisUnit) -> float:
        """Return the orbit radius converted to unit."""
        return convert_length(self.semi_major_axis, self.axis_unit, unit)

    @property
    def reference_value(self) -> float | None:
        """The published prediction as a number."""
        return None if self.reference_rho is None else float(self.reference_rho)

    @property
    def reference_unit(self) -> float | None:
        """One unit in the last printed digit of the published prediction."""
        if self.reference_rho is None:
            return None
        try:
            exponent = Decimal(self.reference_rho).as_tuple().exponent
        except InvalidOperation:
            return None
        return 10.0 ** int(exponent)

    def to_dict(self) -> dict[str, Any]:
        """Return the record as a plain mapping."""
        return {
            "name": self.name,
            "mass_kg": self.mass,
            "period_days": self.period,
            "axis": self.semi_major_axis,
            "axis_unit": self.axis_unit.value,
            "system": self.parent_system,
            "reference_rho": self.reference_rho,
            "provenance": self.provenance,
        }


@dataclass(frozen=True)
class PrimaryPair:
    """
    The two primaries of a system with the smaller one's period and distance.

    Attributes:
        name (str): System name.
        M1 (float): Larger mass in kg.
        M2 (float): Smaller mass in kg.
        T2 (float): Period of the smaller primary in days.
        r2 (float): Distance of the smaller primary, in unit.
        unit (AxisUnit): Length unit of r2.
        convention (R2Convention): How r2 was quoted.

    """

    name: str
    M1: float  # noqa: N815
    M2: float  # noqa: N815
    T2: float  # noqa: N815
    r2: float
    unit: AxisUnit
    convention: R2Convention = R2Convention.HELIOCENTRIC

    def __post_init__(self) -> None:
        """Validate the masses and orbit."""
        if not (self.M1 > self.M2 > 0):
            msg = f"{self.name}: need M1 > M2 > 0, got {self.M1}, {self.M2}"
            raise ConfigurationError(msg)
        if not (self.T2 > 0 and self.r2 > 0):
            msg = f"{self.name}: T2 and r2 must be positive"
            raise ConfigurationError(msg)

    @property
    def mass_ratio(self) -> float:
        """m = M2 / M1."""
        return self.M2 / self.M1

    @property
    def secondary_distance(self) -> float:
        """Distance of the smaller primary from the mass centre, in unit."""
        if self.convention is R2Convention.BINARY_SEPARATION:
            return self.r2 / (1.0 + self.mass_ratio)
        return self.r2

    @property
    def r1(self) -> float:
        """Distance of the larger primary from the mass centre."""
        return self.secondary_distance * self.mass_ratio

    def to_dict(self) -> dict[str, Any]:
        """Return the pair as a plain mapping."""
        return {
            "name": self.name,
            "M1": self.M1,
            "M2": self.M2,
            "T2": self.T2,
            "r2": self.r2,
            "unit": self.unit.value,
            "convention": self.convention.value,
        }


@dataclass(frozen=True)
class TableRow:
    """One row of a reproduced fourth-law table."""

    name: str
    observed_axis: float
    predicted_rho: float
    relative_error: float
    valid: bool
    reference_rho: str | None = None
    matches_reference: bool | None = None
    provenance: str = ""

    def to_dict(self) -> dict[str, Any]:
        """Return the row as a plain mapping."""
        return {
            "name": self.name,
            "observed_axis": self.observed_axis,
            "predicted_rho": self.predicted_rho,
            "relative_error": self.relative_error,
            "valid": self.valid,
            "reference_rho": self.reference_rho,
            "matches_reference": self.matches_reference,
            "provenance": self.provenance,
        }


def convert_length(value: float, source: AxisUnit, target: AxisUnit) -> float:
    """Convert a length between astronomical units and kilometres."""
    if source is target:
        return value
    if source is AxisUnit.AU:
        return value * AU_KM
    return value / AU_KM
