"""Trojan lab enums."""

from enum import Enum


class Orientation(Enum):
    """
    Selects the equilateral equilibrium the linearisation is centred on.

    Attributes:
        L4: The point leading the smaller primary (positive d-component).
        L5: The point trailing the smaller primary (negative d-component).

    Example:
        >>> Orientation("L4")
        <Orientation.L4: 'L4'>
        >>> Orientation.from_str("l5")
        <Orientation.L5: 'L5'>

    """

    L4 = "L4"
    L5 = "L5"

    @property
    def sign(self) -> float:
        """Sign of the d-component of the equilibrium."""
        return 1.0 if self is Orientation.L4 else -1.0

    @classmethod
    def from_str(cls, value: str | None) -> "Orientation | None":
        """
        Converts a string to an Orientation enum member.

        Arguments:
            value: The point name, case-insensitive.

        Returns:
            The corresponding Orientation, or None if the name is unknown.

        """  # noqa: D401
        if not value:
            return None
        try:
            return cls(value.upper())
        except ValueError:
            return None


class Mode(Enum):
    """
    The two normal modes of the linearised Trojan motion.

    Attributes:
        ALPHA: The fast mode, frequency close to the rotation rate.
        BETA: The slow libration mode.

    """

    ALPHA = "alpha"
    BETA = "beta"

    @classmethod
    def from_str(cls, value: str | None) -> "Mode | None":
        """Return the mode for a name, or None if it is unknown."""
        if not value:
            return None
        try:
            return cls(value.lower())
        except ValueError:
            return None


class AxisUnit(Enum):
    """
    Length units accepted by the body datasets.

    Attributes:
        AU: Astronomical units.
        KM: Kilometres.

    Example:
        >>> AxisUnit.from_str("Au")
        <AxisUnit.AU: 'au'>
        >>> AxisUnit.from_str("parsec") is None
        True

    """

    AU = "au"
    KM = "km"

    @classmethod
    def from_str(cls, value: str | None) -> "AxisUnit | None":
        """
        Converts a unit tag to an AxisUnit enum member.

        Arguments:
            value: The unit tag as written in a dataset.

        Returns:
            The corresponding AxisUnit, or None if the tag is missing or unknown.

        """  # noqa: D401
        if value is None:
            return None
        try:
            return cls(value.strip().lower())
        except ValueError:
            return None


class R2Convention(Enum):
    """
    How the distance r2 of the smaller primary is quoted for a system.

    Attributes:
        HELIOCENTRIC: Distance from the larger primary's centre.
        SEMI_MAJOR_AXIS: Semi-major axis of the smaller primary's orbit.
        CENTRE_OF_MASS: Distance from the common mass centre.
        BINARY_SEPARATION: Binary separation; r2 = a / (1 + M2/M1).

    """

    HELIOCENTRIC = "heliocentric"
    SEMI_MAJOR_AXIS = "semi_major_axis"
    CENTRE_OF_MASS = "centre_of_mass"
    BINARY_SEPARATION = "binary_separation"

    @classmethod
    def from_str(cls, value: str | None) -> "R2Convention | None":
        """Return the convention for a tag, or None if it is unknown."""
        if not value:
            return None
        try:
            return cls(value.strip().lower())
        except ValueError:
            return None


class OutputFormat(Enum):
    """
    Formats the emitters can write.

    Attributes:
        JSON: Structured records.
        CSV: Delimited text with a commented metadata header.

    """

    JSON = "json"
    CSV = "csv"

    @classmethod
    def from_str(cls, value: str | None) -> "OutputFormat | None":
        """Return the format for a name, or None if it is unknown."""
        if not value:
            return None
        try:
            return cls(value.lower())
        except ValueError:
            return None


class BumpKind(Enum):
    """
    Effective potentials with an anti-gravity bump.

    Attributes:
        KEPLER_CIRCULAR: Circular Keplerian state.
        OSCILLATOR_CIRCULAR: Circular isotropic oscillator state.
        KEPLER_ECCENTRIC: Keplerian elliptic state, first order in e.

    """

    KEPLER_CIRCULAR = "kepler-circular"
    OSCILLATOR_CIRCULAR = "oscillator-circular"
    KEPLER_ECCENTRIC = "kepler-eccentric"

    @classmethod
    def from_str(cls, value: str | None) -> "BumpKind | None":
        """Return the kind for a name, or None if it is unknown."""
        if not value:
            return None
        try:
            return cls(value.lower())
        except ValueError:
            return None


class OscillatorVariant(Enum):
    """
    Forms of the large-n term in the oscillator elliptic state action.

    Attributes:
        LOG: lambda * log(u + sqrt(u^2 - 2)), the integrated Hermite ratio.
        PRINTED: lambda * (u + sqrt(u^2 - 2)), the form without the logarithm.

    """

    LOG = "log"
    PRINTED = "printed"
