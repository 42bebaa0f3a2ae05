"""Custom exceptions for the trojan_lab mechanics core."""


class TrojanLabError(Exception):
    """Base class for other exceptions."""


class ConfigurationError(TrojanLabError):
    """Exception raised for invalid run configuration."""


class ValidityError(TrojanLabError):
    """Exception raised when a result falls outside its validity regime."""


class InconsistentInitialDataError(TrojanLabError):
    """Exception raised when initial data violate a construction's conditions."""


class DatasetError(TrojanLabError):
    """Exception raised while reading a body dataset."""

    def __init__(
        self, msg: str, row: int | None = None, column: str | None = None
    ) -> None:
        """Store the row and column the error refers to."""
        if row is not None:
            where = f"row {row}" if column is None else f"row {row}, column '{column}'"
            msg = f"{where}: {msg}"
        super().__init__(msg)
        self.row = row
        self.column = column


class MissingFieldError(DatasetError):
    """Exception raised when a dataset row lacks a required field."""


class UnitTagError(DatasetError):
    """Exception raised when a length lacks a recognised unit tag."""


class NumericalError(TrojanLabError):
    """Base class for numeric failures."""


class NonFiniteError(NumericalError):
    """Exception raised for NaN or infinite inputs or states."""


class PoleProximityError(NumericalError):
    """Exception raised when an argument is too close to a pole."""


class ModulusRangeError(NumericalError):
    """Exception raised for an elliptic modulus outside [0, 1)."""


class CharacteristicSingularityError(NumericalError):
    """Exception raised when n sin^2(phi) reaches 1."""


class HermiteZeroError(NumericalError):
    """Exception raised when a Hermite polynomial vanishes at the argument."""


class IntegrationError(NumericalError):
    """Exception raised when the ODE integrator fails."""


class CollisionError(NumericalError):
    """Exception raised when the test body hits a primary."""


class DegenerateModesError(NumericalError):
    """Exception raised when the modal frequencies coincide or vanish."""


class ResonanceError(NumericalError):
    """Exception raised for a vanishing forced-response denominator."""


class DiscriminantError(NumericalError):
    """Exception raised when a cubic lacks three real roots."""


class NoBoundMotionError(NumericalError):
    """Exception raised when energy and momentum admit no bounded band."""


class BlowUpRegionError(NumericalError):
    """Exception raised inside the blow-up region of an asymptotic form."""


class DegenerateRootError(NumericalError):
    """Exception raised when a reduction pole coincides with a cubic root."""


class ImaginaryRadiusError(NumericalError):
    """Exception raised when a predicted radius would be imaginary."""


class BranchCutError(NumericalError):
    """Exception raised when a point sits on a branch cut or singular set."""


class TurningPointError(NumericalError):
    """Exception raised where the local kinetic term is not positive."""


class SingularLocusError(NumericalError):
    """Exception raised on the singular locus of a closed form."""


class AxisSingularityError(NumericalError):
    """Exception raised on the symmetry axis rho = 0."""


class OriginSingularityError(NumericalError):
    """Exception raised at the coordinate origin."""


class LeftSupportError(NumericalError):
    """Exception raised when a flow leaves its field's support."""


class DomainError(NumericalError):
    """Exception raised for arguments outside an operation's domain."""
