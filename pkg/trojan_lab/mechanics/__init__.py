"""Trojan lab mechanics core."""

from .const import DEBUG, LOGGER
from .exceptions import (
    ConfigurationError,
    DatasetError,
    InconsistentInitialDataError,
    NumericalError,
    TrojanLabError,
    ValidityError,
)

__all__ = [
    "DEBUG",
    "LOGGER",
    "ConfigurationError",
    "DatasetError",
    "InconsistentInitialDataError",
    "NumericalError",
    "TrojanLabError",
    "ValidityError",
]
