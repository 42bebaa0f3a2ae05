"""Numeric kernel models."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any

from trojan_lab.mechanics.const import (
    DEFAULT_ABS_TOL,
    DEFAULT_METHOD,
    DEFAULT_REL_TOL,
)
from trojan_lab.mechanics.exceptions import ConfigurationError, NonFiniteError

if TYPE_CHECKING:
    import numpy as np
    from scipy.integrate import OdeSolution

ADAPTIVE_METHODS = ("RK45", "DOP853")


@dataclass(frozen=True)
class WeierstrassInvariants:
    """
    Invariants g2, g3 of the cubic 4p^3 - g2 p - g3.

    Example usage:

    >>> WeierstrassInvariants(g2=0.0, g3=1.0).discriminant
    -27.0

    """

    g2: float
    g3: float

    def __post_init__(self) -> None:
        """Reject non-finite invariants."""
        if not (math.isfinite(self.g2) and math.isfinite(self.g3)):
            msg = f"Invariants must be finite, got g2={self.g2}, g3={self.g3}"
            raise NonFiniteError(msg)

    @property
    def discriminant(self) -> float:
        """The discriminant g2^3 - 27 g3^2."""
        return self.g2**3 - 27.0 * self.g3**2


@dataclass(frozen=True)
class IntegratorConfig:
    """
    Tolerances and method for adaptive ODE integration.

    Attributes:
        rel_tol (float): Relative tolerance.
        abs_tol (float): Absolute tolerance.
        max_step (float): Largest step the solver may take.
        method (str): An embedded Runge-Kutta pair of order five or more.

    """

    rel_tol: float = DEFAULT_REL_TOL
    abs_tol: float = DEFAULT_ABS_TOL
    max_step: float = math.inf
    method: str = DEFAULT_METHOD

    def __post_init__(self) -> None:
        """Validate tolerances and the method tag."""
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            msg = f"Tolerances must be positive, got {self.rel_tol}, {self.abs_tol}"
            raise ConfigurationError(msg)
        if self.max_step <= 0:
            msg = f"max_step must be positive, got {self.max_step}"
            raise ConfigurationError(msg)
        if self.method not in ADAPTIVE_METHODS:
            msg = f"Unsupported integration method {self.method!r}"
            raise ConfigurationError(msg)

    def tightened(self, factor: float = 0.5) -> IntegratorConfig:
        """Return a copy with both tolerances scaled by factor."""
        return IntegratorConfig(
            rel_tol=self.rel_tol * factor,
            abs_tol=self.abs_tol * factor,
            max_step=self.max_step,
            method=self.method,
        )

    def to_dict(self) -> dict[str, Any]:
        """Return the config as a plain mapping."""
        return {
            "rel_tol": self.rel_tol,
            "abs_tol": self.abs_tol,
            "max_step": self.max_step,
            "method": self.method,
        }


@dataclass(frozen=True)
class Trajectory:
    """
    Result of an adaptive integration.

    Attributes:
        t (np.ndarray): Accepted step times.
        y (np.ndarray): States at the accepted steps, one column per time.
        sol (OdeSolution | None): Dense interpolant over the span.
        t_events (list[np.ndarray]): Event times, one array per event.
        y_events (list[np.ndarray]): States at the event times.
        nfev (int): Number of right-hand side evaluations.

    """

    t: np.ndarray
    y: np.ndarray
    sol: OdeSolution | None = None
    t_events: list[np.ndarray] = field(default_factory=list)
    y_events: list[np.ndarray] = field(default_factory=list)
    nfev: int = 0

    @property
    def final(self) -> np.ndarray:
        """State at the end of the span."""
        return self.y[:, -1]

    def __call__(self, t: float | np.ndarray) -> np.ndarray:
        """Evaluate the dense interpolant."""
        if self.sol is None:
            msg = "Trajectory was integrated without dense output"
            raise ConfigurationError(msg)
        return self.sol(t)
