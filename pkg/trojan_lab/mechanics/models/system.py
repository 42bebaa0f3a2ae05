"""Restricted three-body system models."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Any

import numpy as np

from trojan_lab.mechanics.exceptions import ConfigurationError, NonFiniteError

from .enums import Orientation


@dataclass(frozen=True)
class SystemParams:
    """
    Two primaries on a circular orbit about their mass centre O.

    Attributes:
        mu1 (float): Gravitational mass of the larger primary S.
        mu2 (float): Gravitational mass of the smaller primary J.
        a0 (float): Separation of the primaries.

    Example usage:

    >>> params = SystemParams(mu1=1.0, mu2=0.0, a0=1.0)
    >>> params.omega
    1.0
    >>> params.r2
    1.0

    """

    mu1: float
    mu2: float
    a0: float = 1.0

    def __post_init__(self) -> None:
        """Validate the masses and separation."""
        values = (self.mu1, self.mu2, self.a0)
        if not all(math.isfinite(v) for v in values):
            msg = f"System parameters must be finite, got {values}"
            raise NonFiniteError(msg)
        if self.mu2 < 0 or self.mu1 < self.mu2 or self.mu1 <= 0:
            msg = f"Masses must satisfy mu1 >= mu2 >= 0, got {self.mu1}, {self.mu2}"
            raise ConfigurationError(msg)
        if self.a0 <= 0:
            msg = f"Separation a0 must be positive, got {self.a0}"
            raise ConfigurationError(msg)

    @classmethod
    def from_mass_parameter(cls, mu: float, a0: float = 1.0) -> SystemParams:
        """
        Build normalised params from the mass parameter mu = mu2 / (mu1 + mu2).

        Arguments:
            mu: The mass parameter, in [0, 1/2].
            a0: The primary separation.

        Returns:
            Params with mu1 + mu2 = 1.

        """
        if not 0.0 <= mu <= 0.5:  # noqa: PLR2004
            msg = f"Mass parameter must lie in [0, 0.5], got {mu}"
            raise ConfigurationError(msg)
        return cls(mu1=1.0 - mu, mu2=mu, a0=a0)

    @classmethod
    def from_mass_ratio(cls, ratio: float, a0: float = 1.0) -> SystemParams:
        """Build normalised params from m = mu2 / mu1."""
        if not 0.0 <= ratio <= 1.0:
            msg = f"Mass ratio must lie in [0, 1], got {ratio}"
            raise ConfigurationError(msg)
        return cls(mu1=1.0 / (1.0 + ratio), mu2=ratio / (1.0 + ratio), a0=a0)

    @property
    def total(self) -> float:
        """Total gravitational mass mu1 + mu2."""
        return self.mu1 + self.mu2

    @property
    def omega(self) -> float:
        """Angular rate of the primaries."""
        return math.sqrt(self.total / self.a0**3)

    @property
    def r1(self) -> float:
        """Distance of S from O."""
        return self.a0 * self.mu2 / self.total

    @property
    def r2(self) -> float:
        """Distance of J from O."""
        return self.a0 * self.mu1 / self.total

    @property
    def mass_product(self) -> float:
        """The stability parameter mu1 mu2 / (mu1 + mu2)^2."""
        return self.mu1 * self.mu2 / self.total**2

    @property
    def mu_tilde(self) -> float:
        """Ratio |OL4| / a0."""
        return math.sqrt(
            (self.mu1**2 + self.mu2**2 + self.mu1 * self.mu2) / self.total**2
        )

    @property
    def c2(self) -> float:
        """Squared half-chord offset mu1 mu2 a0^2 / (mu1 + mu2)^2 = r1 r2."""
        return self.mass_product * self.a0**2

    def normalized(self) -> SystemParams:
        """Return the same system in units with mu1 + mu2 = 1 and a0 = 1."""
        return SystemParams(mu1=self.mu1 / self.total, mu2=self.mu2 / self.total)

    def to_dict(self) -> dict[str, float]:
        """Return the params as a plain mapping."""
        return {"mu1": self.mu1, "mu2": self.mu2, "a0": self.a0}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> SystemParams:
        """Build params from a mapping with mu1, mu2 and optional a0."""
        try:
            return cls(
                mu1=float(data["mu1"]),
                mu2=float(data["mu2"]),
                a0=float(data.get("a0", 1.0)),
            )
        except KeyError as err:
            msg = f"System params need key {err}"
            raise ConfigurationError(msg) from err


@dataclass(frozen=True)
class RotatingState:
    """
    Phase point of the linearised problem in the rotated L4/L5 frame.

    Attributes:
        X (float): Coordinate along the first principal axis.
        Y (float): Coordinate along the second principal axis.
        Xdot (float): Velocity along X.
        Ydot (float): Velocity along Y.
        t (float): Time of the sample.

    """

    X: float  # noqa: N815
    Y: float  # noqa: N815
    Xdot: float  # noqa: N815
    Ydot: float  # noqa: N815
    t: float = 0.0

    def __post_init__(self) -> None:
        """Reject non-finite components."""
        if not np.all(np.isfinite(self.as_array())) or not math.isfinite(self.t):
            msg = f"Rotating state must be finite, got {self}"
            raise NonFiniteError(msg)

    def as_array(self) -> np.ndarray:
        """Return (X, Y, Xdot, Ydot) as an array."""
        return np.array([self.X, self.Y, self.Xdot, self.Ydot], dtype=float)

    @classmethod
    def from_array(cls, values: np.ndarray, t: float = 0.0) -> RotatingState:
        """Build a state from an (X, Y, Xdot, Ydot) array."""
        x, y, xdot, ydot = (float(v) for v in values[:4])
        return cls(X=x, Y=y, Xdot=xdot, Ydot=ydot, t=float(t))

    def to_dict(self) -> dict[str, float]:
        """Return the state as a plain mapping."""
        return asdict(self)


@dataclass(frozen=True)
class LinearisedParams:
    """
    Coefficients of the motion linearised about L4 or L5.

    Attributes:
        omega (float): Rotation rate of the primaries.
        gamma (float): Angle of the principal axes.
        omegaX2 (float): Diagonal coefficient on X.
        omegaY2 (float): Diagonal coefficient on Y.
        Omega2 (float): Cross coefficient before rotation, signed by orientation.
        alpha (float): Fast modal frequency (NaN when unstable).
        beta (float): Slow modal frequency (NaN when unstable).
        stable (bool): Whether the mass product lies strictly below 1/27.
        orientation (Orientation): The equilibrium used.

    """

    omega: float
    gamma: float
    omegaX2: float  # noqa: N815
    omegaY2: float  # noqa: N815
    Omega2: float  # noqa: N815
    alpha: float
    beta: float
    stable: bool
    orientation: Orientation = Orientation.L4
    params: SystemParams | None = field(default=None, compare=False)

    @property
    def centre(self) -> tuple[float, float]:
        """Position (c, d) of the equilibrium in the tilde frame."""
        if self.params is None:
            msg = "Linearised params were built without a system"
            raise ConfigurationError(msg)
        p = self.params
        return (
            (p.r2 - p.r1) / 2.0,
            self.orientation.sign * math.sqrt(3.0) * p.a0 / 2.0,
        )

    def to_dict(self) -> dict[str, Any]:
        """Return the coefficients as a plain mapping."""
        return {
            "omega": self.omega,
            "gamma": self.gamma,
            "omegaX2": self.omegaX2,
            "omegaY2": self.omegaY2,
            "Omega2": self.Omega2,
            "alpha": self.alpha,
            "beta": self.beta,
            "stable": self.stable,
            "orientation": self.orientation.value,
        }


@dataclass(frozen=True)
class LagrangePoints:
    """
    The five equilibria of the rotating frame, tilde coordinates.

    Collinear points are None when the smaller primary is massless.
    """

    l1: tuple[float, float] | None
    l2: tuple[float, float] | None
    l3: tuple[float, float]
    l4: tuple[float, float]
    l5: tuple[float, float]

    def to_dict(self) -> dict[str, list[float] | None]:
        """Return the points as a plain mapping."""
        return {
            name: None if point is None else list(point)
            for name, point in (
                ("L1", self.l1),
                ("L2", self.l2),
                ("L3", self.l3),
                ("L4", self.l4),
                ("L5", self.l5),
            )
        }
