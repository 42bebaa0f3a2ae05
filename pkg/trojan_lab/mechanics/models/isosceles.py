"""Isosceles-triangle orbit models."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any

import numpy as np

from trojan_lab.mechanics.exceptions import (
    InconsistentInitialDataError,
    NonFiniteError,
)

if TYPE_CHECKING:
    from fractions import Fraction

    from .system import SystemParams


@dataclass(frozen=True)
class IsoscelesConfig:
    """
    State of a third body equidistant from both primaries.

    Attributes:
        params (SystemParams): The primaries.
        rho (float): Distance |OP3| from the mass centre.
        rhodot (float): Radial velocity.
        phi (float): Polar angle of P3.
        L (float): Specific angular momentum rho^2 phidot.
        E (float): Specific energy of the radial motion.
        e_primary (float): Eccentricity of the primaries' orbit.

    Example usage:

    >>> from trojan_lab.mechanics.models.system import SystemParams
    >>> cfg = IsoscelesConfig.from_state(SystemParams(1.0, 0.0), 1.0, 0.0, 0.0, 1.0)
    >>> cfg.E
    -0.5

    """

    params: SystemParams
    rho: float
    rhodot: float
    phi: float
    L: float  # noqa: N815
    E: float  # noqa: N815
    e_primary: float = 0.0

    def __post_init__(self) -> None:
        """Validate finiteness and the isosceles feasibility condition."""
        values = (self.rho, self.rhodot, self.phi, self.L, self.E, self.e_primary)
        if not all(math.isfinite(v) for v in values):
            msg = f"Isosceles state must be finite, got {values}"
            raise NonFiniteError(msg)
        half_gap = (self.params.r2 - self.params.r1) / 2.0
        if self.rho <= half_gap:
            msg = (
                f"rho = {self.rho} does not exceed (r2 - r1)/2 = {half_gap}; "
                "no isosceles configuration exists"
            )
            raise InconsistentInitialDataError(msg)
        if not 0.0 <= self.e_primary < 1.0:
            msg = f"Primary eccentricity must lie in [0, 1), got {self.e_primary}"
            raise InconsistentInitialDataError(msg)

    @property
    def c2(self) -> float:
        """Squared offset in the effective potential."""
        return self.params.c2

    @classmethod
    def energy_of(
        cls,
        params: SystemParams,
        rho: float | np.ndarray,
        rhodot: float | np.ndarray,
        angular: float,
    ) -> float | np.ndarray:
        """Energy of the radial motion for a state or along sampled arrays."""
        return (
            0.5 * (rhodot**2 + angular**2 / rho**2)
            - params.total / np.sqrt(rho**2 + params.c2)
        )

    @classmethod
    def from_state(  # noqa: PLR0913
        cls,
        params: SystemParams,
        rho: float,
        rhodot: float,
        phi: float,
        angular: float,
        e_primary: float = 0.0,
    ) -> IsoscelesConfig:
        """Build a config from position and velocity, deriving E."""
        return cls(
            params=params,
            rho=rho,
            rhodot=rhodot,
            phi=phi,
            L=angular,
            E=float(cls.energy_of(params, rho, rhodot, angular)),
            e_primary=e_primary,
        )

    def to_dict(self) -> dict[str, Any]:
        """Return the config as a plain mapping."""
        return {
            "params": self.params.to_dict(),
            "rho": self.rho,
            "rhodot": self.rhodot,
            "phi": self.phi,
            "L": self.L,
            "E": self.E,
            "e_primary": self.e_primary,
        }


@dataclass(frozen=True)
class OrbitRoots:
    """
    Roots of the orbit cubic in w = 1 / |SA|, ordered a > b > 0 > c.

    rho_min and rho_max are the radii at w = a and w = b.
    """

    a: float
    b: float
    c: float
    rho_min: float
    rho_max: float

    def to_dict(self) -> dict[str, float]:
        """Return the roots as a plain mapping."""
        return {
            "a": self.a,
            "b": self.b,
            "c": self.c,
            "rho_min": self.rho_min,
            "rho_max": self.rho_max,
        }


@dataclass(frozen=True)
class RadialBand:
    """Minimiser of the effective potential and the band allowed at energy E."""

    rho0: float
    v_min: float
    rho_min: float
    rho_max: float
    curvature: float

    def to_dict(self) -> dict[str, float]:
        """Return the band as a plain mapping."""
        return {
            "rho0": self.rho0,
            "v_min": self.v_min,
            "rho_min": self.rho_min,
            "rho_max": self.rho_max,
            "curvature": self.curvature,
        }


@dataclass(frozen=True)
class ApsidalResult:
    """
    Polar-angle advance between apsides and the closed-orbit verdict.

    ratio is the nearest m/n to Phi / 2 pi with n bounded, None if none is
    within tolerance.
    """

    phi: float
    ratio: Fraction | None

    @property
    def closed(self) -> bool:
        """Whether the orbit closes."""
        return self.ratio is not None

    def to_dict(self) -> dict[str, Any]:
        """Return the result as a plain mapping."""
        return {
            "apsidal_angle": self.phi,
            "closed": self.closed,
            "ratio": None if self.ratio is None else str(self.ratio),
        }


@dataclass(frozen=True)
class FloquetResult:
    """Monodromy of a periodic linear second-order equation over one period."""

    monodromy: np.ndarray
    multipliers: tuple[complex, complex]
    trace: float
    stable: bool

    def to_dict(self) -> dict[str, Any]:
        """Return the result as a plain mapping."""
        return {
            "monodromy": self.monodromy.tolist(),
            "multipliers": [[m.real, m.imag] for m in self.multipliers],
            "trace": self.trace,
            "stable": self.stable,
        }


@dataclass(frozen=True)
class HildanParameters:
    """
    Keplerian ellipse of a body in 3:2 resonance with aphelion on r0.

    Attributes:
        e (float): Eccentricity.
        a (float): Semi-major axis.
        l (float): Semi-latus rectum.
        E (float): Specific energy.
        L (float): Specific angular momentum.

    """

    e: float
    a: float
    l: float  # noqa: E741
    E: float  # noqa: N815
    L: float  # noqa: N815

    def to_dict(self) -> dict[str, float]:
        """Return the parameters as a plain mapping."""
        return {"e": self.e, "a": self.a, "l": self.l, "E": self.E, "L": self.L}


@dataclass(frozen=True)
class OrbitCurve:
    """Sampled planar orbit rho(phi) with Cartesian coordinates."""

    phi: np.ndarray
    rho: np.ndarray

    @property
    def x(self) -> np.ndarray:
        """Abscissae of the samples."""
        return self.rho * np.cos(self.phi)

    @property
    def y(self) -> np.ndarray:
        """Ordinates of the samples."""
        return self.rho * np.sin(self.phi)

    def rows(self) -> list[dict[str, float]]:
        """Return (phi, rho, x, y) rows for the emitters."""
        return [
            {"phi": float(p), "rho": float(r), "x": float(x), "y": float(y)}
            for p, r, x, y in zip(self.phi, self.rho, self.x, self.y, strict=True)
        ]


@dataclass(frozen=True)
class GeneralOrbit:
    """Orbit from the elliptic-integral reduction in w = 1 / |SA|."""

    roots: OrbitRoots
    w: np.ndarray
    phi: np.ndarray
    rho: np.ndarray
    apsidal_angle: float

    @property
    def curve(self) -> OrbitCurve:
        """The orbit as a polar curve."""
        return OrbitCurve(phi=self.phi, rho=self.rho)


@dataclass(frozen=True)
class H3Drift:
    """
    Angular momentum of the third body along a trajectory.

    side_difference is |SA| - |JA| and bound the pointwise factor with
    |h3dot| = bound * |side_difference|.
    """

    t: np.ndarray
    h3: np.ndarray
    h3dot: np.ndarray
    side_difference: np.ndarray
    bound: np.ndarray


@dataclass(frozen=True)
class KCheck:
    """The two constant-k expressions for an isosceles triangle with side d."""

    side: float
    rho: float
    k_geometric: float
    k_kepler: float

    @property
    def collide(self) -> bool:
        """Whether the expressions agree."""
        return math.isclose(self.k_geometric, self.k_kepler, rel_tol=1e-12)


@dataclass(frozen=True)
class LagrangeEllipseSolution:
    """
    Equilateral three-body motion on similar conics with a common focus.

    Attributes:
        masses (np.ndarray): Gravitational masses of the three bodies.
        positions (np.ndarray): Initial positions, one row per body.
        velocities (np.ndarray): Initial velocities, one row per body.
        e (float): Common eccentricity.
        theta0 (float): Common initial true anomaly.
        mu_tilde (np.ndarray): Effective central masses of each body's conic.
        h (np.ndarray): Specific angular momenta.
        lenz (np.ndarray): Hamilton-Lenz-Runge vectors, one row per body.

    """

    masses: np.ndarray
    positions: np.ndarray
    velocities: np.ndarray
    e: float
    theta0: float
    mu_tilde: np.ndarray
    h: np.ndarray
    lenz: np.ndarray
