"""Semi-classical state and geometry models."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any

import numpy as np

from trojan_lab.mechanics.exceptions import ConfigurationError

from .enums import BumpKind, OscillatorVariant

if TYPE_CHECKING:
    from collections.abc import Callable

    from .numerics import Trajectory


@dataclass(frozen=True)
class KeplerStateParams:
    """
    Keplerian elliptic state concentrating on a classical ellipse.

    Attributes:
        mu (float): Central gravitational mass.
        lam (float): Action scale sqrt(a mu), a the semi-major axis.
        e (float): Eccentricity in [0, 1); zero gives the circular state.

    Example usage:

    >>> state = KeplerStateParams(mu=1.0, lam=1.0, e=0.5)
    >>> state.a, state.energy
    (1.0, -0.5)

    """

    mu: float
    lam: float
    e: float

    def __post_init__(self) -> None:
        """Validate the state parameters."""
        if self.mu <= 0 or self.lam <= 0:
            msg = f"mu and lambda must be positive, got {self.mu}, {self.lam}"
            raise ConfigurationError(msg)
        if not 0.0 <= self.e < 1.0:
            msg = f"Eccentricity must lie in [0, 1), got {self.e}"
            raise ConfigurationError(msg)

    @property
    def a(self) -> float:
        """Semi-major axis lambda^2 / mu."""
        return self.lam**2 / self.mu

    @property
    def energy(self) -> float:
        """Energy -mu^2 / (2 lambda^2)."""
        return -(self.mu**2) / (2.0 * self.lam**2)

    @property
    def alpha(self) -> float:
        """1 / e."""
        return 1.0 / self.e

    @property
    def beta(self) -> float:
        """sqrt(1 - e^2) / e."""
        return math.sqrt(1.0 - self.e**2) / self.e

    def to_dict(self) -> dict[str, float]:
        """Return the parameters as a plain mapping."""
        return {"mu": self.mu, "lambda": self.lam, "e": self.e, "a": self.a}


@dataclass(frozen=True)
class OscillatorStateParams:
    """
    Isotropic oscillator elliptic state.

    The ellipse has semi-axes sqrt(lam (1 - e) / omega) and
    sqrt(lam (1 + e) / omega); the second lies along y unless major_axis_x.

    Attributes:
        omega (float): Oscillator frequency.
        lam (float): Action scale, n hbar in the large-n limit.
        e (float): Eccentricity parameter in (0, 1).
        variant (OscillatorVariant): Form of the large-n term.
        major_axis_x (bool): Put the major axis along x.

    """

    omega: float
    lam: float
    e: float
    variant: OscillatorVariant = OscillatorVariant.LOG
    major_axis_x: bool = False

    def __post_init__(self) -> None:
        """Validate the state parameters."""
        if self.omega <= 0 or self.lam <= 0:
            msg = f"omega and lambda must be positive, got {self.omega}, {self.lam}"
            raise ConfigurationError(msg)
        if not 0.0 < self.e < 1.0:
            msg = f"Eccentricity must lie in (0, 1), got {self.e}"
            raise ConfigurationError(msg)

    @property
    def alpha(self) -> float:
        """1 / e."""
        return 1.0 / self.e

    @property
    def beta(self) -> float:
        """sqrt(1 - e^2) / e."""
        return math.sqrt(1.0 - self.e**2) / self.e

    @property
    def minor(self) -> float:
        """Minor semi-axis."""
        return math.sqrt(self.lam * (1.0 - self.e) / self.omega)

    @property
    def major(self) -> float:
        """Major semi-axis."""
        return math.sqrt(self.lam * (1.0 + self.e) / self.omega)

    @property
    def semi_axis_x(self) -> float:
        """Semi-axis along x."""
        return self.major if self.major_axis_x else self.minor

    @property
    def semi_axis_y(self) -> float:
        """Semi-axis along y."""
        return self.minor if self.major_axis_x else self.major

    @property
    def energy(self) -> float:
        """Energy lam omega, equal to omega^2 (a^2 + b^2) / 2."""
        return self.lam * self.omega

    def to_dict(self) -> dict[str, Any]:
        """Return the parameters as a plain mapping."""
        return {
            "omega": self.omega,
            "lambda": self.lam,
            "e": self.e,
            "a": self.semi_axis_x,
            "b": self.semi_axis_y,
            "variant": self.variant.value,
        }


@dataclass(frozen=True)
class RadialDensityParams:
    """
    Radial Ornstein-Uhlenbeck-type process of a planar oscillator state.

    Attributes:
        n (int): Quantum number, at least 1.
        epsilon2 (float): Diffusion scale.
        omega (float): Oscillator frequency.

    """

    n: int
    epsilon2: float
    omega: float

    def __post_init__(self) -> None:
        """Validate the process parameters."""
        if self.n < 1:
            msg = f"n must be at least 1, got {self.n}"
            raise ConfigurationError(msg)
        if self.epsilon2 <= 0 or self.omega <= 0:
            msg = "epsilon2 and omega must be positive"
            raise ConfigurationError(msg)

    @property
    def lam(self) -> float:
        """lambda = n epsilon2."""
        return self.n * self.epsilon2

    @property
    def classical_radius(self) -> float:
        """Limit radius sqrt(lambda / omega)."""
        return math.sqrt(self.lam / self.omega)


@dataclass(frozen=True)
class OrbitGeometry:
    """
    Frenet data of a flow line at a point.

    Attributes:
        kappa (float): Curvature, non-negative.
        tau (float): Torsion, zero for planar flows.
        tangent (np.ndarray): Unit tangent.
        normal (np.ndarray): Unit principal normal, towards the concave side.
        speed (float): Speed of the flow.

    """

    kappa: float
    tau: float
    tangent: np.ndarray
    normal: np.ndarray
    speed: float

    def to_dict(self) -> dict[str, Any]:
        """Return the Frenet data as a plain mapping."""
        return {
            "kappa": self.kappa,
            "tau": self.tau,
            "tangent": self.tangent.tolist(),
            "normal": self.normal.tolist(),
            "speed": self.speed,
        }


@dataclass(frozen=True)
class BumpLocus:
    """
    Location of the anti-gravity bump of an effective potential.

    For the eccentric kind theta and radius sample the bump curve, and
    coefficient is c in 2a / r = 1 + c e cos(theta).
    """

    kind: BumpKind
    scale: float
    root: float
    inflection: float | None = None
    coefficient: float | None = None
    theta: np.ndarray | None = field(default=None, compare=False)
    radius: np.ndarray | None = field(default=None, compare=False)

    def to_dict(self) -> dict[str, Any]:
        """Return the locus as a plain mapping."""
        data: dict[str, Any] = {
            "kind": self.kind.value,
            "scale": self.scale,
            "root": self.root,
            "inflection": self.inflection,
            "coefficient": self.coefficient,
        }
        if self.theta is not None and self.radius is not None:
            data["theta"] = self.theta.tolist()
            data["radius"] = self.radius.tolist()
        return data


@dataclass(frozen=True)
class FieldSample:
    """
    Values of the semi-classical action at a point.

    Attributes:
        R (float): Real part of the complex action, modulo a constant.
        S (float): Imaginary part, modulo a constant and a branch multiple.
        grad_R (np.ndarray): Gradient of R.
        grad_S (np.ndarray): Gradient of S.

    """

    R: float
    S: float
    grad_R: np.ndarray
    grad_S: np.ndarray


@dataclass(frozen=True)
class ScalarField:
    """
    A semi-classical state with its potentials.

    The drift is grad(R + S) - A. For states of the time-independent
    semi-classical equations grad R . (grad S - A) = 0 and
    (|grad S - A|^2 - |grad R|^2) / 2 + V = E; fields that solve a modified
    equation carry their own effective potential.

    Attributes:
        name (str): Label used in logs and tables.
        energy (float): E.
        action (Callable): Point to FieldSample.
        potential (Callable): Point to V.
        potential_gradient (Callable): Point to grad V.
        dimension (int): 2 or 3.
        scale (float): Length scale used for difference steps.
        vector_potential (Callable | None): Point to A.
        curl (float): z-component of curl A, constant.
        veff (Callable | None): Effective potential when it is not
            V - |grad R|^2.
        winding (float): Drop of R when the negative x axis is crossed
            anticlockwise, for actions with an angular term.

    """

    name: str
    energy: float
    action: Callable[[np.ndarray], FieldSample]
    potential: Callable[[np.ndarray], float]
    potential_gradient: Callable[[np.ndarray], np.ndarray]
    dimension: int = 2
    scale: float = 1.0
    vector_potential: Callable[[np.ndarray], np.ndarray] | None = None
    curl: float = 0.0
    veff: Callable[[np.ndarray], float] | None = None
    winding: float = 0.0

    def sample(self, point: Any) -> FieldSample:
        """Evaluate the action at a point."""
        return self.action(np.asarray(point, dtype=float))

    def potential_A(self, point: Any) -> np.ndarray:  # noqa: N802
        """A at a point, zero without a vector potential."""
        point = np.asarray(point, dtype=float)
        if self.vector_potential is None:
            return np.zeros_like(point)
        return np.asarray(self.vector_potential(point), dtype=float)

    def velocity(self, point: Any) -> np.ndarray:
        """The drift grad(R + S) - A."""
        s = self.sample(point)
        return s.grad_R + s.grad_S - self.potential_A(point)

    def effective_potential(self, point: Any) -> float:
        """V_eff, by default V - |grad R|^2."""
        point = np.asarray(point, dtype=float)
        if self.veff is not None:
            return float(self.veff(point))
        s = self.sample(point)
        return float(self.potential(point) - s.grad_R @ s.grad_R)

    def residuals(self, point: Any) -> tuple[float, float]:
        """
        Orthogonality and energy residuals of the semi-classical equations.

        Both are relative to the local kinetic scale.
        """
        point = np.asarray(point, dtype=float)
        s = self.sample(point)
        drift = s.grad_S - self.potential_A(point)
        r2 = float(s.grad_R @ s.grad_R)
        d2 = float(drift @ drift)
        scale = max(1.0, r2 + d2)
        orthogonal = float(s.grad_R @ drift) / scale
        energy = (0.5 * (d2 - r2) + self.potential(point) - self.energy) / scale
        return abs(orthogonal), abs(energy)


@dataclass(frozen=True)
class FlowResult:
    """
    A semi-classical trajectory with its diagnostics.

    Attributes:
        trajectory (Trajectory): Positions over time.
        R (np.ndarray): R at the accepted steps.
        monotone (bool): Whether R never decreased beyond rounding.
        second_law (float): Largest residual of
            X'' + grad V_eff - X' x curl A over the accepted steps.

    """

    trajectory: Trajectory
    R: np.ndarray
    monotone: bool
    second_law: float

    @property
    def final(self) -> np.ndarray:
        """Position at the end of the span."""
        return self.trajectory.final


@dataclass(frozen=True)
class SigmaSpiral:
    """
    Flow of the viscous Coulomb state with its invariants.

    Attributes:
        flow (FlowResult): The integrated drift.
        angular_momentum (np.ndarray): x v_y - y v_x at the accepted steps.
        limit_radius (float): lambda (lambda - sigma^2) / mu.

    """

    flow: FlowResult
    angular_momentum: np.ndarray
    limit_radius: float

    @property
    def radius(self) -> np.ndarray:
        """Distance from the centre at the accepted steps."""
        return np.hypot(*self.flow.trajectory.y[:2])


@dataclass(frozen=True)
class OrbitPoint:
    """
    Data of a point on the limit curve, with outward unit normal.

    Attributes:
        energy (float): E.
        potential (float): V at the point.
        normal_derivative (float): Outward normal derivative of V.
        curvature (float): Curvature of the limit curve.
        r_nn (float): Second normal derivative of R.

    """

    energy: float
    potential: float
    normal_derivative: float
    curvature: float
    r_nn: float = 0.0


@dataclass(frozen=True)
class NearOrbitEstimate:
    """
    |grad R|^2 and |grad S|^2 at a normal offset d from the limit curve.

    first_order is the coefficient of d, which vanishes on a classical orbit.
    """

    d: float
    grad_r2: float
    grad_s2: float
    first_order: float


@dataclass(frozen=True)
class PauliResiduals:
    """
    Residuals of the ratio identities for angular momentum and Lenz vector.

    Attributes:
        residuals (dict[str, float]): Identity name to residual.
        skipped (tuple[str, ...]): Identities with a vanishing denominator.

    """

    residuals: dict[str, float]
    skipped: tuple[str, ...] = ()

    @property
    def max_residual(self) -> float:
        """Largest absolute residual, zero when everything was skipped."""
        return max((abs(v) for v in self.residuals.values()), default=0.0)

    def to_dict(self) -> dict[str, Any]:
        """Return the residuals as a plain mapping."""
        return {"residuals": dict(self.residuals), "skipped": list(self.skipped)}
