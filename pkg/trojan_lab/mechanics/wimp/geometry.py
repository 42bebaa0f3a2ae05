"""
Curvature, torsion and related geometry of semi-classical flows.

Flow lines obey X'' = -grad V_eff + X' x curl A, so their curvature follows
from the effective potential alone. Quantities here are evaluated either
from a field at a point or from an integrated trajectory.
"""

from __future__ import annotations

import math
from typing import TYPE_CHECKING, Any

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from ..const import (
    BUMP_SAMPLES,
    ECCENTRICITY_VALIDITY,
    FIELD_STEP,
    FRENET_STEP,
    IDENTITY_DENOMINATOR,
    LOGGER,
    ZERO_GRADIENT,
)
from ..exceptions import (
    AxisSingularityError,
    ConfigurationError,
    TurningPointError,
    ValidityError,
)
from ..models.enums import BumpKind
from ..models.fields import (
    BumpLocus,
    KeplerStateParams,
    NearOrbitEstimate,
    OrbitGeometry,
    OrbitPoint,
    PauliResiduals,
)
from .fields import kepler_RS

if TYPE_CHECKING:
    from collections.abc import Callable

    from ..models.fields import ScalarField
    from ..models.numerics import Trajectory


def finite_gradient(
    fn: Callable[[np.ndarray], float], point: np.ndarray, step: float
) -> np.ndarray:
    """Central-difference gradient of a scalar function."""
    point = np.asarray(point, dtype=float)
    grad = np.empty_like(point)
    for i in range(point.size):
        shift = np.zeros_like(point)
        shift[i] = step
        grad[i] = (fn(point + shift) - fn(point - shift)) / (2.0 * step)
    return grad


def finite_jacobian(
    fn: Callable[[np.ndarray], np.ndarray], point: np.ndarray, step: float
) -> np.ndarray:
    """Central-difference Jacobian, J[i, j] = d fn_i / d x_j."""
    point = np.asarray(point, dtype=float)
    columns = []
    for i in range(point.size):
        shift = np.zeros_like(point)
        shift[i] = step
        columns.append((fn(point + shift) - fn(point - shift)) / (2.0 * step))
    return np.column_stack(columns)


def veff_gradient(field: ScalarField, point: np.ndarray) -> np.ndarray:
    """grad V_eff, with grad V taken analytically when V_eff = V - |grad R|^2."""
    step = FIELD_STEP * field.scale
    if field.veff is not None:
        return finite_gradient(field.effective_potential, point, step)

    def grad_r2(q: np.ndarray) -> float:
        g = field.sample(q).grad_R
        return float(g @ g)

    return field.potential_gradient(point) - finite_gradient(grad_r2, point, step)


def _planar(point: Any) -> np.ndarray:
    p = np.asarray(point, dtype=float)
    if p.shape != (2,):
        msg = f"Expected a planar point, got shape {p.shape}"
        raise ConfigurationError(msg)
    return p


def quantum_curvature_2d(field: ScalarField, point: Any) -> OrbitGeometry:
    """
    Curvature of the planar flow line through a point.

    kappa = |n . grad(E - V + |grad R|^2)| / (2 (E - V + |grad R|^2)), the
    normal n taken against the flow X' = grad R + grad S, where grad S is
    rebuilt from grad R as sqrt(1 + 2 (E - V) / |grad R|^2)(-R_y, R_x) with
    the orientation of the field's own grad S. Where grad R vanishes the
    field's grad S is used and kappa reduces to the classical curvature
    |dV/dn| / (2 (E - V)).

    Arguments:
        field: A field without vector potential.
        point: Planar point.

    Returns:
        Curvature, unit tangent, normal towards the concave side and speed.

    Raises:
        ConfigurationError: If the field carries a vector potential.
        TurningPointError: If E - V + |grad R|^2 is not positive.

    """
    p = _planar(point)
    if field.vector_potential is not None:
        msg = f"{field.name} has a vector potential; use coriolis_curvature"
        raise ConfigurationError(msg)
    s = field.sample(p)
    kinetic = field.energy - field.potential(p)
    r2 = float(s.grad_R @ s.grad_R)
    speed2 = 2.0 * (kinetic + r2)
    if speed2 <= 0.0:
        msg = f"E - V + |grad R|^2 = {speed2 / 2.0} is not positive at {p}"
        raise TurningPointError(msg)

    if math.sqrt(r2) <= ZERO_GRADIENT * max(1.0, math.sqrt(speed2)):
        grad_s = s.grad_S
    else:
        ratio = 1.0 + 2.0 * kinetic / r2
        if ratio < 0.0:
            msg = f"|grad S|^2 is negative at {p}"
            raise TurningPointError(msg)
        perp = np.array([-s.grad_R[1], s.grad_R[0]])
        sign = 1.0 if perp @ s.grad_S >= 0.0 else -1.0
        grad_s = sign * math.sqrt(ratio) * perp

    v = s.grad_R + grad_s
    speed = math.sqrt(speed2)
    tangent = v / float(np.linalg.norm(v))
    force = -veff_gradient(field, p)
    normal = np.array([-tangent[1], tangent[0]])
    along = float(normal @ force)
    if along < 0.0:
        normal = -normal
    return OrbitGeometry(
        kappa=abs(along) / speed2, tau=0.0, tangent=tangent, normal=normal, speed=speed
    )


def coriolis_curvature(field: ScalarField, point: Any) -> float:
    """
    Signed curvature of a planar flow line with a vector potential.

    kappa v^2 = -n . grad V_eff + B v with n = (v_y, -v_x) / v the right-hand
    normal and B the curl of A; positive kappa turns clockwise. On the
    magnetic example's limit circle kappa = 1 / a0.

    Raises:
        TurningPointError: If the flow is at rest at the point.

    """
    p = _planar(point)
    v = field.velocity(p)
    speed2 = float(v @ v)
    if speed2 == 0.0:
        msg = f"The flow is at rest at {p}"
        raise TurningPointError(msg)
    speed = math.sqrt(speed2)
    normal = np.array([v[1], -v[0]]) / speed
    return (-float(normal @ veff_gradient(field, p)) + field.curl * speed) / speed2


def orbit_point(field: ScalarField, point: Any) -> OrbitPoint:
    """
    Data of the limit curve at a point where grad R vanishes.

    The outward normal is the direction of strongest concavity of R, the
    eigenvector of its Hessian with the smallest eigenvalue r_nn.
    """
    p = _planar(point)
    step = FIELD_STEP * field.scale
    hessian = finite_jacobian(lambda q: field.sample(q).grad_R, p, step)
    values, vectors = np.linalg.eigh(0.5 * (hessian + hessian.T))
    normal = vectors[:, 0]
    if normal @ p < 0.0:
        normal = -normal
    return OrbitPoint(
        energy=field.energy,
        potential=field.potential(p),
        normal_derivative=float(field.potential_gradient(p) @ normal),
        curvature=quantum_curvature_2d(field, p).kappa,
        r_nn=float(values[0]),
    )


def near_orbit_asymptotics(orbit: OrbitPoint, d: float) -> NearOrbitEstimate:
    """
    |grad R|^2 and |grad S|^2 at an outward normal offset d from the limit curve.

    |grad R|^2 ~ d (2 (E - V0) kappa0 - dV0/dn) + d^2 R_nn^2 and
    |grad S|^2 ~ |grad R|^2 + 2 (E - V0) - 2 d dV0/dn. The first-order
    coefficient vanishes on a classical orbit, where the centripetal balance
    2 (E - V0) kappa0 = dV0/dn holds.

    >>> point = OrbitPoint(energy=-0.5, potential=-1.0, normal_derivative=1.0,
    ...                    curvature=1.0, r_nn=-1.0)
    >>> near_orbit_asymptotics(point, 0.0).grad_s2
    1.0

    """
    kinetic = orbit.energy - orbit.potential
    first = d * (2.0 * kinetic * orbit.curvature - orbit.normal_derivative)
    grad_r2 = first + d * d * orbit.r_nn**2
    return NearOrbitEstimate(
        d=d,
        grad_r2=grad_r2,
        grad_s2=grad_r2 + 2.0 * kinetic - 2.0 * d * orbit.normal_derivative,
        first_order=first,
    )


def quantum_curvature_torsion_3d(a: float, point: Any) -> OrbitGeometry:
    """
    Curvature and torsion of the spatial flow of the circular Keplerian state.

    In time units of lambda / mu the flow is X' = -r^ + a (x - y, x + y, 0) / rho^2
    with a = lambda^2 / mu. The curvature is

        a^2 sqrt(2 (2 z^2 r^2 + rho^4) z^2 rho^2 + (2 a r^3 - rho^4)^2)
        / ((2 a^2 r^2 - 2 a rho^2 r + rho^4 + rho^2 z^2)^(3/2) rho)

    and the torsion is (X' x X'') . X''' / |X' x X''|^2 with the closed forms
    X'' = a r / r^3 - 2 a^2 (x, y, 0) / rho^4 and its derivative along the flow.
    Both reduce to 1 / a and 0 on the classical circle.

    Raises:
        ConfigurationError: If a is not positive or the point is not spatial.
        AxisSingularityError: On the axis rho = 0.

    """
    if a <= 0:
        msg = f"Radius must be positive, got {a}"
        raise ConfigurationError(msg)
    p = np.asarray(point, dtype=float)
    if p.shape != (3,):
        msg = f"Expected a spatial point, got shape {p.shape}"
        raise ConfigurationError(msg)
    x, y, z = p
    rho2 = x * x + y * y
    if rho2 == 0.0:
        msg = "The circular state is singular on the axis"
        raise AxisSingularityError(msg)
    r2 = rho2 + z * z
    r, rho = math.sqrt(r2), math.sqrt(rho2)
    planar = np.array([x, y, 0.0])

    v = -p / r + a * np.array([x - y, x + y, 0.0]) / rho2
    acceleration = a * p / r**3 - 2.0 * a * a * planar / rho2**2
    v_planar = np.array([v[0], v[1], 0.0])
    jerk = a * (v / r**3 - 3.0 * p * (p @ v) / r**5) - 2.0 * a * a * (
        v_planar / rho2**2 - 4.0 * planar * (planar @ v_planar) / rho2**3
    )

    numerator = a * a * math.sqrt(
        2.0 * (2.0 * z * z * r2 + rho2 * rho2) * z * z * rho2
        + (2.0 * a * r**3 - rho2 * rho2) ** 2
    )
    denominator = (
        2.0 * a * a * r2 - 2.0 * a * rho2 * r + rho2 * rho2 + rho2 * z * z
    ) ** 1.5 * rho
    binormal = np.cross(v, acceleration)
    twist = float(binormal @ binormal)
    tau = float(binormal @ jerk) / twist if twist > 0.0 else 0.0

    speed = float(np.linalg.norm(v))
    tangent = v / speed
    across = acceleration - (acceleration @ tangent) * tangent
    size = float(np.linalg.norm(across))
    normal = across / size if size > 0.0 else np.zeros(3)
    return OrbitGeometry(
        kappa=numerator / denominator,
        tau=tau,
        tangent=tangent,
        normal=normal,
        speed=speed,
    )


def _derivatives(trajectory: Trajectory, t: float, h: float) -> tuple[np.ndarray, ...]:
    """Five-point first, second and third derivatives of the dense output."""
    m2, m1, p1, p2 = (trajectory(t + k * h) for k in (-2.0, -1.0, 1.0, 2.0))
    mid = trajectory(t)
    first = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h)
    second = (-m2 + 16.0 * m1 - 30.0 * mid + 16.0 * p1 - p2) / (12.0 * h * h)
    third = (-m2 + 2.0 * m1 - 2.0 * p1 + p2) / (2.0 * h**3)
    return first, second, third


def trajectory_geometry(
    trajectory: Trajectory, t: float, step: float = FRENET_STEP
) -> OrbitGeometry:
    """
    Frenet curvature and torsion of an integrated flow at time t.

    Derivatives come from five-point stencils on the dense output at steps h
    and h / 2, combined by Richardson extrapolation.

    Raises:
        ConfigurationError: If the stencil leaves the integrated span.

    """
    t0, t1 = float(trajectory.t[0]), float(trajectory.t[-1])
    if not t0 + 2.0 * step <= t <= t1 - 2.0 * step:
        msg = f"t = {t} is within {2.0 * step} of the ends of [{t0}, {t1}]"
        raise ConfigurationError(msg)
    coarse = _derivatives(trajectory, t, step)
    fine = _derivatives(trajectory, t, 0.5 * step)
    first = (16.0 * fine[0] - coarse[0]) / 15.0
    second = (16.0 * fine[1] - coarse[1]) / 15.0
    third = (4.0 * fine[2] - coarse[2]) / 3.0
    if first.size == 2:
        first, second, third = (np.append(d, 0.0) for d in (first, second, third))

    speed = float(np.linalg.norm(first))
    binormal = np.cross(first, second)
    twist = float(binormal @ binormal)
    tangent = first / speed
    across = second - (second @ tangent) * tangent
    size = float(np.linalg.norm(across))
    return OrbitGeometry(
        kappa=math.sqrt(twist) / speed**3,
        tau=float(binormal @ third) / twist if twist > 0.0 else 0.0,
        tangent=tangent,
        normal=across / size if size > 0.0 else np.zeros_like(across),
        speed=speed,
    )


def parallel_curvature(kappa0: float, d: float) -> float:
    """
    Curvature of the parallel curve at distance d, kappa0 / (1 + d kappa0).

    >>> parallel_curvature(1.0, 1.0)
    0.5

    """
    scale = 1.0 + d * kappa0
    if scale <= 0.0:
        msg = f"The parallel curve at d = {d} passes the centre of curvature"
        raise ValidityError(msg)
    return kappa0 / scale


def _closed_derivatives(points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    forward, backward = np.roll(points, -1, axis=0), np.roll(points, 1, axis=0)
    return 0.5 * (forward - backward), forward - 2.0 * points + backward


def parallel_curve(points: Any, d: float) -> np.ndarray:
    """Offset a closed anticlockwise polyline by d along its outward normal."""
    points = np.asarray(points, dtype=float)
    first, _ = _closed_derivatives(points)
    tangent = first / np.linalg.norm(first, axis=1)[:, None]
    outward = np.column_stack([tangent[:, 1], -tangent[:, 0]])
    return points + d * outward


def curve_curvature(points: Any) -> np.ndarray:
    """Signed curvature of a closed, uniformly parametrised planar polyline."""
    points = np.asarray(points, dtype=float)
    first, second = _closed_derivatives(points)
    cross = first[:, 0] * second[:, 1] - first[:, 1] * second[:, 0]
    return cross / np.linalg.norm(first, axis=1) ** 3


def _kepler_circular_bump(mu: float, lam: float) -> BumpLocus:
    """V_eff = mu / r - lambda^2 / r^2 - mu^2 / lambda^2."""
    a = lam * lam / mu
    slope = lambda r: -mu / r**2 + 2.0 * lam * lam / r**3  # noqa: E731
    bend = lambda r: 2.0 * mu / r**3 - 6.0 * lam * lam / r**4  # noqa: E731
    root = brentq(slope, a, 4.0 * a, xtol=1e-14 * a)
    inflection = brentq(bend, 2.0 * a, 6.0 * a, xtol=1e-14 * a)
    return BumpLocus(BumpKind.KEPLER_CIRCULAR, a, root, inflection)


def _oscillator_circular_bump(omega: float, lam: float) -> BumpLocus:
    """V_eff = -omega^2 r^2 / 2 + 2 omega lambda - lambda^2 / r^2, concave."""
    a = math.sqrt(lam / omega)
    slope = lambda r: -omega * omega * r + 2.0 * lam * lam / r**3  # noqa: E731
    root = brentq(slope, a, 2.0 * a, xtol=1e-14 * a)
    return BumpLocus(BumpKind.OSCILLATOR_CIRCULAR, a, root)


def _kepler_eccentric_bump(mu: float, lam: float, e: float, samples: int) -> BumpLocus:
    """Radial maxima of V - |grad R|^2 fitted to 2p / r = c0 + c1 cos + c2 sin."""
    params = KeplerStateParams(mu=mu, lam=lam, e=e)
    a = params.a
    latus = a * (1.0 - e * e)
    theta = np.linspace(0.0, 2.0 * math.pi, samples, endpoint=False)
    radius = np.empty_like(theta)
    for i, angle in enumerate(theta):
        ray = np.array([math.cos(angle), math.sin(angle)])

        def depth(r: float, ray: np.ndarray = ray) -> float:
            g = kepler_RS(params, r * ray).grad_R
            return mu / r + float(g @ g)

        best = minimize_scalar(
            depth, bounds=(a, 4.0 * a), method="bounded", options={"xatol": 1e-12 * a}
        )
        radius[i] = best.x
    basis = np.column_stack([np.ones_like(theta), np.cos(theta), np.sin(theta)])
    coeffs, *_ = np.linalg.lstsq(basis, 2.0 * latus / radius, rcond=None)
    return BumpLocus(
        BumpKind.KEPLER_ECCENTRIC,
        a,
        root=2.0 * latus / coeffs[0],
        coefficient=coeffs[1] / (e * coeffs[0]),
        theta=theta,
        radius=radius,
    )


def antigravity_bump(  # noqa: PLR0913
    kind: BumpKind | str,
    strength: float,
    lam: float,
    e: float = 0.0,
    *,
    samples: int = BUMP_SAMPLES,
    logger: Any = LOGGER,
) -> BumpLocus:
    """
    Locate the maximum of a circular or nearly circular effective potential.

    The Keplerian circular bump sits at 2a with an inflection at 3a, the
    oscillator bump at 2^(1/4) a. For the eccentric Keplerian state the
    bump curve is found ray by ray and fitted to 2p / r = 1 + c e cos(theta),
    p the semi-latus rectum, which holds to first order in e.

    Arguments:
        kind: Which effective potential.
        strength: mu for the Keplerian kinds, omega for the oscillator.
        lam: Action scale.
        e: Eccentricity of the Keplerian elliptic state.
        samples: Rays for the eccentric fit.
        logger: Where the locus is reported.

    Returns:
        The bump locus, with radii in the units of a.

    Raises:
        ConfigurationError: For an unknown kind or non-positive parameters.
        ValidityError: If e leaves the first-order regime.

    """
    kind = BumpKind.from_str(kind) if isinstance(kind, str) else kind
    if kind is None:
        msg = "Unknown bump kind"
        raise ConfigurationError(msg)
    if strength <= 0 or lam <= 0:
        msg = f"Parameters must be positive, got {strength}, {lam}"
        raise ConfigurationError(msg)

    if kind is BumpKind.KEPLER_CIRCULAR:
        locus = _kepler_circular_bump(strength, lam)
    elif kind is BumpKind.OSCILLATOR_CIRCULAR:
        locus = _oscillator_circular_bump(strength, lam)
    else:
        if not 0.0 < e <= ECCENTRICITY_VALIDITY:
            msg = f"The first-order bump needs 0 < e <= {ECCENTRICITY_VALIDITY}"
            raise ValidityError(msg)
        locus = _kepler_eccentric_bump(strength, lam, e, samples)
    logger.debug(
        "Bump of %s at %.12g (scale %.12g)", kind.value, locus.root, locus.scale
    )
    return locus


def _ratio(
    residuals: dict[str, float],
    skipped: list[str],
    name: str,
    fraction: tuple[float, float, float],
) -> None:
    numerator, denominator, target = fraction
    if abs(denominator) <= IDENTITY_DENOMINATOR:
        skipped.append(name)
        return
    residuals[name] = numerator / denominator - target


def pauli_identity_check(params: KeplerStateParams, point: Any) -> PauliResiduals:
    """
    Residuals of the ratio identities for the Keplerian elliptic state.

    With Z = -i grad R + grad S, l = r x Z and a = Z x (r x Z) - mu r^,
    scaled a~ = a / sqrt(-2E), the identities are

        l3i / a2r = -a3r / l2i = a3i / l2r = e,
        l1i / l2r = -l1r / l2i = a1i / a2r = -sqrt(1 - e^2),

    and the angle of the state's rotation obeys cos = sqrt(1 - e^2) and
    sin = e. Ratios with a vanishing denominator are skipped; at z = 0
    the first two components of l vanish identically.

    Raises:
        BranchCutError: Where the state itself is singular.

    """
    p = np.asarray(point, dtype=float)
    if p.shape == (2,):
        p = np.append(p, 0.0)
    sample = kepler_RS(params, p)
    z = -1j * sample.grad_R + sample.grad_S
    r = float(np.linalg.norm(p))
    ell = np.cross(p, z)
    lenz = np.cross(z, np.cross(p, z)) - params.mu * p / r
    lenz /= math.sqrt(-2.0 * params.energy)
    e, root, lam = params.e, math.sqrt(1.0 - params.e**2), params.lam
    scale = max(1.0, lam)
    l1, l2, l3 = ell / scale
    a1, a2, a3 = lenz / scale
    turn = l3.real**2 + a1.real**2

    residuals: dict[str, float] = {}
    skipped: list[str] = []
    identities = {
        "l3i/a2r": (l3.imag, a2.real, e),
        "-a3r/l2i": (-a3.real, l2.imag, e),
        "a3i/l2r": (a3.imag, l2.real, e),
        "l1i/l2r": (l1.imag, l2.real, -root),
        "-l1r/l2i": (-l1.real, l2.imag, -root),
        "a1i/a2r": (a1.imag, a2.real, -root),
        "cos": ((lam / scale) * l3.real + a1.real * a2.imag, turn, root),
        "sin": ((lam / scale) * a1.real - l3.real * a2.imag, turn, e),
    }
    for name, fraction in identities.items():
        _ratio(residuals, skipped, name, fraction)
    return PauliResiduals(residuals=residuals, skipped=tuple(skipped))
