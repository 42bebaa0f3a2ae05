"""
Isosceles-triangle motion of a massless third body.

The third body P3 keeps equal distances from both primaries, so the side
length is sqrt(rho^2 + c^2) with c^2 = r1 r2, and the force on it is central
about the mass centre O. Its orbit follows from the effective potential

    V(rho) = L^2 / (2 rho^2) - (mu1 + mu2) / sqrt(rho^2 + c^2)

either by quadrature, through the Weierstrass p function of a truncated
cubic, or through elliptic integrals of the first and third kind.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import TYPE_CHECKING, Any

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from .const import (
    APSIDAL_MAX_DENOMINATOR,
    APSIDAL_TOLERANCE,
    LOGGER,
    SQRT3,
    TWO_PI,
)
from .exceptions import (
    BlowUpRegionError,
    ConfigurationError,
    DegenerateRootError,
    DiscriminantError,
    InconsistentInitialDataError,
    NoBoundMotionError,
    OriginSingularityError,
    PoleProximityError,
)
from .models.isosceles import (
    ApsidalResult,
    FloquetResult,
    GeneralOrbit,
    H3Drift,
    HildanParameters,
    IsoscelesConfig,
    KCheck,
    LagrangeEllipseSolution,
    OrbitCurve,
    OrbitRoots,
    RadialBand,
)
from .models.numerics import IntegratorConfig, WeierstrassInvariants
from .numerics import (
    elliptic_F,
    elliptic_Pi,
    integrate_ode,
    real_cubic_roots,
    weierstrass_p,
)

if TYPE_CHECKING:
    from collections.abc import Callable, Sequence

    from .models.numerics import Trajectory
    from .models.system import SystemParams

# Below this fraction of the band, E - V is replaced by its linearisation
_ENDPOINT_FRACTION = 1e-7
# Relative slack for a circular orbit sitting exactly at the potential minimum
_CIRCULAR_SLACK = 1e-14
# Hildan resonance: two Hildan periods per three of the primary
_HILDAN_RATIO = 2.0 / 3.0


def isosceles_radius(params: SystemParams) -> float:
    """Radius mu_tilde a0 of the equilateral (Lagrange) position about O."""
    return params.mu_tilde * params.a0


def lagrange_mode_frequency(params: SystemParams) -> float:
    """
    Frequency k = sqrt(4 - 3 mu_tilde^2) of small radial oscillations.

    Measured against the true anomaly of the primaries.

    >>> from trojan_lab.mechanics.models.system import SystemParams
    >>> lagrange_mode_frequency(SystemParams(1.0, 0.0))
    1.0

    """
    return math.sqrt(4.0 - 3.0 * params.mu_tilde**2)


def kepler_conic(semi_latus: float, e: float, phi: np.ndarray | float) -> Any:
    """Conic rho = l / (1 + e cos phi) with periapsis at phi = 0."""
    return semi_latus / (1.0 + e * np.cos(phi))


def isosceles_position(params: SystemParams, rho: float) -> np.ndarray:
    """
    Place P3 at distance rho from O on the perpendicular bisector of SJ.

    S sits at (-r1, 0, 0) and J at (r2, 0, 0); the bisector plane is
    x = (r2 - r1) / 2.

    Raises:
        InconsistentInitialDataError: If rho <= (r2 - r1) / 2.

    """
    offset = (params.r2 - params.r1) / 2.0
    if rho <= offset:
        msg = f"rho = {rho} does not reach the bisector plane at {offset}"
        raise InconsistentInitialDataError(msg)
    return np.array([offset, 0.0, math.sqrt(rho * rho - offset * offset)])


# Angular momentum of the third body


def h3_drift(
    params: SystemParams,
    trajectory: Trajectory,
    times: np.ndarray | None = None,
) -> H3Drift:
    """
    Angular momentum of P3 about O along a rotating-frame trajectory.

    dh3/dt = mu1 r1 y (1/|SA|^3 - 1/|JA|^3), which vanishes exactly when
    |SA| = |JA|. The factor bound satisfies |dh3/dt| = bound * ||SA| - |JA||.

    Arguments:
        params: The primaries.
        trajectory: States (x, y, xdot, ydot) from rotating_field.
        times: Sample times on the dense output; the stored steps if None.

    Returns:
        The sampled drift.

    """
    if times is None:
        t, states = trajectory.t, trajectory.y
    else:
        t = np.asarray(times, dtype=float)
        states = trajectory(t)
    x, y, vx, vy = states[0], states[1], states[2], states[3]
    w = params.omega
    d1 = np.hypot(x + params.r1, y)
    d2 = np.hypot(x - params.r2, y)

    h3 = x * (vy + w * x) - y * (vx - w * y)
    strength = params.mu1 * params.r1
    h3dot = strength * y * (1.0 / d1**3 - 1.0 / d2**3)
    bound = strength * np.abs(y) * (d1 * d1 + d1 * d2 + d2 * d2) / (d1**3 * d2**3)
    return H3Drift(
        t=np.asarray(t),
        h3=h3,
        h3dot=h3dot,
        side_difference=d1 - d2,
        bound=bound,
    )


# Isosceles equation in the true anomaly of the primaries


def _primary_orbit(
    params: SystemParams, e: float, theta: float
) -> tuple[float, float, float]:
    """Separation r, dr/dtheta and angular momentum h of the primaries."""
    semi_latus = params.a0 * (1.0 - e * e)
    h = math.sqrt(params.total * semi_latus)
    r = semi_latus / (1.0 + e * math.cos(theta))
    r_prime = r * r * e * math.sin(theta) / semi_latus
    return r, r_prime, h


def isosceles_ode_rhs(
    cfg: IsoscelesConfig, theta: float, rho: float, rho_prime: float
) -> float:
    """
    Second derivative of rho in the true anomaly theta of the primaries.

    rho'' = (2/r) r' rho' + L^2 r^4 / (h^2 rho^3)
            - M r^4 / h^2 * rho (rho^2 + m r^2)^(-3/2)

    with l / r = 1 + e cos(theta), h^2 = M l and m = mu1 mu2 / M^2.

    Raises:
        OriginSingularityError: If rho is not positive.

    """
    if rho <= 0.0:
        msg = f"rho = {rho} has reached the mass centre"
        raise OriginSingularityError(msg)
    params = cfg.params
    r, r_prime, h = _primary_orbit(params, cfg.e_primary, theta)
    r4_h2 = r**4 / (h * h)
    side2 = rho * rho + params.mass_product * r * r
    return (
        2.0 * r_prime * rho_prime / r
        + cfg.L**2 * r4_h2 / rho**3
        - params.total * r4_h2 * rho / side2**1.5
    )


def integrate_isosceles(
    cfg: IsoscelesConfig,
    theta_span: tuple[float, float],
    integrator: IntegratorConfig | None = None,
    *,
    t_eval: np.ndarray | None = None,
) -> Trajectory:
    """
    Integrate the isosceles equation from cfg at theta_span[0].

    The state is (rho, drho/dtheta, phi) with dphi/dtheta = L r^2 / (rho^2 h).
    """
    theta0 = theta_span[0]
    r0, _, h = _primary_orbit(cfg.params, cfg.e_primary, theta0)
    rho_prime = cfg.rhodot * r0 * r0 / h

    def field(theta: float, y: np.ndarray) -> np.ndarray:
        r, _, hh = _primary_orbit(cfg.params, cfg.e_primary, theta)
        rho_pp = isosceles_ode_rhs(cfg, theta, y[0], y[1])
        return np.array([y[1], rho_pp, cfg.L * r * r / (y[0] ** 2 * hh)])

    field.__name__ = "isosceles_field"
    return integrate_ode(
        field, [cfg.rho, rho_prime, cfg.phi], theta_span, integrator, t_eval=t_eval
    )


def mathieu_stability(
    params: SystemParams, e: float, integrator: IntegratorConfig | None = None
) -> FloquetResult:
    """
    Floquet multipliers of z'' + 4 (k^2 + 3 mu_tilde e cos 2x) z = 0 over [0, pi].

    The perturbation about the Lagrange radius is exp(-e cos theta) z with
    x = theta / 2.

    Raises:
        ConfigurationError: If e is negative.

    """
    if e < 0:
        msg = f"Eccentricity must be non-negative, got {e}"
        raise ConfigurationError(msg)
    k2 = lagrange_mode_frequency(params) ** 2
    amplitude = 3.0 * params.mu_tilde * e
    integrator = integrator or IntegratorConfig(rel_tol=1e-12, abs_tol=1e-14)

    def field(x: float, y: np.ndarray) -> np.ndarray:
        stiffness = 4.0 * (k2 + amplitude * math.cos(2.0 * x))
        return np.array([y[1], -stiffness * y[0]])

    field.__name__ = "mathieu_field"
    columns = [
        integrate_ode(field, start, (0.0, math.pi), integrator).final
        for start in ([1.0, 0.0], [0.0, 1.0])
    ]
    monodromy = np.column_stack(columns)
    first, second = np.linalg.eigvals(monodromy)
    trace = float(np.trace(monodromy))
    stable = max(abs(first), abs(second)) <= 1.0 + 1e-8  # noqa: PLR2004
    return FloquetResult(
        monodromy=monodromy,
        multipliers=(complex(first), complex(second)),
        trace=trace,
        stable=stable,
    )


# Effective potential and the apsidal angle


def veff(params: SystemParams, angular: float, rho: Any) -> Any:
    """V(rho) = L^2 / (2 rho^2) - M / sqrt(rho^2 + c^2)."""
    return angular**2 / (2.0 * rho**2) - params.total / np.sqrt(rho**2 + params.c2)


def _grow_until(test: Callable[[float], bool], start: float) -> float:
    value = start
    for _ in range(200):
        if test(value):
            return value
        value *= 2.0
    msg = "No bracket found for the effective potential"
    raise NoBoundMotionError(msg)


def effective_potential(cfg: IsoscelesConfig) -> RadialBand:
    """
    Minimiser of the effective potential and the band allowed at cfg.E.

    The minimiser is the unique root of rho^4 / (rho^2 + c^2)^(3/2) = L^2 / M;
    the left side increases monotonically in rho.

    Raises:
        NoBoundMotionError: If E >= 0, L = 0, or E lies below the minimum.

    """
    params, angular, energy = cfg.params, cfg.L, cfg.E
    if energy >= 0.0:
        msg = f"Energy {energy} is not negative; the motion is unbounded"
        raise NoBoundMotionError(msg)
    if angular == 0.0:
        msg = "Zero angular momentum has no radial band"
        raise NoBoundMotionError(msg)
    total, c2 = params.total, params.c2
    target = angular**2 / total

    def defining(rho: float) -> float:
        return rho**4 / (rho * rho + c2) ** 1.5 - target

    # the root is never below L^2 / M, and equals it when c = 0
    if c2 == 0.0 or defining(target) >= 0.0:
        rho0 = target
    else:
        upper = _grow_until(lambda r: defining(r) > 0, target + math.sqrt(c2))
        rho0 = brentq(defining, target, upper, xtol=1e-15 * upper)
    v_min = float(veff(params, angular, rho0))
    curvature = 3.0 * angular**2 / rho0**4 + total * (c2 - 2.0 * rho0**2) / (
        rho0 * rho0 + c2
    ) ** 2.5

    gap = energy - v_min
    if abs(gap) <= _CIRCULAR_SLACK * abs(v_min):
        return RadialBand(rho0, v_min, rho0, rho0, curvature)
    if gap < 0:
        msg = f"Energy {energy} lies below the potential minimum {v_min}"
        raise NoBoundMotionError(msg)

    def excess(rho: float) -> float:
        return float(veff(params, angular, rho)) - energy

    inner = rho0
    while excess(inner) <= 0.0:
        inner /= 2.0
    outer = _grow_until(lambda r: excess(r) > 0, rho0)
    rho_min = brentq(excess, inner, rho0, xtol=1e-15 * rho0)
    rho_max = brentq(excess, rho0, outer, xtol=1e-15 * outer)
    return RadialBand(rho0, v_min, rho_min, rho_max, curvature)


def _potential_u(params: SystemParams, angular: float, u: float) -> float:
    return angular**2 * u * u / 2.0 - params.total * u / math.sqrt(
        1.0 + params.c2 * u * u
    )


def _potential_u_slope(params: SystemParams, angular: float, u: float) -> float:
    return angular**2 * u - params.total / (1.0 + params.c2 * u * u) ** 1.5


def apsidal_angle(
    cfg: IsoscelesConfig,
    *,
    max_denominator: int = APSIDAL_MAX_DENOMINATOR,
    tolerance: float = APSIDAL_TOLERANCE,
) -> ApsidalResult:
    """
    Polar angle swept between apocentre and pericentre.

    Phi = sqrt(L^2 / 2) * integral over [u_min, u_max] of du / sqrt(E - V(u)),
    u = 1 / rho. The substitution u = u_min + (u_max - u_min) sin^2(psi)
    removes the endpoint singularities. The orbit closes when Phi / 2 pi is
    within tolerance of m / n with n <= max_denominator.

    Raises:
        NoBoundMotionError: As for effective_potential, or for a circular orbit.

    """
    band = effective_potential(cfg)
    if band.rho_max == band.rho_min:
        msg = "A circular orbit has no apsides"
        raise NoBoundMotionError(msg)
    params, angular, energy = cfg.params, cfg.L, cfg.E
    u_min, u_max = 1.0 / band.rho_max, 1.0 / band.rho_min
    width = u_max - u_min
    slope_low = -_potential_u_slope(params, angular, u_min)
    slope_high = _potential_u_slope(params, angular, u_max)

    def integrand(psi: float) -> float:
        s2 = math.sin(psi) ** 2
        near, far = width * s2, width * (1.0 - s2)
        if near < _ENDPOINT_FRACTION * width:
            gap = slope_low * near
        elif far < _ENDPOINT_FRACTION * width:
            gap = slope_high * far
        else:
            gap = energy - _potential_u(params, angular, u_min + near)
        return 2.0 * math.sqrt(near * far) / math.sqrt(gap)

    value, _ = quad(
        integrand, 0.0, math.pi / 2.0, epsabs=1e-13, epsrel=1e-12, limit=200
    )
    phi = abs(angular) / math.sqrt(2.0) * value
    return ApsidalResult(phi=phi, ratio=closure_ratio(phi, max_denominator, tolerance))


def closure_ratio(
    phi: float,
    max_denominator: int = APSIDAL_MAX_DENOMINATOR,
    tolerance: float = APSIDAL_TOLERANCE,
) -> Fraction | None:
    """
    Nearest m / n to phi / 2 pi with n bounded, or None if none is close.

    >>> closure_ratio(math.pi)
    Fraction(1, 2)

    """
    turns = phi / TWO_PI
    ratio = Fraction(turns).limit_denominator(max_denominator)
    return ratio if abs(turns - float(ratio)) < tolerance else None


def orbit_field(cfg: IsoscelesConfig) -> Callable[[float, np.ndarray], np.ndarray]:
    """Field of u'' + u = (M / L^2) (1 + c^2 u^2)^(-3/2), u = 1/rho, in phi."""
    strength = cfg.params.total / cfg.L**2
    c2 = cfg.params.c2

    def field(_phi: float, y: np.ndarray) -> np.ndarray:
        return np.array([y[1], strength / (1.0 + c2 * y[0] ** 2) ** 1.5 - y[0]])

    field.__name__ = "orbit_field"
    return field


def integrate_isosceles_orbit(
    cfg: IsoscelesConfig,
    phi: Sequence[float] | np.ndarray,
    integrator: IntegratorConfig | None = None,
) -> OrbitCurve:
    """
    Orbit rho(phi) of the exact isosceles force, sampled at increasing phi.

    Raises:
        ConfigurationError: If a sample precedes cfg.phi.

    """
    samples = np.asarray(phi, dtype=float)
    if samples.size == 0 or samples[0] < cfg.phi:
        msg = f"Samples must start at or after phi = {cfg.phi}"
        raise ConfigurationError(msg)
    start = [1.0 / cfg.rho, -cfg.rhodot / cfg.L]
    end = float(samples[-1])
    if end == cfg.phi:
        return OrbitCurve(phi=samples, rho=np.full_like(samples, cfg.rho))
    trajectory = integrate_ode(
        orbit_field(cfg), start, (cfg.phi, end), integrator, t_eval=samples
    )
    return OrbitCurve(phi=samples, rho=1.0 / trajectory.y[0])


# Hildan paradigm and the Weierstrass orbit


def hildan_paradigm(r0: float, mu1: float) -> HildanParameters:
    """
    Keplerian ellipse in 3:2 resonance with aphelion on the circle r0.

    Example usage:

    >>> round(hildan_paradigm(1.0, 1.0).e, 4)
    0.3104

    Raises:
        ConfigurationError: If r0 or mu1 is not positive.

    """
    if r0 <= 0 or mu1 <= 0:
        msg = f"r0 and mu1 must be positive, got {r0}, {mu1}"
        raise ConfigurationError(msg)
    e = _HILDAN_RATIO ** (-2.0 / 3.0) - 1.0
    a = r0 / (1.0 + e)
    semi_latus = a * (1.0 - e * e)
    return HildanParameters(
        e=e,
        a=a,
        l=semi_latus,
        E=-mu1 / (2.0 * a),
        L=math.sqrt(mu1 * semi_latus),
    )


def hildan_config(params: SystemParams) -> IsoscelesConfig:
    """The paradigm Hildan at aphelion on the circle of radius a0, phi = 0."""
    hildan = hildan_paradigm(params.a0, params.mu1)
    return IsoscelesConfig.from_state(params, params.a0, 0.0, 0.0, hildan.L)


def config_from_apsides(
    params: SystemParams, rho_min: float, rho_max: float, phi: float = 0.0
) -> IsoscelesConfig:
    """
    Config at apocentre of the orbit whose radial band is [rho_min, rho_max].

    Raises:
        InconsistentInitialDataError: Unless 0 < rho_min < rho_max.

    """
    if not 0.0 < rho_min < rho_max:
        msg = f"Apsides must satisfy 0 < rho_min < rho_max, got {rho_min}, {rho_max}"
        raise InconsistentInitialDataError(msg)
    c2 = params.c2
    w_in = 1.0 / math.sqrt(rho_min**2 + c2)
    w_out = 1.0 / math.sqrt(rho_max**2 + c2)
    angular2 = 2.0 * params.total * (w_in - w_out) / (rho_min**-2 - rho_max**-2)
    return IsoscelesConfig.from_state(params, rho_max, 0.0, phi, math.sqrt(angular2))


def _truncation(cfg: IsoscelesConfig, *, first_order: bool) -> float:
    """Coefficient kappa of the cubic term -kappa u^3 / 2."""
    params = cfg.params
    if first_order:
        return params.mu2 * params.a0**2
    return params.total * params.c2


def weierstrass_setup(
    cfg: IsoscelesConfig, *, first_order: bool = True
) -> tuple[OrbitRoots, WeierstrassInvariants, float, float]:
    """
    Roots and invariants of Q(u) = -kappa u^3/2 - L^2 u^2/2 + M u + E.

    kappa is mu2 a0^2 when first_order, else the consistent M c^2. The
    invariants are exact for the cubic and reduce to
    g2 = L^4/48 + mu1 mu2 a0^2/8, g3 = mu1 mu2 L^2 a0^2/192 + L^6/1728
    to first order in mu2.

    Returns:
        The radial roots of C(rho) = rho^3 + M rho^2 / E - L^2 rho / (2E)
        - kappa / (2E), the invariants, Q'(u0) and Q''(u0) at u0 = 1/rho_max.

    Raises:
        NoBoundMotionError: If E >= 0.
        DiscriminantError: If the cubic lacks three real roots.

    """
    energy, angular = cfg.E, cfg.L
    if energy >= 0:
        msg = f"Energy {energy} is not negative; the motion is unbounded"
        raise NoBoundMotionError(msg)
    total = cfg.params.total
    kappa = _truncation(cfg, first_order=first_order)
    l2 = angular * angular

    if kappa == 0.0:
        disc = total * total + 2.0 * l2 * energy
        if disc < 0:
            msg = "Kepler quadratic has complex roots"
            raise DiscriminantError(msg)
        root = math.sqrt(disc)
        rho_max = (total + root) / (-2.0 * energy)
        rho_min = l2 / (total + root)
        rho_3 = 0.0
    else:
        rho_max, rho_min, rho_3 = real_cubic_roots(
            1.0, total / energy, -l2 / (2.0 * energy), -kappa / (2.0 * energy)
        )
    if not rho_max > rho_min > 0.0 >= rho_3:
        msg = f"Roots {rho_max}, {rho_min}, {rho_3} admit no bounded band"
        raise NoBoundMotionError(msg)

    inv = WeierstrassInvariants(
        g2=kappa * total / 8.0 + l2 * l2 / 48.0,
        g3=kappa * total * l2 / 192.0 + l2**3 / 1728.0 - kappa**2 * energy / 64.0,
    )
    u0 = 1.0 / rho_max
    q1 = -1.5 * kappa * u0 * u0 - l2 * u0 + total
    q2 = -(3.0 * kappa * u0 + l2)
    roots = OrbitRoots(
        a=1.0 / rho_min,
        b=u0,
        c=-math.inf if rho_3 == 0.0 else 1.0 / rho_3,
        rho_min=rho_min,
        rho_max=rho_max,
    )
    return roots, inv, q1, q2


def weierstrass_orbit(
    cfg: IsoscelesConfig,
    phi: Sequence[float] | np.ndarray,
    *,
    first_order: bool = True,
    phi0: float | None = None,
) -> OrbitCurve:
    """
    Orbit from u - u0 = Q'(u0) / 4 * [p(z; g2, g3) - Q''(u0) / 24]^-1.

    z = sqrt(2) (phi - phi0) / L and u0 = 1 / rho_max, so phi0 is the polar
    angle of apocentre; it defaults to cfg.phi, taking cfg at apocentre.

    Raises:
        NoBoundMotionError: If E >= 0.
        DiscriminantError: If the radial cubic lacks three real roots.

    """
    roots, inv, q1, q2 = weierstrass_setup(cfg, first_order=first_order)
    origin = cfg.phi if phi0 is None else phi0
    scale = math.sqrt(2.0) / cfg.L
    samples = np.asarray(phi, dtype=float)
    u = np.empty_like(samples)
    for i, angle in enumerate(samples):
        try:
            p = weierstrass_p(scale * (angle - origin), inv).real
        except PoleProximityError:
            u[i] = roots.b
            continue
        u[i] = roots.b + q1 / (4.0 * (p - q2 / 24.0))
    return OrbitCurve(phi=samples, rho=1.0 / u)


def _sin4_over_cos2(x: float) -> float:
    """Antiderivative of sin^4 x / cos^2 x vanishing at 0."""
    return math.sin(x) ** 3 / math.cos(x) - 1.5 * (x - 0.5 * math.sin(2.0 * x))


def _sin6_over_cos2(x: float) -> float:
    """Antiderivative of sin^6 x / cos^2 x vanishing at 0."""
    return math.sin(x) ** 5 / math.cos(x) - 1.25 * (
        1.5 * x - math.sin(2.0 * x) + math.sin(4.0 * x) / 8.0
    )


def weierstrass_orbit_asymptotic(
    cfg: IsoscelesConfig,
    phi: Sequence[float] | np.ndarray,
    *,
    first_order: bool = True,
    phi0: float | None = None,
    margin: float = 0.25,
) -> OrbitCurve:
    """
    First-order expansion of the Weierstrass orbit about the degenerate cubic.

    With c0 = L^2/24, k0 = sqrt(3 c0) and dg2, dg3 the excess of the
    invariants over their mu2 = 0 values,

        p(z) ~ -c0 + 3 c0 / sin^2(k0 (z - dz(z)))
        dz(w) = dg2 / (72 c0^2) int_0^w sin^4/cos^2 (k0 s) ds
              + (dg3 - c0 dg2) / (216 c0^3) int_0^w sin^6/cos^2 (k0 s) ds

    dz diverges where cos(k0 z) = 0, i.e. at phi - phi0 = pi mod 2 pi.

    Raises:
        BlowUpRegionError: If a sample lies within margin of that set.

    """
    roots, inv, q1, q2 = weierstrass_setup(cfg, first_order=first_order)
    origin = cfg.phi if phi0 is None else phi0
    l2 = cfg.L**2
    c0 = l2 / 24.0
    k0 = math.sqrt(3.0 * c0)
    dg2 = inv.g2 - l2 * l2 / 48.0
    dg3 = inv.g3 - l2**3 / 1728.0
    first = dg2 / (72.0 * c0 * c0 * k0)
    second = (dg3 - c0 * dg2) / (216.0 * c0**3 * k0)
    scale = math.sqrt(2.0) / cfg.L

    samples = np.asarray(phi, dtype=float)
    u = np.empty_like(samples)
    for i, angle in enumerate(samples):
        swept = angle - origin
        if abs(math.remainder(swept - math.pi, TWO_PI)) < margin:
            msg = f"phi - phi0 = {swept} lies in the blow-up region around pi"
            raise BlowUpRegionError(msg)
        x = k0 * scale * swept
        if abs(math.sin(x)) < 1e-12:  # noqa: PLR2004
            u[i] = roots.b
            continue
        shift = first * _sin4_over_cos2(x) + second * _sin6_over_cos2(x)
        s = math.sin(x - k0 * shift)
        p = -c0 + 3.0 * c0 / (s * s)
        u[i] = roots.b + q1 / (4.0 * (p - q2 / 24.0))
    return OrbitCurve(phi=samples, rho=1.0 / u)


# General orbit through elliptic integrals


def _reduction_kernel(
    a: float, b: float, c: float, d: float, w: float
) -> float:
    """
    Integral over [b, w] of dx / ((x - d) sqrt((a - x)(x - b)(x - c))).

    Equals 2 / ((c - d)(b - d) sqrt(a - c)) * [(c - b) Pi(K, n, p) + (b - d) F(K, p)]
    with p^2 = (a - b)/(a - c), n = (c - d) p^2 / (b - d) and
    sin^2 K = (a - c)(w - b) / ((a - b)(w - c)).
    """
    scale = max(abs(a), abs(b), abs(c))
    if abs(b - d) < 1e-12 * scale or abs(c - d) < 1e-12 * scale:  # noqa: PLR2004
        msg = f"Pole d = {d} coincides with a root of the cubic"
        raise DegenerateRootError(msg)
    p2 = (a - b) / (a - c)
    ratio = (a - c) * (w - b) / ((a - b) * (w - c))
    amplitude = math.asin(math.sqrt(min(1.0, max(0.0, ratio))))
    p = math.sqrt(p2)
    n = (c - d) * p2 / (b - d)
    bracket = (c - b) * elliptic_Pi(amplitude, n, p) + (b - d) * elliptic_F(
        amplitude, p
    )
    return 2.0 * bracket / ((c - d) * (b - d) * math.sqrt(a - c))


def side_cubic(cfg: IsoscelesConfig, w: float) -> float:
    """R(w) = E + M w - (L^2/2 + c^2 E) w^2 - M c^2 w^3, w = 1/|SA|."""
    params = cfg.params
    c2, energy = params.c2, cfg.E
    return (
        energy
        + params.total * w
        - (cfg.L**2 / 2.0 + c2 * energy) * w * w
        - params.total * c2 * w**3
    )


def side_roots(cfg: IsoscelesConfig) -> OrbitRoots:
    """
    Roots a > b > 0 > c of the side cubic R.

    Raises:
        NoBoundMotionError: If E >= 0 or the roots are not so ordered.
        DiscriminantError: If R lacks three real roots.

    """
    params = cfg.params
    if cfg.E >= 0:
        msg = f"Energy {cfg.E} is not negative; the motion is unbounded"
        raise NoBoundMotionError(msg)
    c2 = params.c2
    a, b, c = real_cubic_roots(
        -params.total * c2,
        -(cfg.L**2 / 2.0 + c2 * cfg.E),
        params.total,
        cfg.E,
    )
    if not a > b > 0.0 > c:
        msg = f"Side cubic roots {a}, {b}, {c} admit no bounded band"
        raise NoBoundMotionError(msg)
    if a * a * c2 >= 1.0:
        msg = "The band reaches the mass centre, w >= 1/c"
        raise NoBoundMotionError(msg)
    return OrbitRoots(
        a=a,
        b=b,
        c=c,
        rho_min=math.sqrt(1.0 / (a * a) - c2),
        rho_max=math.sqrt(1.0 / (b * b) - c2),
    )


def general_orbit_angle(cfg: IsoscelesConfig, roots: OrbitRoots, w: float) -> float:
    """
    Polar angle swept from apocentre (w = b) to side length 1/w.

    phi = L / sqrt(2) * int_b^w dx / ((1 - c^2 x^2) sqrt(R(x))), the two
    partial fractions 1/(1 -+ c x) reduced to F and Pi.
    """
    c = math.sqrt(cfg.params.c2)
    lead = math.sqrt(cfg.params.total) * c
    a, b, cr = roots.a, roots.b, roots.c
    minus = _reduction_kernel(a, b, cr, 1.0 / c, w)
    plus = _reduction_kernel(a, b, cr, -1.0 / c, w)
    return abs(cfg.L) / math.sqrt(2.0) * (plus - minus) / (2.0 * c * lead)


def general_orbit(cfg: IsoscelesConfig, samples: int = 201) -> GeneralOrbit:
    """
    Half an orbit, apocentre to pericentre, from the elliptic reduction.

    Samples are spaced as w = b + (a - b) sin^2(psi) so both apsides are
    resolved. For mu2 = 0 the reduction degenerates and the Kepler conic is
    used.

    Raises:
        NoBoundMotionError: For E >= 0, a circular or an unbounded band.
        DiscriminantError: If the side cubic lacks three real roots.
        DegenerateRootError: If a partial-fraction pole meets a root.

    """
    if samples < 2:  # noqa: PLR2004
        msg = f"Need at least two samples, got {samples}"
        raise ConfigurationError(msg)
    params = cfg.params
    psi = np.linspace(0.0, math.pi / 2.0, samples)

    if params.c2 == 0.0:
        roots, _, _, _ = weierstrass_setup(cfg, first_order=False)
        semi_latus = cfg.L**2 / params.total
        e = math.sqrt(max(0.0, 1.0 + 2.0 * cfg.L**2 * cfg.E / params.total**2))
        if e == 0.0:
            msg = "A circular orbit has no apsides"
            raise NoBoundMotionError(msg)
        w = roots.b + (roots.a - roots.b) * np.sin(psi) ** 2
        phi = np.arccos(np.clip((1.0 - semi_latus * w) / e, -1.0, 1.0))
        return GeneralOrbit(
            roots=roots, w=w, phi=phi, rho=1.0 / w, apsidal_angle=math.pi
        )

    roots = side_roots(cfg)
    w = roots.b + (roots.a - roots.b) * np.sin(psi) ** 2
    phi = np.array([general_orbit_angle(cfg, roots, float(x)) for x in w])
    rho = np.sqrt(1.0 / w**2 - params.c2)
    LOGGER.debug("General orbit roots %s, apsidal angle %s", roots, phi[-1])
    return GeneralOrbit(roots=roots, w=w, phi=phi, rho=rho, apsidal_angle=phi[-1])


# Equilateral configurations


def equilateral_k_check(params: SystemParams, side: float) -> KCheck:
    """
    Compare the two constant-k expressions for an isosceles triangle.

    k = |SA| / |OA| = (1 - 4 m cos^2(alpha0))^(-1/2) with cos(alpha0) =
    a0 / (2 side) and m = mu1 mu2 / M^2; the Kepler constraint forces
    k = a0 / |OA|. They agree only when side = a0.

    Raises:
        InconsistentInitialDataError: If side <= a0 / 2.

    """
    half = params.a0 / 2.0
    if side <= half:
        msg = f"Equal side {side} cannot span the base {params.a0}"
        raise InconsistentInitialDataError(msg)
    rho = math.sqrt(side * side - params.c2)
    cos_base = half / side
    k_geometric = (1.0 - 4.0 * params.mass_product * cos_base**2) ** -0.5
    return KCheck(side=side, rho=rho, k_geometric=k_geometric, k_kepler=params.a0 / rho)


def equilateral_configuration(
    masses: Sequence[float] | np.ndarray, side: float = 1.0
) -> np.ndarray:
    """Vertices of an equilateral triangle with its mass centre at the origin."""
    weights = np.asarray(masses, dtype=float)
    vertices = side * np.array([[0.0, 0.0], [1.0, 0.0], [0.5, SQRT3 / 2.0]])
    centre = weights @ vertices / weights.sum()
    return vertices - centre


def lagrange_similar_ellipse(
    masses: Sequence[float] | np.ndarray,
    e: float,
    theta0: float = 0.0,
    positions: np.ndarray | None = None,
    *,
    logger: Any = LOGGER,
) -> LagrangeEllipseSolution:
    """
    Initial data for three bodies on similar conics about their mass centre.

    Each body feels mu_i = M r_i^3(0) / a0^3(0) at the focus; all share the
    eccentricity e and true anomaly theta0, so h_i / r_i^2(0) is common.

    Arguments:
        masses: Three non-negative gravitational masses.
        e: Common eccentricity in [0, 1).
        theta0: Common initial true anomaly.
        positions: Equilateral vertices about the mass centre, one row per
            body; built with unit side if None.
        logger: Receives a summary of the construction.

    Returns:
        The positions, velocities, effective masses, angular momenta and
        Hamilton-Lenz-Runge vectors.

    Raises:
        InconsistentInitialDataError: For e outside [0, 1), a mass centre
            away from the origin, or a triangle that is not equilateral.

    """
    weights = np.asarray(masses, dtype=float)
    if weights.shape != (3,) or np.any(weights < 0) or weights.sum() <= 0:
        msg = f"Need three non-negative masses with positive sum, got {masses}"
        raise InconsistentInitialDataError(msg)
    if not 0.0 <= e < 1.0:
        msg = f"Eccentricity must lie in [0, 1), got {e}"
        raise InconsistentInitialDataError(msg)
    points = (
        equilateral_configuration(weights)
        if positions is None
        else np.asarray(positions, dtype=float)
    )
    sides = np.array(
        [np.linalg.norm(points[i] - points[(i + 1) % 3]) for i in range(3)]
    )
    a0 = float(sides.mean())
    if np.ptp(sides) > 1e-12 * a0:  # noqa: PLR2004
        msg = f"Triangle sides {sides} are not equal"
        raise InconsistentInitialDataError(msg)
    if np.linalg.norm(weights @ points) > 1e-12 * a0 * weights.sum():  # noqa: PLR2004
        msg = "Positions do not have their mass centre at the origin"
        raise InconsistentInitialDataError(msg)

    total = float(weights.sum())
    radii = np.linalg.norm(points, axis=1)
    mu_tilde = total * radii**3 / a0**3
    h = np.sqrt(mu_tilde * radii * (1.0 + e * math.cos(theta0)))
    radial = mu_tilde / h * e * math.sin(theta0)
    unit = points / radii[:, None]
    normal = np.column_stack([-unit[:, 1], unit[:, 0]])
    velocities = radial[:, None] * unit + (h / radii)[:, None] * normal
    lenz = np.column_stack(
        [
            velocities[:, 1] * h - mu_tilde * unit[:, 0],
            -velocities[:, 0] * h - mu_tilde * unit[:, 1],
        ]
    )
    logger.debug("Similar conics with side %s, e %s, mu_tilde %s", a0, e, mu_tilde)
    return LagrangeEllipseSolution(
        masses=weights,
        positions=points,
        velocities=velocities,
        e=e,
        theta0=theta0,
        mu_tilde=mu_tilde,
        h=h,
        lenz=lenz,
    )


def scale_factor(e: float, theta0: float, theta: Any) -> Any:
    """s = (1 + e cos theta0) / (1 + e cos theta), the common size ratio."""
    return (1.0 + e * math.cos(theta0)) / (1.0 + e * np.cos(theta))


def three_body_field(
    masses: Sequence[float] | np.ndarray,
) -> Callable[[float, np.ndarray], np.ndarray]:
    """Newtonian field for three planar bodies, state (positions, velocities)."""
    weights = np.asarray(masses, dtype=float)

    def field(_t: float, y: np.ndarray) -> np.ndarray:
        pos = y[:6].reshape(3, 2)
        acc = np.zeros((3, 2))
        for i in range(3):
            for j in range(3):
                if i != j:
                    gap = pos[j] - pos[i]
                    acc[i] += weights[j] * gap / np.linalg.norm(gap) ** 3
        return np.concatenate([y[6:], acc.ravel()])

    field.__name__ = "three_body_field"
    return field


def propagate_three_body(
    solution: LagrangeEllipseSolution,
    times: np.ndarray,
    integrator: IntegratorConfig | None = None,
) -> np.ndarray:
    """
    Integrate the full three-body problem from the solution's initial data.

    Returns:
        States of shape (len(times), 3, 4): x, y, vx, vy per body.

    """
    start = np.concatenate([solution.positions.ravel(), solution.velocities.ravel()])
    trajectory = integrate_ode(
        three_body_field(solution.masses),
        start,
        (0.0, float(times[-1])),
        integrator or IntegratorConfig(rel_tol=1e-12, abs_tol=1e-14),
        t_eval=np.asarray(times, dtype=float),
    )
    states = trajectory.y.T
    positions = states[:, :6].reshape(-1, 3, 2)
    velocities = states[:, 6:].reshape(-1, 3, 2)
    return np.concatenate([positions, velocities], axis=2)
