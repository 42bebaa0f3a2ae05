"""
Restricted three-body problem in the frame rotating with the primaries.

S sits at (-r1, 0) and J at (r2, 0); the tilde coordinates used throughout
are centred on the mass centre O.
"""

from __future__ import annotations

import math
from typing import TYPE_CHECKING, Any

import numpy as np
from scipy.optimize import brentq

from .const import COLLISION_RADIUS, LOGGER, SQRT3, STABILITY_BOUNDARY
from .exceptions import CollisionError, ConfigurationError
from .models.enums import Orientation
from .models.system import (
    LagrangePoints,
    LinearisedParams,
    RotatingState,
    SystemParams,
)

if TYPE_CHECKING:
    from collections.abc import Callable, Sequence

# Boundary classification slack for the mass product against 1/27
_BOUNDARY_SLACK = 1e-14


def _distances(params: SystemParams, x: float, y: float) -> tuple[float, float]:
    d1 = math.hypot(x + params.r1, y)
    d2 = math.hypot(x - params.r2, y)
    limit = COLLISION_RADIUS * params.a0
    if d1 < limit or (params.mu2 > 0 and d2 < limit):
        msg = f"Position ({x}, {y}) is within {limit} of a primary"
        raise CollisionError(msg)
    return d1, d2


def full_rhs(
    params: SystemParams, state: Sequence[float] | np.ndarray
) -> tuple[float, float]:
    """
    Acceleration of the third body in the rotating frame.

    x'' - 2 w y' - w^2 x = -mu1 (x + r1) / d1^3 - mu2 (x - r2) / d2^3
    y'' + 2 w x' - w^2 y = -mu1 y / d1^3 - mu2 y / d2^3

    Arguments:
        params: The primaries.
        state: (x, y, xdot, ydot) in tilde coordinates.

    Returns:
        (xddot, yddot).

    Raises:
        CollisionError: If the body is within 1e-9 a0 of a primary.

    """
    x, y, vx, vy = (float(v) for v in state[:4])
    d1, d2 = _distances(params, x, y)
    w = params.omega
    g1 = params.mu1 / d1**3
    g2 = params.mu2 / d2**3 if params.mu2 > 0 else 0.0
    ax = 2.0 * w * vy + w * w * x - g1 * (x + params.r1) - g2 * (x - params.r2)
    ay = -2.0 * w * vx + w * w * y - g1 * y - g2 * y
    return ax, ay


def rotating_field(
    params: SystemParams,
) -> Callable[[float, np.ndarray], np.ndarray]:
    """Return the first-order vector field of full_rhs for integrate_ode."""

    def field(_t: float, y: np.ndarray) -> np.ndarray:
        ax, ay = full_rhs(params, y)
        return np.array([y[2], y[3], ax, ay])

    field.__name__ = "rotating_field"
    return field


def jacobi_K(params: SystemParams, state: Sequence[float] | np.ndarray) -> float:  # noqa: N802
    """Jacobi integral of the full problem, conserved by full_rhs."""
    x, y, vx, vy = (float(v) for v in state[:4])
    d1, d2 = _distances(params, x, y)
    potential = params.mu1 / d1 + (params.mu2 / d2 if params.mu2 > 0 else 0.0)
    w = params.omega
    return 0.5 * (vx * vx + vy * vy) - 0.5 * w * w * (x * x + y * y) - potential


def rotating_to_inertial(
    params: SystemParams, state: Sequence[float] | np.ndarray, t: float
) -> np.ndarray:
    """Map a rotating-frame state at time t to the inertial frame about O."""
    x, y, vx, vy = (float(v) for v in state[:4])
    w = params.omega
    c, s = math.cos(w * t), math.sin(w * t)
    ux, uy = vx - w * y, vy + w * x
    return np.array([c * x - s * y, s * x + c * y, c * ux - s * uy, s * ux + c * uy])


def _axis_acceleration(params: SystemParams, x: float) -> float:
    return full_rhs(params, (x, 0.0, 0.0, 0.0))[0]


def lagrange_points(params: SystemParams, *, logger: Any = LOGGER) -> LagrangePoints:
    """
    Locate the five equilibria of the rotating frame.

    L4 and L5 are the equilateral points; the collinear points are found by
    bracketed root finding on the x-axis. With a massless J only L3 exists
    on the axis besides J itself, at (-a0, 0).

    Arguments:
        params: The primaries.
        logger: Where the brackets are logged.

    Returns:
        The five points in tilde coordinates.

    """
    a0, r1, r2 = params.a0, params.r1, params.r2
    half_height = SQRT3 * a0 / 2.0
    centre_x = (r2 - r1) / 2.0
    l4 = (centre_x, half_height)
    l5 = (centre_x, -half_height)

    gap = 10.0 * COLLISION_RADIUS * a0
    tol = 1e-15 * a0

    def root(lo: float, hi: float) -> tuple[float, float]:
        logger.debug("Collinear point bracket [%s, %s]", lo, hi)
        x = brentq(lambda u: _axis_acceleration(params, u), lo, hi, xtol=tol)
        return (float(x), 0.0)

    l3 = root(-2.0 * a0, -r1 - gap)
    if params.mu2 == 0.0:
        return LagrangePoints(l1=None, l2=None, l3=l3, l4=l4, l5=l5)
    l1 = root(-r1 + gap, r2 - gap)
    l2 = root(r2 + gap, 2.0 * a0)
    return LagrangePoints(l1=l1, l2=l2, l3=l3, l4=l4, l5=l5)


def linearise(
    params: SystemParams, orientation: Orientation = Orientation.L4
) -> LinearisedParams:
    """
    Linearise the motion about L4 or L5 and diagonalise the potential.

    The rotation by gamma, tan 2 gamma = -sqrt(3) (mu1 - mu2) / (mu1 + mu2),
    removes the cross term; L5 flips the signs of gamma and Omega^2.

    Arguments:
        params: The primaries.
        orientation: Which equilateral point to expand about.

    Returns:
        The linearised coefficients. alpha and beta are NaN when the mass
        product is above 1/27; the boundary itself is flagged unstable.

    Example usage:

    >>> lin = linearise(SystemParams.from_mass_parameter(0.0))
    >>> round(lin.alpha, 12), lin.beta
    (1.0, 0.0)

    """
    sign = orientation.sign
    w = params.omega
    w2 = w * w
    total = params.total
    gamma = sign * 0.5 * math.atan(-SQRT3 * (params.mu1 - params.mu2) / total)
    omega2 = sign * 3.0 * SQRT3 * (params.mu1 - params.mu2) / (4.0 * params.a0**3)

    c, s = math.cos(gamma), math.sin(gamma)
    omega_x2 = c * c * 0.375 * w2 + omega2 * s * c + s * s * 1.125 * w2
    omega_y2 = 1.5 * w2 - omega_x2

    m = params.mass_product
    disc = 1.0 - 27.0 * m
    if -_BOUNDARY_SLACK < disc < 0.0:
        disc = 0.0
    stable = (STABILITY_BOUNDARY - m) > _BOUNDARY_SLACK
    if disc < 0.0:
        alpha = beta = math.nan
    else:
        root = math.sqrt(disc)
        alpha = math.sqrt(w2 * (1.0 + root) / 2.0)
        beta = math.sqrt(max(w2 * (1.0 - root) / 2.0, 0.0))

    return LinearisedParams(
        omega=w,
        gamma=gamma,
        omegaX2=omega_x2,
        omegaY2=omega_y2,
        Omega2=omega2,
        alpha=alpha,
        beta=beta,
        stable=stable,
        orientation=orientation,
        params=params,
    )


def linearised_rhs(lin: LinearisedParams, state: RotatingState) -> tuple[float, float]:
    """Return (X'', Y'') of X'' - 2wY' - 2wX^2 X = 0, Y'' + 2wX' - 2wY^2 Y = 0."""
    w = lin.omega
    xdd = 2.0 * w * state.Ydot + 2.0 * lin.omegaX2 * state.X
    ydd = -2.0 * w * state.Xdot + 2.0 * lin.omegaY2 * state.Y
    return xdd, ydd


def linearised_field(
    lin: LinearisedParams,
) -> Callable[[float, np.ndarray], np.ndarray]:
    """Return the linearised system as a first-order field on (X, Y, X', Y')."""
    w = lin.omega
    kx, ky = 2.0 * lin.omegaX2, 2.0 * lin.omegaY2

    def field(_t: float, y: np.ndarray) -> np.ndarray:
        return np.array(
            [y[2], y[3], 2.0 * w * y[3] + kx * y[0], -2.0 * w * y[2] + ky * y[1]]
        )

    field.__name__ = "linearised_field"
    return field


def modal_quartic(lin: LinearisedParams, lam: complex) -> complex:
    """Characteristic polynomial lam^4 + w^2 lam^2 + 4 wX^2 wY^2."""
    return lam**4 + lin.omega**2 * lam**2 + 4.0 * lin.omegaX2 * lin.omegaY2


def to_rotated(
    lin: LinearisedParams, state: Sequence[float] | np.ndarray, t: float = 0.0
) -> RotatingState:
    """
    Express a tilde-frame state relative to the equilibrium in principal axes.

    delta = x - c and epsilon = y - d are rotated by gamma:
    X = cos(g) delta + sin(g) epsilon, Y = -sin(g) delta + cos(g) epsilon.
    """
    x, y, vx, vy = (float(v) for v in state[:4])
    cx, cy = lin.centre
    c, s = math.cos(lin.gamma), math.sin(lin.gamma)
    delta, epsilon = x - cx, y - cy
    return RotatingState(
        X=c * delta + s * epsilon,
        Y=-s * delta + c * epsilon,
        Xdot=c * vx + s * vy,
        Ydot=-s * vx + c * vy,
        t=t,
    )


def from_rotated(lin: LinearisedParams, state: RotatingState) -> np.ndarray:
    """Inverse of to_rotated, returning (x, y, xdot, ydot)."""
    cx, cy = lin.centre
    delta, epsilon, ddot, edot = rotate_back(
        lin.gamma, state.X, state.Y, state.Xdot, state.Ydot
    )
    return np.array([cx + delta, cy + epsilon, ddot, edot])


def rotate_back(gamma: float, *values: Any) -> tuple[Any, ...]:
    """
    Map principal-axis pairs (X, Y) back to (delta, epsilon).

    Accepts pairs of scalars, arrays or complex amplitudes.
    """
    if len(values) % 2:
        msg = "rotate_back needs (X, Y) pairs"
        raise ConfigurationError(msg)
    c, s = math.cos(gamma), math.sin(gamma)
    out: list[Any] = []
    for big_x, big_y in zip(values[::2], values[1::2], strict=True):
        out.extend((c * big_x - s * big_y, s * big_x + c * big_y))
    return tuple(out)


def canonical_momenta(
    lin: LinearisedParams, state: RotatingState
) -> tuple[float, float]:
    """Canonical momenta (X' - wY, Y' + wX)."""
    w = lin.omega
    return state.Xdot - w * state.Y, state.Ydot + w * state.X


def canonical_hamiltonian(
    lin: LinearisedParams, q: Sequence[float], p: Sequence[float]
) -> float:
    """H = |p - A|^2 / 2 - wX^2 X^2 - wY^2 Y^2 with A = (-wY, wX)."""
    big_x, big_y = q
    w = lin.omega
    kx = p[0] + w * big_y
    ky = p[1] - w * big_x
    return (
        0.5 * (kx * kx + ky * ky)
        - lin.omegaX2 * big_x * big_x
        - lin.omegaY2 * big_y * big_y
    )


def from_canonical(
    lin: LinearisedParams, q: Sequence[float], p: Sequence[float], t: float = 0.0
) -> RotatingState:
    """Rebuild a RotatingState from canonical coordinates and momenta."""
    w = lin.omega
    return RotatingState(
        X=q[0], Y=q[1], Xdot=p[0] + w * q[1], Ydot=p[1] - w * q[0], t=t
    )
