"""
Radial process of the circular oscillator state and its Bohr limit.

The radius obeys dr = ((n - 1/2) eps^2 / r - omega r) dt + eps dB. Its
transition density is a Bessel kernel; as n grows with n eps^2 = lambda
fixed it concentrates on the semi-classical orbit
y^2 = lambda / omega + (x^2 - lambda / omega) exp(-2 omega t).
"""

from __future__ import annotations

import math
from itertools import pairwise
from typing import TYPE_CHECKING, Any

import numpy as np
from scipy import special
from scipy.integrate import quad
from scipy.optimize import minimize_scalar

from ..const import LOGGER
from ..exceptions import DomainError
from ..numerics import log_bessel_I

if TYPE_CHECKING:
    from collections.abc import Callable, Sequence

    from ..models.fields import RadialDensityParams

_MAX_OCTAVES = 60


def log_transition_density(
    params: RadialDensityParams, x: float, s: float, y: float, t: float
) -> float:
    """
    log p(x, s; y, t) for the radial process.

    p = (2 omega / eps^2) exp((n - 1) omega tau) / (1 - exp(-2 omega tau))
        * y^n / x^(n - 1)
        * exp(-omega (y^2 + x^2 exp(-2 omega tau)) / (eps^2 (1 - exp(-2 omega tau))))
        * I_(n-1)(2 omega x y / (eps^2 (exp(omega tau) - exp(-omega tau))))

    with tau = t - s, evaluated through the scaled Bessel function.

    Raises:
        DomainError: Unless x, y > 0 and t > s >= 0.

    """
    if x <= 0 or y <= 0:
        msg = f"Radii must be positive, got x = {x}, y = {y}"
        raise DomainError(msg)
    if s < 0 or t <= s:
        msg = f"Times must satisfy t > s >= 0, got s = {s}, t = {t}"
        raise DomainError(msg)
    n, eps2, omega = params.n, params.epsilon2, params.omega
    tau = t - s
    decay = math.exp(-2.0 * omega * tau)
    gap = -math.expm1(-2.0 * omega * tau)
    argument = 2.0 * omega * x * y / (eps2 * 2.0 * math.sinh(omega * tau))
    return (
        math.log(2.0 * omega / eps2)
        + (n - 1) * omega * tau
        - math.log(gap)
        + n * math.log(y)
        - (n - 1) * math.log(x)
        - omega * (y * y + x * x * decay) / (eps2 * gap)
        + log_bessel_I(n - 1, argument)
    )


def transition_density(
    params: RadialDensityParams, x: float, s: float, y: float, t: float
) -> float:
    """p(x, s; y, t), a probability density in y."""
    return math.exp(log_transition_density(params, x, s, y, t))


def stationary_density(params: RadialDensityParams, y: float) -> float:
    """Long-time limit 2 c^n y^(2n - 1) exp(-c y^2) / Gamma(n), c = omega / eps^2."""
    if y <= 0:
        msg = f"Radius must be positive, got {y}"
        raise DomainError(msg)
    c = params.omega / params.epsilon2
    n = params.n
    return math.exp(
        math.log(2.0)
        + n * math.log(c)
        + (2 * n - 1) * math.log(y)
        - c * y * y
        - special.gammaln(n)
    )


def semiclassical_radius(params: RadialDensityParams, x: float, t: float) -> float:
    """
    Radius at time t of the semi-classical orbit started at x.

    >>> from trojan_lab.mechanics.models.fields import RadialDensityParams
    >>> unit = RadialDensityParams(n=1, epsilon2=1.0, omega=1.0)
    >>> semiclassical_radius(unit, 1.0, 5.0)
    1.0

    """
    if x <= 0 or t < 0:
        msg = f"Need x > 0 and t >= 0, got x = {x}, t = {t}"
        raise DomainError(msg)
    limit = params.lam / params.omega
    return math.sqrt(limit + (x * x - limit) * math.exp(-2.0 * params.omega * t))


def density_mode(
    params: RadialDensityParams, x: float, t: float, *, logger: Any = LOGGER
) -> float:
    """
    Most likely radius at time t for the process started at x at time zero.

    In the Bohr limit it tends to semiclassical_radius(params, x, t).
    """
    guess = semiclassical_radius(params, x, t)
    upper = 3.0 * max(guess, x, params.classical_radius)
    best = minimize_scalar(
        lambda y: -log_transition_density(params, x, 0.0, y, t),
        bounds=(1e-6 * upper, upper),
        method="bounded",
        options={"xatol": 1e-10 * upper},
    )
    logger.debug(
        "Mode of the n = %d kernel at t = %g: %.9g (orbit %.9g)",
        params.n,
        t,
        best.x,
        guess,
    )
    return float(best.x)


def preimage(
    params: RadialDensityParams, y: np.ndarray | float, t: float
) -> np.ndarray:
    """
    Start x0 whose semi-classical orbit reaches y at time t, NaN if none does.

    x0^2 = lambda / omega + (y^2 - lambda / omega) exp(2 omega t).
    """
    limit = params.lam / params.omega
    y = np.asarray(y, dtype=float)
    square = limit + (y * y - limit) * math.exp(2.0 * params.omega * t)
    with np.errstate(invalid="ignore"):
        return np.where((square > 0.0) & (y > 0.0), np.sqrt(square), np.nan)


def density_transport(
    rho0: Callable[[np.ndarray], np.ndarray],
    t: float,
    params: RadialDensityParams,
    y: np.ndarray | float,
) -> np.ndarray:
    """
    Bohr-limit density at time t of particles started with density rho0.

    rho_t(y) = rho0(x0) |dx0/dy| with dx0/dy = y exp(2 omega t) / x0. Radii
    below the image sqrt((lambda / omega)(1 - exp(-2 omega t))) of the
    centre carry no mass.

    Raises:
        DomainError: If t is negative.

    """
    if t < 0:
        msg = f"Time must be non-negative, got {t}"
        raise DomainError(msg)
    shape = np.shape(y)
    y = np.atleast_1d(np.asarray(y, dtype=float))
    start = preimage(params, y, t)
    reached = np.isfinite(start)
    density = np.zeros_like(y)
    x0 = start[reached]
    density[reached] = (
        np.asarray(rho0(x0), dtype=float)
        * y[reached]
        * math.exp(2.0 * params.omega * t)
        / x0
    )
    return density.reshape(shape)


def transported_mass(
    rho0: Callable[[float], float],
    t: float,
    params: RadialDensityParams,
    lower: float,
    upper: float,
    *,
    points: Sequence[float] = (),
) -> float:
    """
    Mass of the transported density on [lower, upper].

    The orbit map is increasing, so this is the rho0 mass of the preimage
    interval; it stays accurate however sharply rho_t has concentrated.
    The preimage is integrated octave by octave, so a feature of rho0 is
    resolved when it is not much narrower than its distance from the
    origin; points marks further features, such as the centre of a
    narrower bump.
    """
    if t < 0 or upper < lower:
        msg = f"Need t >= 0 and lower <= upper, got t = {t}, [{lower}, {upper}]"
        raise DomainError(msg)
    left, right = (float(v) for v in preimage(params, np.array([lower, upper]), t))
    if math.isnan(right):
        return 0.0
    left = 0.0 if math.isnan(left) else left
    mass = 0.0
    for a, b in pairwise(_octaves(left, right)):
        inside = sorted(p for p in points if a < p < b)
        piece, _ = quad(rho0, a, b, points=inside or None, epsabs=1e-14, limit=200)
        mass += piece
    return float(mass)


def _octaves(left: float, right: float) -> list[float]:
    """Edges splitting [left, right] at powers of two below right."""
    if right <= left:
        return [left, right]
    edges = [right]
    while edges[-1] / 2.0 > left and len(edges) <= _MAX_OCTAVES:
        edges.append(edges[-1] / 2.0)
    edges.append(left)
    return edges[::-1]
