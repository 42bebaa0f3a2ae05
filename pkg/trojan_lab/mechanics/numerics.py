"""Special functions and integration kernels."""

from __future__ import annotations

import cmath
import math
from typing import TYPE_CHECKING, Any

import numpy as np
from scipy import special
from scipy.integrate import solve_ivp

from .const import (
    DEGENERATE_DISCRIMINANT,
    HERMITE_ZERO,
    LAURENT_RADIUS,
    LAURENT_TERMS,
    LOGGER,
    POLE_RADIUS,
)
from .exceptions import (
    CharacteristicSingularityError,
    DiscriminantError,
    DomainError,
    HermiteZeroError,
    IntegrationError,
    ModulusRangeError,
    NonFiniteError,
    PoleProximityError,
)
from .models.numerics import IntegratorConfig, Trajectory, WeierstrassInvariants

if TYPE_CHECKING:
    from collections.abc import Callable, Sequence


def _laurent_coefficients(g2: float, g3: float) -> list[float]:
    """Coefficients c_k of z^(2k-2) in the Laurent series of p, k >= 2."""
    coeffs = [0.0, 0.0, g2 / 20.0, g3 / 28.0]
    for k in range(4, LAURENT_TERMS + 2):
        total = sum(coeffs[m] * coeffs[k - m] for m in range(2, k - 1))
        coeffs.append(3.0 * total / ((2 * k + 1) * (k - 3)))
    return coeffs


def _laurent(z: complex, coeffs: list[float]) -> tuple[complex, complex]:
    z2 = z * z
    value = 1.0 / z2
    deriv = -2.0 / (z2 * z)
    power = 1.0 + 0j  # z^(2k-4)
    for k in range(2, len(coeffs)):
        value += coeffs[k] * power * z2
        deriv += (2 * k - 2) * coeffs[k] * power * z
        power *= z2
    return value, deriv


def _degenerate(z: complex, inv: WeierstrassInvariants) -> tuple[complex, complex]:
    """Closed form when the cubic has a double root -c and a simple root 2c."""
    if inv.g2 == 0.0 and inv.g3 == 0.0:
        return 1.0 / z**2, -2.0 / z**3
    c = 3.0 * inv.g3 / (2.0 * inv.g2)
    k = cmath.sqrt(3.0 * c)
    s = cmath.sin(k * z)
    if abs(s) < POLE_RADIUS:
        msg = f"Argument {z} is a pole of the degenerate p function"
        raise PoleProximityError(msg)
    value = -c + 3.0 * c / s**2
    deriv = -6.0 * c * k * cmath.cos(k * z) / s**3
    return value, deriv


def weierstrass_p_pair(
    z: complex, inv: WeierstrassInvariants
) -> tuple[complex, complex]:
    """
    Evaluate the Weierstrass p function and its derivative.

    The Laurent series is summed at z / 2^N, small enough for fast
    convergence, then the duplication formula is applied N times.

    Arguments:
        z: The argument.
        inv: The invariants g2, g3.

    Returns:
        (p(z), p'(z)).

    Raises:
        PoleProximityError: If z, or an intermediate doubling, is within the
            pole radius of a lattice point.
        NonFiniteError: If z is not finite.

    """
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        msg = f"Argument must be finite, got {z}"
        raise NonFiniteError(msg)
    if abs(z) < POLE_RADIUS:
        msg = f"|z| = {abs(z)} is within the pole radius {POLE_RADIUS}"
        raise PoleProximityError(msg)

    g2, g3 = inv.g2, inv.g3
    scale = max(abs(g2) ** 0.25, abs(g3) ** (1.0 / 6.0))
    if abs(inv.discriminant) <= DEGENERATE_DISCRIMINANT * max(abs(g2) ** 3, g3**2):
        return _degenerate(z, inv)

    doublings = 0
    w = z
    while abs(w) * scale > LAURENT_RADIUS:
        w /= 2.0
        doublings += 1

    value, deriv = _laurent(w, _laurent_coefficients(g2, g3))
    for _ in range(doublings):
        if abs(deriv) < POLE_RADIUS * max(1.0, abs(value) ** 1.5):
            msg = f"Argument {z} lies on a lattice point of the period lattice"
            raise PoleProximityError(msg)
        slope = (6.0 * value**2 - g2 / 2.0) / deriv
        doubled = slope**2 / 4.0 - 2.0 * value
        deriv = -slope * (doubled - value) - deriv
        value = doubled

    if not (cmath.isfinite(value) and cmath.isfinite(deriv)):
        msg = f"p({z}) is not finite; the argument is too close to a pole"
        raise PoleProximityError(msg)
    return value, deriv


def weierstrass_p(z: complex, inv: WeierstrassInvariants) -> complex:
    """Evaluate the Weierstrass p function at z."""
    return weierstrass_p_pair(z, inv)[0]


def _check_modulus(k: float) -> None:
    if not math.isfinite(k):
        msg = f"Modulus must be finite, got {k}"
        raise NonFiniteError(msg)
    if not 0.0 <= k < 1.0:
        msg = f"Modulus must satisfy 0 <= k < 1, got {k}"
        raise ModulusRangeError(msg)


def _reduce_amplitude(phi: float) -> tuple[int, float]:
    """Split phi into m pi + r with r in [-pi/2, pi/2]."""
    turns = round(phi / math.pi)
    return turns, phi - turns * math.pi


def elliptic_F(phi: float, k: float) -> float:  # noqa: N802
    """
    Incomplete elliptic integral of the first kind.

    F(phi, k) = integral over [0, phi] of (1 - k^2 sin^2 t)^(-1/2) dt,
    evaluated through Carlson's symmetric integral R_F.

    Arguments:
        phi: The amplitude, any real angle.
        k: The modulus, 0 <= k < 1.

    Returns:
        The integral value.

    """
    _check_modulus(k)
    if not math.isfinite(phi):
        msg = f"Amplitude must be finite, got {phi}"
        raise NonFiniteError(msg)
    turns, rest = _reduce_amplitude(phi)
    m = k * k
    s, c = math.sin(rest), math.cos(rest)
    value = s * float(special.elliprf(c * c, 1.0 - m * s * s, 1.0))
    if turns:
        value += 2.0 * turns * float(special.elliprf(0.0, 1.0 - m, 1.0))
    return value


def elliptic_Pi(phi: float, n: float, k: float) -> float:  # noqa: N802
    """
    Incomplete elliptic integral of the third kind.

    Pi(phi, n, k) = integral over [0, phi] of
    dt / ((1 - n sin^2 t) sqrt(1 - k^2 sin^2 t)).

    Arguments:
        phi: The amplitude.
        n: The characteristic.
        k: The modulus, 0 <= k < 1.

    Returns:
        The integral value.

    Raises:
        CharacteristicSingularityError: If 1 - n sin^2 t vanishes on the path.

    """
    _check_modulus(k)
    if not (math.isfinite(phi) and math.isfinite(n)):
        msg = f"Amplitude and characteristic must be finite, got {phi}, {n}"
        raise NonFiniteError(msg)
    turns, rest = _reduce_amplitude(phi)
    s, c = math.sin(rest), math.cos(rest)
    # the integrand has a pole on the path unless 1 - n sin^2 stays positive
    reach = 1.0 if turns else s * s
    if 1.0 - n * reach <= 1e-14:  # noqa: PLR2004
        msg = f"1 - n sin^2(phi) vanishes on [0, {phi}] for n = {n}"
        raise CharacteristicSingularityError(msg)
    m = k * k
    delta = 1.0 - m * s * s
    value = s * float(special.elliprf(c * c, delta, 1.0)) + (
        n / 3.0
    ) * s**3 * float(special.elliprj(c * c, delta, 1.0, 1.0 - n * s * s))
    if turns:
        complete = float(special.elliprf(0.0, 1.0 - m, 1.0)) + (n / 3.0) * float(
            special.elliprj(0.0, 1.0 - m, 1.0, 1.0 - n)
        )
        value += 2.0 * turns * complete
    return value


def bessel_I(order: int, x: float) -> float:  # noqa: N802
    """
    Modified Bessel function of the first kind of integer order.

    Raises:
        DomainError: If x is negative or the order is negative.
        NonFiniteError: If the value overflows; use bessel_I_scaled instead.

    """
    if order < 0 or x < 0:
        msg = f"bessel_I needs order >= 0 and x >= 0, got {order}, {x}"
        raise DomainError(msg)
    value = float(special.iv(order, x))
    if not math.isfinite(value):
        msg = f"I_{order}({x}) overflows; use the scaled form"
        raise NonFiniteError(msg)
    return value


def bessel_I_scaled(order: int, x: float) -> float:  # noqa: N802
    """Return exp(-x) I_order(x)."""
    if order < 0 or x < 0:
        msg = f"bessel_I_scaled needs order >= 0 and x >= 0, got {order}, {x}"
        raise DomainError(msg)
    return float(special.ive(order, x))


def log_bessel_I(order: float, x: np.ndarray | float) -> np.ndarray | float:  # noqa: N802
    """Return log I_order(x) without overflow for large x."""
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore"):
        result = np.log(special.ive(order, x)) + x
    return float(result) if result.ndim == 0 else result


def hermite_ratio(n: int, u: complex) -> complex:
    """
    Return H_n'(sqrt(n) u) / (sqrt(n) H_n(sqrt(n) u)).

    Built from the ratios r_k = H_(k-1) / H_k, which obey
    r_(k+1) = 1 / (2x - 2k r_k); the ratio never overflows where the
    polynomials themselves would.

    Raises:
        HermiteZeroError: If H_k vanishes at the argument for some k <= n.

    """
    if n < 1:
        msg = f"n must be at least 1, got {n}"
        raise DomainError(msg)
    root = math.sqrt(n)
    x = root * complex(u)
    ratio = 0j
    for k in range(n):
        denominator = 2.0 * x - 2.0 * k * ratio
        if abs(denominator) <= HERMITE_ZERO * max(1.0, abs(2.0 * x)):
            msg = f"H_{k + 1} vanishes at x = {x}"
            raise HermiteZeroError(msg)
        ratio = 1.0 / denominator
    return 2.0 * root * ratio


def hermite_ratio_limit(u: complex) -> complex:
    """Large-n limit u - sqrt(u^2 - 2), on the branch decaying at infinity."""
    u = complex(u)
    return u - u * cmath.sqrt(1.0 - 2.0 / (u * u))


def integrate_ode(  # noqa: PLR0913
    f: Callable[[float, np.ndarray], np.ndarray],
    y0: Sequence[float] | np.ndarray,
    t_span: tuple[float, float],
    cfg: IntegratorConfig | None = None,
    *,
    events: Callable[..., float] | list[Callable[..., float]] | None = None,
    t_eval: np.ndarray | None = None,
    logger: Any = LOGGER,
) -> Trajectory:
    """
    Integrate y' = f(t, y) with an adaptive embedded Runge-Kutta pair.

    Arguments:
        f: The vector field.
        y0: The initial state.
        t_span: Start and end time.
        cfg: Tolerances and method; defaults to IntegratorConfig().
        events: Event functions, located on the dense output.
        t_eval: Times at which to store the solution.
        logger: Where integrator statistics go.

    Returns:
        The trajectory with dense output.

    Raises:
        NonFiniteError: If the initial or any stored state is not finite.
        IntegrationError: If the solver fails.

    """
    cfg = cfg or IntegratorConfig()
    y0 = np.asarray(y0, dtype=float)
    if not np.all(np.isfinite(y0)):
        msg = f"Initial state must be finite, got {y0}"
        raise NonFiniteError(msg)
    if not all(math.isfinite(t) for t in t_span):
        msg = f"Time span must be finite, got {t_span}"
        raise NonFiniteError(msg)

    result = solve_ivp(
        f,
        t_span,
        y0,
        method=cfg.method,
        rtol=cfg.rel_tol,
        atol=cfg.abs_tol,
        max_step=cfg.max_step,
        dense_output=True,
        events=events,
        t_eval=t_eval,
    )
    if not result.success:
        msg = f"Integration failed: {result.message}"
        raise IntegrationError(msg)
    if not np.all(np.isfinite(result.y)):
        msg = "Integration produced a non-finite state"
        raise NonFiniteError(msg)
    logger.debug(
        "Integrated %s over %s with %d evaluations, %d stored steps",
        getattr(f, "__name__", "field"),
        t_span,
        result.nfev,
        result.t.size,
    )
    return Trajectory(
        t=result.t,
        y=result.y,
        sol=result.sol,
        t_events=list(result.t_events or []),
        y_events=list(result.y_events or []),
        nfev=int(result.nfev),
    )


def real_cubic_roots(a: float, b: float, c: float, d: float) -> tuple[float, ...]:
    """
    Roots of a x^3 + b x^2 + c x + d, largest first, by Vieta's trigonometric form.

    Each root gets one Newton polishing step.

    Raises:
        DiscriminantError: If the cubic does not have three real roots.

    """
    if a == 0.0:
        msg = "Leading coefficient of the cubic vanishes"
        raise DiscriminantError(msg)
    lhs = (2.0 * b**3 - 9.0 * a * b * c + 27.0 * a * a * d) ** 2
    rhs = 4.0 * (b * b - 3.0 * a * c) ** 3
    if lhs > rhs * (1.0 + 1e-12):
        msg = "Cubic has one real root and a complex pair"
        raise DiscriminantError(msg)

    shift = b / (3.0 * a)
    p = (3.0 * a * c - b * b) / (3.0 * a * a)
    q = (2.0 * b**3 - 9.0 * a * b * c + 27.0 * a * a * d) / (27.0 * a**3)
    if p == 0.0:
        return (-shift, -shift, -shift)
    amplitude = 2.0 * math.sqrt(-p / 3.0)
    argument = (3.0 * q / (2.0 * p)) * math.sqrt(-3.0 / p)
    theta = math.acos(min(1.0, max(-1.0, argument))) / 3.0
    roots = []
    for k in range(3):
        x = amplitude * math.cos(theta - 2.0 * math.pi * k / 3.0) - shift
        slope = (3.0 * a * x + 2.0 * b) * x + c
        if slope != 0.0:
            x -= (((a * x + b) * x + c) * x + d) / slope
        roots.append(x)
    return tuple(sorted(roots, reverse=True))


def real_quadratic_roots(a: float, b: float, c: float) -> tuple[float, float]:
    """
    Roots of a x^2 + b x + c, largest first.

    Raises:
        DiscriminantError: If the roots are complex.

    """
    disc = b * b - 4.0 * a * c
    if a == 0.0 or disc < 0.0:
        msg = "Quadratic lacks two real roots"
        raise DiscriminantError(msg)
    root = math.sqrt(disc)
    # avoid cancellation in the smaller root
    q = -0.5 * (b + math.copysign(root, b))
    pair = (q / a, c / q) if q != 0.0 else (0.0, 0.0)
    return (max(pair), min(pair))
