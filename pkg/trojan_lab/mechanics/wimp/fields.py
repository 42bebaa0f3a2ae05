"""
Semi-classical actions of the Keplerian and oscillator elliptic states.

Each state is the large-n limit of psi ~ exp((R + iS) / hbar). The complex
action W = R + iS solves (grad W)^2 / 2 = V - E, whose real and imaginary
parts are the energy and orthogonality equations. Square roots are on the
principal branch, which carries R to its maximum on the classical ellipse;
the branch cut is a segment inside the ellipse and is rejected.
"""

from __future__ import annotations

import cmath
import math
from typing import TYPE_CHECKING, Any

import numpy as np

from ..const import BRANCH_CUT_TOLERANCE
from ..exceptions import (
    BranchCutError,
    ConfigurationError,
    DegenerateModesError,
    NonFiniteError,
    SingularLocusError,
)
from ..models.enums import Mode, OscillatorVariant
from ..models.fields import (
    FieldSample,
    KeplerStateParams,
    OscillatorStateParams,
    ScalarField,
)
from ..numerics import hermite_ratio

if TYPE_CHECKING:
    from ..models.system import LinearisedParams


def _point(point: Any) -> np.ndarray:
    p = np.asarray(point, dtype=float)
    if p.shape not in {(2,), (3,)}:
        msg = f"Expected a point in 2 or 3 dimensions, got shape {p.shape}"
        raise ConfigurationError(msg)
    if not np.all(np.isfinite(p)):
        msg = f"Point must be finite, got {p}"
        raise NonFiniteError(msg)
    return p


def _principal_sqrt(z: complex, what: str) -> complex:
    """Principal square root, refusing arguments on the negative real axis."""
    if z.real <= 0.0 and abs(z.imag) <= BRANCH_CUT_TOLERANCE * max(1.0, abs(z)):
        msg = f"{what} = {z} lies on the branch cut"
        raise BranchCutError(msg)
    return cmath.sqrt(z)


def _kepler_circular(params: KeplerStateParams, p: np.ndarray) -> FieldSample:
    """W = -(mu / lambda) r + lambda log(x + iy)."""
    mu, lam = params.mu, params.lam
    rho2 = p[0] ** 2 + p[1] ** 2
    if rho2 == 0.0:
        msg = f"The circular state is singular on the axis, got {p}"
        raise BranchCutError(msg)
    r = float(np.linalg.norm(p))
    planar = np.zeros_like(p)
    planar[:2] = p[:2]
    turn = np.zeros_like(p)
    turn[:2] = (-p[1], p[0])
    return FieldSample(
        R=-(mu / lam) * r + 0.5 * lam * math.log(rho2),
        S=lam * math.atan2(p[1], p[0]),
        grad_R=-(mu / lam) * p / r + lam * planar / rho2,
        grad_S=lam * turn / rho2,
    )


def kepler_RS(params: KeplerStateParams, point: Any) -> FieldSample:  # noqa: N802
    """
    R, S and their gradients for the Keplerian elliptic state.

    R + iS = -(mu / lambda) r + (lambda nu / 2)(1 - s) - lambda log(nu)
        - 2 lambda log(1 - s),
    s = sqrt(1 - 4 / nu), nu = (mu / lambda^2)(r - x / e - i y sqrt(1 - e^2) / e).

    The gradient reduces to -(mu / lambda) r^ + g (r^ - c) with
    g = (mu / (2 lambda))(1 - s) and c = (1 / e, i sqrt(1 - e^2) / e, 0).
    The classical ellipse r = a (1 - e^2) / (1 + e cos(theta)) has its
    pericentre on the positive x axis. Points may be planar or spatial.

    Arguments:
        params: The state.
        point: (x, y) or (x, y, z).

    Returns:
        The field sample; S is defined modulo 2 pi lambda.

    Raises:
        BranchCutError: At the centre or on the cut of s.

    Example usage:

    >>> state = KeplerStateParams(mu=1.0, lam=1.0, e=0.0)
    >>> sample = kepler_RS(state, (1.0, 0.0))
    >>> float(sample.grad_R[0]), float(sample.grad_S[1])
    (0.0, 1.0)

    """
    p = _point(point)
    r = float(np.linalg.norm(p))
    if r == 0.0:
        msg = "The Keplerian state is singular at the centre"
        raise BranchCutError(msg)
    if params.e == 0.0:
        return _kepler_circular(params, p)

    mu, lam = params.mu, params.lam
    alpha, beta = params.alpha, params.beta
    nu = (mu / lam**2) * (r - p[0] * alpha - 1j * p[1] * beta)
    s = _principal_sqrt(1.0 - 4.0 / nu, "1 - 4/nu")
    w = (
        -(mu / lam) * r
        + 0.5 * lam * nu * (1.0 - s)
        - lam * cmath.log(nu)
        - 2.0 * lam * cmath.log(1.0 - s)
    )
    c = np.zeros(p.shape, dtype=complex)
    c[0], c[1] = alpha, 1j * beta
    rhat = p / r
    grad = -(mu / lam) * rhat + (0.5 * mu / lam) * (1.0 - s) * (rhat - c)
    return FieldSample(R=w.real, S=w.imag, grad_R=grad.real, grad_S=grad.imag)


def kepler_gradR2_closed_form(  # noqa: N802
    params: KeplerStateParams, point: Any
) -> float:
    """
    |grad R|^2 of the Keplerian state in real arithmetic.

    With gamma_R + i gamma_I the principal root sqrt(1 - 4 / nu),

    |grad R|^2 = (mu^2 / 4 lambda^2) ((1 + gR)^2
        + ((1 - gR)^2 + gI^2 (1 - e^2)) / e^2 + 2 (1 - gR^2) x / (e r)
        + 2 gI (1 + gR) y sqrt(1 - e^2) / (e r)).

    Raises:
        SingularLocusError: Where (e r - x)^2 + (1 - e^2) y^2 or gamma_R vanishes.

    """
    p = _point(point)
    mu, lam, e = params.mu, params.lam, params.e
    r = float(np.linalg.norm(p))
    x, y = p[0], p[1]
    if e == 0.0:
        rho2 = x * x + y * y
        if rho2 == 0.0:
            msg = "The circular closed form is singular on the axis"
            raise SingularLocusError(msg)
        return mu**2 / lam**2 - 2.0 * mu / r + lam**2 / rho2

    root = math.sqrt(1.0 - e * e)
    off = e * r - x
    across = (1.0 - e * e) * y * y
    denominator = off * off + across
    if denominator == 0.0:
        msg = f"(e r - x)^2 + (1 - e^2) y^2 vanishes at {p}"
        raise SingularLocusError(msg)
    four = 4.0 * lam**2 * e / mu
    two = 2.0 * lam**2 * e / mu
    modulus = math.sqrt(((off - four) ** 2 + across) / denominator)
    real = ((off - two) ** 2 + across - two * two) / denominator
    square = 0.5 * modulus + 0.5 * real
    if square <= BRANCH_CUT_TOLERANCE * max(1.0, modulus):
        msg = f"gamma_R vanishes at {p}"
        raise SingularLocusError(msg)
    gamma_r = math.sqrt(square)
    gamma_i = -2.0 * lam**2 * e * root * y / (mu * denominator * gamma_r)
    return (mu**2 / (4.0 * lam**2)) * (
        (1.0 + gamma_r) ** 2
        + ((1.0 - gamma_r) ** 2 + gamma_i**2 * (1.0 - e * e)) / e**2
        + 2.0 * (1.0 - gamma_r**2) * x / (e * r)
        + 2.0 * gamma_i * (1.0 + gamma_r) * y * root / (e * r)
    )


def kepler_field(params: KeplerStateParams, dimension: int = 2) -> ScalarField:
    """The Keplerian state with V = -mu / r."""
    mu = params.mu

    def potential(p: np.ndarray) -> float:
        return -mu / float(np.linalg.norm(p))

    def potential_gradient(p: np.ndarray) -> np.ndarray:
        return mu * p / float(np.linalg.norm(p)) ** 3

    return ScalarField(
        name=f"kepler(e={params.e})",
        energy=params.energy,
        action=lambda p: kepler_RS(params, p),
        potential=potential,
        potential_gradient=potential_gradient,
        dimension=dimension,
        scale=params.a,
    )


def _oriented(params: OscillatorStateParams, p: np.ndarray) -> np.ndarray:
    q = p.copy()
    if params.major_axis_x:
        q[[0, 1]] = q[[1, 0]]
    return q


def _form(params: OscillatorStateParams, q: np.ndarray) -> tuple[complex, np.ndarray]:
    """Q = (1 - a) x^2 / 2 + (1 + a) y^2 / 2 - i b x y and its gradient."""
    alpha, beta = params.alpha, params.beta
    x, y = q[0], q[1]
    value = 0.5 * (1.0 - alpha) * x * x + 0.5 * (1.0 + alpha) * y * y
    value -= 1j * beta * x * y
    grad = np.zeros(q.shape, dtype=complex)
    grad[0] = (1.0 - alpha) * x - 1j * beta * y
    grad[1] = (1.0 + alpha) * y - 1j * beta * x
    return value, grad


def oscillator_RS(  # noqa: N802
    params: OscillatorStateParams, point: Any
) -> FieldSample:
    """
    R, S and their gradients for the isotropic oscillator elliptic state.

    With w = u^2 = (omega / lambda) Q and sigma = sqrt(1 - 2 / w),

    R + iS = -omega r^2 / 2 + lambda ((w / 2)(1 - sigma) + log(u (1 + sigma)))

    for the LOG variant, the integral of the large-n Hermite ratio
    u - sqrt(u^2 - 2). The PRINTED variant replaces the logarithm by
    u (1 + sigma); it does not solve the semi-classical equations and is
    kept for comparison against the finite-n state.

    Raises:
        BranchCutError: At the centre or on the cut of sigma.

    """
    p = _point(point)
    q = _oriented(params, p)
    omega, lam = params.omega, params.lam
    form, grad_form = _form(params, q)
    w = (omega / lam) * form
    if abs(w) == 0.0:
        msg = "The oscillator state is singular at the centre"
        raise BranchCutError(msg)
    sigma = _principal_sqrt(1.0 - 2.0 / w, "1 - 2/w")
    r2 = float(q @ q)

    if params.variant is OscillatorVariant.PRINTED:
        u = cmath.sqrt(w)
        action = 0.5 * w * (1.0 - sigma) + u * (1.0 + sigma)
        factor = 1.0 - sigma - 1.0 / (w * sigma) + 1.0 / u + 1.0 / (u * sigma)
    else:
        action = 0.5 * w * (1.0 - sigma) + 0.5 * cmath.log(w) + cmath.log(1.0 + sigma)
        factor = 1.0 - sigma

    total = -0.5 * omega * r2 + lam * action
    grad = -omega * q + 0.5 * omega * factor * grad_form
    if params.major_axis_x:
        grad[[0, 1]] = grad[[1, 0]]
    return FieldSample(R=total.real, S=total.imag, grad_R=grad.real, grad_S=grad.imag)


def oscillator_gradient_finite_n(
    params: OscillatorStateParams, point: Any, n: int
) -> np.ndarray:
    """
    Complex gradient of hbar log psi for the state at quantum number n.

    psi = exp(-omega r^2 / (2 hbar)) H_n(sqrt(n) u) with hbar = lambda / n, so
    the gradient is -omega r + (omega / 2)(Q_n(u) / u) grad Q, Q_n the
    Hermite ratio. It tends to grad(R + iS) of the LOG variant as n grows.
    """
    p = _point(point)
    q = _oriented(params, p)
    form, grad_form = _form(params, q)
    u = cmath.sqrt((params.omega / params.lam) * form)
    if u == 0:
        msg = "The oscillator state is singular at the centre"
        raise BranchCutError(msg)
    ratio = hermite_ratio(n, u)
    grad = -params.omega * q + 0.5 * params.omega * (ratio / u) * grad_form
    if params.major_axis_x:
        grad[[0, 1]] = grad[[1, 0]]
    return grad


def oscillator_field(params: OscillatorStateParams, dimension: int = 2) -> ScalarField:
    """The oscillator state with V = omega^2 r^2 / 2."""
    omega = params.omega
    return ScalarField(
        name=f"oscillator(e={params.e}, {params.variant.value})",
        energy=params.energy,
        action=lambda p: oscillator_RS(params, p),
        potential=lambda p: 0.5 * omega**2 * float(p @ p),
        potential_gradient=lambda p: omega**2 * p,
        dimension=dimension,
        scale=params.major,
    )


def magnetic_field(b: float, a0: float) -> ScalarField:
    """
    Free charge in the uniform field (0, 0, b), A = (b / 2)(-y, x).

    grad R = (b / 2 r^2)(a0^2 - r^2)(x, y) and grad S = L (-y, x) / r^2 with
    L = -b a0^2 / 2 and E = b^2 a0^2 / 2; the drift spirals onto r = a0 with
    |r^2 - a0^2| decaying as exp(-b t).
    """
    if b <= 0 or a0 <= 0:
        msg = f"Field strength and radius must be positive, got {b}, {a0}"
        raise ConfigurationError(msg)
    angular = -0.5 * b * a0 * a0

    def action(p: np.ndarray) -> FieldSample:
        r2 = float(p @ p)
        if r2 == 0.0:
            msg = "The magnetic state is singular at the centre"
            raise BranchCutError(msg)
        return FieldSample(
            R=0.5 * b * (0.5 * a0 * a0 * math.log(r2) - 0.5 * r2),
            S=angular * math.atan2(p[1], p[0]),
            grad_R=(0.5 * b / r2) * (a0 * a0 - r2) * p,
            grad_S=angular * np.array([-p[1], p[0]]) / r2,
        )

    return ScalarField(
        name=f"magnetic(b={b})",
        energy=0.5 * b * b * a0 * a0,
        action=action,
        potential=lambda _p: 0.0,
        potential_gradient=lambda p: np.zeros_like(p),
        scale=a0,
        vector_potential=lambda p: 0.5 * b * np.array([-p[1], p[0]]),
        curl=b,
    )


def sigma_field(mu: float, lam: float, sigma2: float) -> ScalarField:
    """
    Coulomb state of the modified heat equation with viscosity sigma^2.

    R = -(mu / lambda) r + (lambda / 2) log(r^2) + sigma^2 theta,
    S = lambda theta - (sigma^2 / 2) log(r^2), and
    V_eff = mu (lambda - sigma^2) / (lambda r) - (lambda^2 + sigma^4) / r^2
        - mu^2 / lambda^2.
    grad R . grad S does not vanish for sigma^2 > 0.
    """
    if mu <= 0 or lam <= 0:
        msg = f"mu and lambda must be positive, got {mu}, {lam}"
        raise ConfigurationError(msg)
    if not 0.0 <= sigma2 < lam:
        msg = f"sigma^2 must lie in [0, lambda), got {sigma2}"
        raise ConfigurationError(msg)

    def action(p: np.ndarray) -> FieldSample:
        r2 = float(p @ p)
        if r2 == 0.0:
            msg = "The viscous state is singular at the centre"
            raise BranchCutError(msg)
        r = math.sqrt(r2)
        theta = math.atan2(p[1], p[0])
        radial, turn = p / r2, np.array([-p[1], p[0]]) / r2
        return FieldSample(
            R=-(mu / lam) * r + 0.5 * lam * math.log(r2) + sigma2 * theta,
            S=lam * theta - 0.5 * sigma2 * math.log(r2),
            grad_R=-(mu / lam) * p / r + lam * radial + sigma2 * turn,
            grad_S=lam * turn - sigma2 * radial,
        )

    def veff(p: np.ndarray) -> float:
        r = float(np.linalg.norm(p))
        return (
            mu * (lam - sigma2) / (lam * r)
            - (lam * lam + sigma2 * sigma2) / (r * r)
            - mu * mu / (lam * lam)
        )

    return ScalarField(
        name=f"sigma(sigma2={sigma2})",
        energy=-(mu**2) / (2.0 * lam**2),
        action=action,
        potential=lambda p: -mu / float(np.linalg.norm(p)),
        potential_gradient=lambda p: mu * p / float(np.linalg.norm(p)) ** 3,
        scale=lam * lam / mu,
        veff=veff,
        winding=2.0 * math.pi * sigma2,
    )


def trojan_state_map(
    lin: LinearisedParams,
    amplitude: complex,
    mode: Mode = Mode.ALPHA,
    variant: OscillatorVariant = OscillatorVariant.LOG,
) -> OscillatorStateParams:
    """
    Oscillator elliptic state of a single excited mode about L4 or L5.

    With the other mode's hidden constant held at zero the motion in the
    principal frame is the ellipse with semi-axes 4 w u |C| along X and
    2 |u^2 + 2 wX^2| |C| along Y, u the mode frequency, traced at frequency
    u. The state has omega = u and lambda = u (a^2 + b^2) / 2.

    Raises:
        DegenerateModesError: If the linearisation is unstable, the
            amplitude vanishes or the ellipse is a circle.

    """
    if not lin.stable or math.isnan(lin.alpha):
        msg = "The linearisation is not stable; no real modal frequencies"
        raise DegenerateModesError(msg)
    size = abs(amplitude)
    if size == 0.0:
        msg = "A vanishing modal amplitude gives the point state"
        raise DegenerateModesError(msg)
    u = lin.alpha if mode is Mode.ALPHA else lin.beta
    along_x = 4.0 * lin.omega * u * size
    along_y = 2.0 * abs(u * u + 2.0 * lin.omegaX2) * size
    total = along_x**2 + along_y**2
    e = abs(along_y**2 - along_x**2) / total
    if e == 0.0:
        msg = "The modal ellipse is a circle; no elliptic state"
        raise DegenerateModesError(msg)
    return OscillatorStateParams(
        omega=u,
        lam=0.5 * u * total,
        e=e,
        variant=variant,
        major_axis_x=along_x > along_y,
    )
