"""
Conserved quantities of the linearised L4/L5 motion.

The energy J and the two hidden constants D1, D2 are quadratic forms in the
state; D1 and D2 are proportional to the squared moduli of the modal
amplitudes C1 and C3.
"""

from __future__ import annotations

import cmath
import math
from typing import TYPE_CHECKING, Any

import numpy as np
from scipy.integrate import trapezoid

from .const import DEGENERATE_MODES, LOGGER
from .exceptions import ConfigurationError, DegenerateModesError, DomainError
from .frame import canonical_momenta, from_canonical, linearised_field
from .models.enums import Mode
from .models.modal import ConservationDrift, ModalConstants
from .models.system import LinearisedParams, RotatingState
from .numerics import integrate_ode

if TYPE_CHECKING:
    from collections.abc import Sequence

    from .models.numerics import IntegratorConfig

# Guards the dimensionless identity residual at the zero state
_TINY = 1e-300


def jacobi_J(lin: LinearisedParams, state: RotatingState) -> float:  # noqa: N802
    """Return J = (X'^2 + Y'^2) / 2 - wX^2 X^2 - wY^2 Y^2."""
    return (
        0.5 * (state.Xdot**2 + state.Ydot**2)
        - lin.omegaX2 * state.X**2
        - lin.omegaY2 * state.Y**2
    )


def _require_modes(lin: LinearisedParams) -> None:
    if not lin.stable or math.isnan(lin.alpha):
        msg = "The linearisation is not stable; no real modal frequencies"
        raise DegenerateModesError(msg)
    if abs(lin.alpha - lin.beta) < DEGENERATE_MODES * lin.omega:
        msg = f"Modal frequencies coincide: alpha={lin.alpha}, beta={lin.beta}"
        raise DegenerateModesError(msg)
    if lin.omegaX2 == 0.0:
        msg = "wX^2 vanishes; the hidden constants are undefined"
        raise DegenerateModesError(msg)


def _mode_terms(
    lin: LinearisedParams, state: RotatingState, other: float
) -> tuple[float, float]:
    """The two brackets of a hidden constant; other is the opposite mode."""
    w = lin.omega
    k = other**2 + 2.0 * lin.omegaX2
    first = k * state.Xdot - 2.0 * w * other**2 * state.Y
    second = 2.0 * w * state.Ydot + k * state.X
    return first, second


def hidden_D(lin: LinearisedParams, state: RotatingState) -> tuple[float, float]:  # noqa: N802
    """
    Evaluate the hidden constants of the motion.

    D1 = a^2 {(b^2 + 2wX^2) X' - 2w b^2 Y}^2 + 4 wX^4 {2w Y' + (b^2 + 2wX^2) X}^2
    with a, b = alpha, beta; D2 exchanges alpha and beta.

    Arguments:
        lin: A stable linearisation with distinct modal frequencies.
        state: The phase point.

    Returns:
        (D1, D2), both non-negative.

    Raises:
        DegenerateModesError: If |alpha - beta| < 1e-9 w, or the system is
            unstable.

    """
    _require_modes(lin)
    wx4 = lin.omegaX2**2
    f1, s1 = _mode_terms(lin, state, lin.beta)
    f3, s3 = _mode_terms(lin, state, lin.alpha)
    d1 = lin.alpha**2 * f1 * f1 + 4.0 * wx4 * s1 * s1
    d2 = lin.beta**2 * f3 * f3 + 4.0 * wx4 * s3 * s3
    return d1, d2


def identity_weight(lin: LinearisedParams, u: float) -> float:
    """f(u) = u^-2 ((w^2 + 3wX^2) u^4 - wX^2 (13w^2 - 8wX^2) u^2 - 4wX^4 wY^2)."""
    w2, wx2 = lin.omega**2, lin.omegaX2
    return (
        (w2 + 3.0 * wx2) * u**4
        - wx2 * (13.0 * w2 - 8.0 * wx2) * u**2
        - 4.0 * wx2 * wx2 * lin.omegaY2
    ) / u**2


def jacobi_identity_residual(lin: LinearisedParams, state: RotatingState) -> float:
    """
    Relative residual of 32 wX^4 w^2 (a^2 - b^2)^2 J = f(a) D1 + f(b) D2.

    The identity is algebraic in the state, so the residual is pointwise.
    """
    d1, d2 = hidden_D(lin, state)
    j = jacobi_J(lin, state)
    lhs = (
        32.0
        * lin.omegaX2**2
        * lin.omega**2
        * (lin.alpha**2 - lin.beta**2) ** 2
        * j
    )
    t1 = identity_weight(lin, lin.alpha) * d1
    t3 = identity_weight(lin, lin.beta) * d2
    return abs(lhs - t1 - t3) / (abs(t1) + abs(t3) + _TINY)


def modal_decompose(lin: LinearisedParams, state: RotatingState) -> ModalConstants:
    """
    Split a state into its alpha and beta modes.

    C1 e^(i a t) = i / (8 w wX^2 a (a^2 - b^2))
        [i a ((b^2 + 2wX^2) X' - 2w b^2 Y) + 2wX^2 (2w Y' + (b^2 + 2wX^2) X)]

    and C3 likewise with a, b exchanged and the opposite overall sign. The
    returned amplitudes refer to t = 0.

    Raises:
        DegenerateModesError: As for hidden_D.

    """
    _require_modes(lin)
    w, a, b, wx2 = lin.omega, lin.alpha, lin.beta, lin.omegaX2
    split = a * a - b * b
    f1, s1 = _mode_terms(lin, state, b)
    f3, s3 = _mode_terms(lin, state, a)

    c1_now = 1j / (8.0 * w * wx2 * a * split) * (1j * a * f1 + 2.0 * wx2 * s1)
    c3_now = -1j / (8.0 * w * wx2 * b * split) * (1j * b * f3 + 2.0 * wx2 * s3)
    c1 = c1_now * cmath.exp(-1j * a * state.t)
    c3 = c3_now * cmath.exp(-1j * b * state.t)

    d1, d2 = hidden_D(lin, state)
    return ModalConstants(
        alpha=a,
        beta=b,
        C1=c1,
        C3=c3,
        D1=d1,
        D2=d2,
        J=jacobi_J(lin, state),
    )


def d_from_amplitude(
    lin: LinearisedParams, amplitude: float, mode: Mode = Mode.ALPHA
) -> float:
    """Closed form D = 64 w^2 wX^4 u^2 (a^2 - b^2)^2 |C|^2, u the mode frequency."""
    u = lin.alpha if mode is Mode.ALPHA else lin.beta
    return (
        64.0
        * lin.omega**2
        * lin.omegaX2**2
        * u**2
        * (lin.alpha**2 - lin.beta**2) ** 2
        * amplitude**2
    )


def synthesize_state(
    lin: LinearisedParams, c1: complex, c3: complex, t: float
) -> RotatingState:
    """
    Closed-form state from modal amplitudes.

    X = -4 w a |C1| sin(a t + p1) - 4 w b |C3| sin(b t + p3)
    Y = -2 (a^2 + 2wX^2) |C1| cos(a t + p1) - 2 (b^2 + 2wX^2) |C3| cos(b t + p3)
    """
    w, a, b = lin.omega, lin.alpha, lin.beta
    ka = a * a + 2.0 * lin.omegaX2
    kb = b * b + 2.0 * lin.omegaX2
    m1, p1 = abs(c1), cmath.phase(c1)
    m3, p3 = abs(c3), cmath.phase(c3)
    s1, co1 = math.sin(a * t + p1), math.cos(a * t + p1)
    s3, co3 = math.sin(b * t + p3), math.cos(b * t + p3)
    return RotatingState(
        X=-4.0 * w * a * m1 * s1 - 4.0 * w * b * m3 * s3,
        Y=-2.0 * ka * m1 * co1 - 2.0 * kb * m3 * co3,
        Xdot=-4.0 * w * a * a * m1 * co1 - 4.0 * w * b * b * m3 * co3,
        Ydot=2.0 * ka * a * m1 * s1 + 2.0 * kb * b * m3 * s3,
        t=t,
    )


def is_periodic(modal: ModalConstants, tol: float = 1e-12) -> bool:
    """Whether only one mode is excited, min(D1, D2) / max(D1, D2) < tol."""
    high = max(modal.D1, modal.D2)
    if high == 0.0:
        return True
    return min(modal.D1, modal.D2) / high < tol


def poisson_bracket_D1_D2(  # noqa: N802
    lin: LinearisedParams, state: RotatingState, step: float = 1e-5
) -> tuple[float, float]:
    """
    Poisson bracket {D1, D2} in the canonical variables, by central differences.

    The step is relative to the size of the state.

    Returns:
        The bracket and the sum of the magnitudes of its terms, against which
        a vanishing bracket is judged.

    """
    q = np.array([state.X, state.Y])
    p = np.array(canonical_momenta(lin, state))
    scale = max(1.0, float(np.max(np.abs(np.concatenate([q, p])))))
    h = step * scale

    def gradients(which: int) -> tuple[np.ndarray, np.ndarray]:
        dq, dp = np.zeros(2), np.zeros(2)
        for i in range(2):
            for target, grad, is_q in ((q, dq, True), (p, dp, False)):
                up, down = target.copy(), target.copy()
                up[i] += h
                down[i] -= h
                qu, pu = (up, p) if is_q else (q, up)
                qd, pd = (down, p) if is_q else (q, down)
                plus = hidden_D(lin, from_canonical(lin, qu, pu))[which]
                minus = hidden_D(lin, from_canonical(lin, qd, pd))[which]
                grad[i] = (plus - minus) / (2.0 * h)
        return dq, dp

    dq1, dp1 = gradients(0)
    dq2, dp2 = gradients(1)
    terms = np.concatenate([dq1 * dp2, -dp1 * dq2])
    return float(terms.sum()), float(np.abs(terms).sum())


def bohr_mean(
    samples: Sequence[float] | np.ndarray,
    times: Sequence[float] | np.ndarray,
    r: float,
    window: str | None = None,
    *,
    logger: Any = LOGGER,
) -> complex:
    """
    Bohr-Fourier mean (1/T) int_0^T exp(-i r s) f(s) ds by the trapezoidal rule.

    Arguments:
        samples: Values of a real signal.
        times: Uniformly spaced sample times.
        r: Angular frequency of the coefficient.
        window: None, or "hann" for a Hann taper normalised to unit mean,
            which suppresses leakage from neighbouring lines.
        logger: Receives the aliasing warning.

    Returns:
        The complex mean.

    Raises:
        DomainError: If r dt >= pi, where the samples cannot resolve r.
        ConfigurationError: If the times are not uniform or the window is
            unknown.

    """
    f = np.asarray(samples, dtype=float)
    s = np.asarray(times, dtype=float)
    if f.shape != s.shape or s.size < 2:  # noqa: PLR2004
        msg = "bohr_mean needs matching sample and time arrays of length >= 2"
        raise ConfigurationError(msg)
    steps = np.diff(s)
    dt = float(steps.mean())
    if dt <= 0 or np.max(np.abs(steps - dt)) > 1e-8 * dt:
        msg = "bohr_mean needs uniformly increasing sample times"
        raise ConfigurationError(msg)
    if abs(r) * dt >= math.pi:
        msg = f"Sampling step {dt} cannot resolve frequency {r}"
        raise DomainError(msg)
    if abs(r) * dt >= math.pi / 2.0:
        logger.warning("Frequency %s is close to aliasing at step %s", r, dt)

    duration = s[-1] - s[0]
    weights = np.ones_like(s)
    if window == "hann":
        weights = 1.0 - np.cos(2.0 * math.pi * (s - s[0]) / duration)
    elif window is not None:
        msg = f"Unknown window {window!r}"
        raise ConfigurationError(msg)

    integrand = np.exp(-1j * r * s) * f * weights
    return complex(trapezoid(integrand, s) / duration)


def conservation_drift(  # noqa: PLR0913
    lin: LinearisedParams,
    state: RotatingState,
    periods: float,
    cfg: IntegratorConfig | None = None,
    *,
    samples: int = 257,
    logger: Any = LOGGER,
) -> ConservationDrift:
    """
    Integrate the linearised flow and measure how far D1, D2 and J wander.

    Arguments:
        lin: A stable linearisation with distinct modal frequencies.
        state: The initial phase point.
        periods: Length of the run in slow periods 2 pi / beta.
        cfg: Integrator tolerances.
        samples: Number of equally spaced checkpoints.
        logger: Receives integrator statistics.

    Returns:
        The largest relative drift of each quantity over the checkpoints.

    Raises:
        DegenerateModesError: If the hidden constants are undefined.
        ConfigurationError: If periods or samples are not positive.

    """
    if periods <= 0 or samples < 2:  # noqa: PLR2004
        msg = f"Need periods > 0 and samples >= 2, got {periods}, {samples}"
        raise ConfigurationError(msg)
    _require_modes(lin)
    span = periods * 2.0 * math.pi / lin.beta
    times = state.t + np.linspace(0.0, span, samples)
    trajectory = integrate_ode(
        linearised_field(lin),
        state.as_array(),
        (state.t, state.t + span),
        cfg,
        t_eval=times,
        logger=logger,
    )
    start = np.array([*hidden_D(lin, state), jacobi_J(lin, state)])
    drift = np.zeros(3)
    identity = 0.0
    for t, column in zip(trajectory.t, trajectory.y.T, strict=True):
        point = RotatingState.from_array(column, t=t)
        e1, e2 = hidden_D(lin, point)
        now = np.array([e1, e2, jacobi_J(lin, point)])
        drift = np.maximum(drift, np.abs(now - start) / (np.abs(start) + _TINY))
        identity = max(identity, jacobi_identity_residual(lin, point))
    return ConservationDrift(
        span=span,
        D1=float(drift[0]),
        D2=float(drift[1]),
        J=float(drift[2]),
        identity=identity,
    )
