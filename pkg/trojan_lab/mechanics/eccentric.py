"""
First-order-in-eccentricity motion about L4/L5.

With the primaries on an ellipse of eccentricity e, the offsets (delta,
epsilon) from the equilibrium obey

    delta'' - 2 th' eps' - 3/4 th'^2 delta - W eps - eps th'' = 0
    eps'' + 2 th' delta' - 9/4 th'^2 eps - W delta + delta th'' = 0

with th' = w (1 + 2 e cos wt) + O(e^2) and W the cross coefficient Omega^2.
Each zeroth-order line at frequency nu forces first-order lines at nu +- w.
"""

from __future__ import annotations

import math
from typing import TYPE_CHECKING, Any

import numpy as np

from .const import ECCENTRICITY_VALIDITY, LOGGER, RESONANCE_THRESHOLD, SQRT3
from .exceptions import (
    ConfigurationError,
    DegenerateModesError,
    ResonanceError,
    ValidityError,
)
from .frame import rotate_back
from .models.modal import BohrLine, BohrSpectrum, EccentricSolution, SixConstants

if TYPE_CHECKING:
    from collections.abc import Sequence

    from .models.modal import ModalConstants
    from .models.system import LinearisedParams

# Lines closer than this (relative to w) are merged
_LINE_MERGE = 1e-12


def forced_rhs(
    lin: LinearisedParams,
    e: float,
    t: float,
    zeroth: Sequence[float],
) -> np.ndarray:
    """
    Order-e forcing of the first-order equations.

    Arguments:
        lin: The linearisation about the equilibrium.
        e: Eccentricity of the primaries' orbit.
        t: Time.
        zeroth: (delta0, eps0, delta0', eps0') at t.

    Returns:
        e times (3w^2 cos delta0 + 4w cos eps0' - 2w^2 sin eps0,
        -4w cos delta0' + 2w^2 sin delta0 + 9w^2 cos eps0), with cos and sin
        of w t.

    """
    if e < 0:
        msg = f"Eccentricity must be non-negative, got {e}"
        raise ConfigurationError(msg)
    delta, eps, ddot, edot = (float(v) for v in zeroth[:4])
    w = lin.omega
    c, s = math.cos(w * t), math.sin(w * t)
    return e * np.array(
        [
            3.0 * w * w * c * delta + 4.0 * w * c * edot - 2.0 * w * w * s * eps,
            -4.0 * w * c * ddot + 2.0 * w * w * s * delta + 9.0 * w * w * c * eps,
        ]
    )


def _determinant(w: float, omega2: float, d: complex) -> complex:
    return d**4 + w * w * d * d + 27.0 / 16.0 * w**4 - omega2 * omega2


def line_response(
    w: float, omega2: float, nu: float, side: int
) -> tuple[tuple[complex, complex], tuple[complex, complex]]:
    """
    Response matrix of the first-order line at nu + side * w.

    The line forced by a zeroth-order line (delta_nu, eps_nu) has amplitudes
    R @ (delta_nu, eps_nu), R = adj(M(D)) F / det M(D) at D = i (nu + side w).

    Returns:
        ((R_dd, R_de), (R_ed, R_ee)); R_de is the weight of eps_nu in the
        delta response.

    Raises:
        ResonanceError: If the determinant nearly vanishes.

    """
    d = 1j * (nu + side * w)
    det = _determinant(w, omega2, d)
    if abs(det) < RESONANCE_THRESHOLD * w**4:
        msg = f"Resonant line at frequency {nu + side * w}"
        raise ResonanceError(msg)
    w2 = w * w
    # forcing matrix at this line
    f11 = 1.5 * w2
    f12 = 2j * w * nu + 1j * side * w2
    f21 = -1j * side * w2 - 2j * w * nu
    f22 = 4.5 * w2
    # adjugate of the operator
    a11 = d * d - 2.25 * w2
    a12 = 2.0 * w * d + omega2
    a21 = -2.0 * w * d + omega2
    a22 = d * d - 0.75 * w2
    return (
        ((a11 * f11 + a12 * f21) / det, (a11 * f12 + a12 * f22) / det),
        ((a21 * f11 + a22 * f21) / det, (a21 * f12 + a22 * f22) / det),
    )


def a_coefficients(f1: complex) -> tuple[complex, complex, complex, complex]:
    """
    Closed-form A-coefficients at f1 = nu / w with Omega^2 = (3 sqrt 3 / 4) w^2.

    These are the entries of line_response(1, 3 sqrt(3) / 4, f1, +1), the
    line at w + nu. The line at w - nu uses f1 -> -f1.

    Returns:
        (A_dd, A_ed, A_de, A_ee): A_ed is the weight of eps_nu in the delta
        response and A_de that of delta_nu in the eps response.

    Raises:
        ResonanceError: If |(1 + f1)^2 (f1^2 + 2 f1)| < 1e-9.

    Example usage:

    >>> a_dd = a_coefficients(1.0)[0]
    >>> round(a_dd.real * 12, 6)
    2.625

    """
    f = f1
    den = (1.0 + f) ** 2 * (f * f + 2.0 * f)
    if abs(den) < RESONANCE_THRESHOLD:
        msg = f"Resonant denominator at f1 = {f1}"
        raise ResonanceError(msg)
    k = 3.0 * SQRT3 / 4.0
    a_dd = (-23.0 / 8.0 + 3.0 * f + 2.5 * f * f - 1j * k * (1.0 + 2.0 * f)) / den
    a_ed = (
        27.0 * SQRT3 / 8.0 + 1j * (23.0 / 4.0 + f / 2.0 - 5.0 * f**2 - 2.0 * f**3)
    ) / den
    a_de = (
        9.0 * SQRT3 / 8.0 + 1j * (-5.0 / 4.0 + 2.5 * f + 5.0 * f**2 + 2.0 * f**3)
    ) / den
    a_ee = (-47.0 / 8.0 - 3.0 * f - f * f / 2.0 + 1j * k * (1.0 + 2.0 * f)) / den
    return a_dd, a_ed, a_de, a_ee


def zeroth_amplitudes(
    lin: LinearisedParams, modal: ModalConstants
) -> dict[float, tuple[complex, complex]]:
    """
    The (delta, eps) amplitudes of exp(i nu t) for nu = +-alpha, +-beta.

    delta_alpha = (2i w a cos g + A sin g) C1, eps_alpha = (2i w a sin g - A cos g) C1
    with A = a^2 + 2 wX^2; negative frequencies carry the conjugates.
    """
    w, g = lin.omega, lin.gamma
    c, s = math.cos(g), math.sin(g)
    lines: dict[float, tuple[complex, complex]] = {}
    for nu, amp in ((lin.alpha, modal.C1), (lin.beta, modal.C3)):
        big = nu * nu + 2.0 * lin.omegaX2
        delta = (2j * w * nu * c + big * s) * amp
        eps = (2j * w * nu * s - big * c) * amp
        lines[nu] = (delta, eps)
        lines[-nu] = (delta.conjugate(), eps.conjugate())
    return lines


def _xy(gamma: float, delta: complex, eps: complex) -> tuple[complex, complex]:
    c, s = math.cos(gamma), math.sin(gamma)
    return c * delta + s * eps, -s * delta + c * eps


def _spectrum(
    gamma: float,
    amplitudes: dict[float, tuple[complex, complex]],
    labels: dict[float, str],
) -> BohrSpectrum:
    lines = []
    for freq in sorted(amplitudes):
        delta, eps = amplitudes[freq]
        x, y = _xy(gamma, delta, eps)
        lines.append(BohrLine(freq, delta, eps, x, y, labels.get(freq, "")))
    return BohrSpectrum(tuple(lines))


def _merge(
    target: dict[float, tuple[complex, complex]],
    labels: dict[float, str],
    freq: float,
    value: tuple[complex, complex],
    label: str,
    scale: float,
) -> None:
    for known in target:
        if abs(known - freq) <= _LINE_MERGE * scale:
            old = target[known]
            target[known] = (old[0] + value[0], old[1] + value[1])
            return
    target[freq] = value
    labels[freq] = label


def first_order_solution(
    lin: LinearisedParams,
    e: float,
    modal: ModalConstants,
    *,
    strict: bool = False,
    logger: Any = LOGGER,
) -> EccentricSolution:
    """
    Build the first-order solution from the zeroth-order modal amplitudes.

    Every zeroth-order line nu in {+-alpha, +-beta} forces lines at nu + w
    and nu - w; the response uses the operator with the system's own
    Omega^2.

    Arguments:
        lin: A stable linearisation.
        e: Eccentricity of the primaries, e >= 0.
        modal: The zeroth-order amplitudes.
        strict: Raise ValidityError instead of warning when e > 0.2.
        logger: Receives the validity warning.

    Returns:
        The solution; its first spectrum holds the lines before scaling by e.

    Raises:
        ResonanceError: If a forced line hits a root of the operator.
        ValidityError: If strict and e exceeds the validity bound.

    """
    if e < 0:
        msg = f"Eccentricity must be non-negative, got {e}"
        raise ConfigurationError(msg)
    if not lin.stable:
        msg = "The eccentric expansion needs a stable linearisation"
        raise DegenerateModesError(msg)
    valid = e <= ECCENTRICITY_VALIDITY
    if not valid:
        msg = f"e = {e} exceeds the first-order validity bound {ECCENTRICITY_VALIDITY}"
        if strict:
            raise ValidityError(msg)
        logger.warning(msg)

    w = lin.omega
    zeroth = zeroth_amplitudes(lin, modal)
    zeroth_labels = {
        lin.alpha: "alpha",
        -lin.alpha: "-alpha",
        lin.beta: "beta",
        -lin.beta: "-beta",
    }
    first: dict[float, tuple[complex, complex]] = {}
    first_labels: dict[float, str] = {}
    for nu, (delta, eps) in zeroth.items():
        for side in (1, -1):
            (r_dd, r_de), (r_ed, r_ee) = line_response(w, lin.Omega2, nu, side)
            value = (r_dd * delta + r_de * eps, r_ed * delta + r_ee * eps)
            label = f"{zeroth_labels[nu]}{'+' if side > 0 else '-'}omega"
            _merge(first, first_labels, nu + side * w, value, label, w)

    return EccentricSolution(
        e=e,
        omega=w,
        modal=modal,
        zeroth=_spectrum(lin.gamma, zeroth, zeroth_labels),
        first=_spectrum(lin.gamma, first, first_labels),
        gamma=lin.gamma,
        valid=valid,
    )


def bohr_spectrum_of_solution(sol: EccentricSolution) -> BohrSpectrum:
    """
    Lines of the solution, zeroth order plus e times first order.

    Lines with vanishing amplitude, such as those of an unexcited mode or
    the sidebands at e = 0, are left out.
    """
    amplitudes: dict[float, tuple[complex, complex]] = {}
    labels: dict[float, str] = {}
    for line in sol.zeroth.lines:
        value = (line.delta, line.epsilon)
        _merge(amplitudes, labels, line.frequency, value, line.label, sol.omega)
    for line in sol.first.lines:
        value = (sol.e * line.delta, sol.e * line.epsilon)
        _merge(amplitudes, labels, line.frequency, value, line.label, sol.omega)
    kept = {
        freq: value
        for freq, value in amplitudes.items()
        if value[0] != 0 or value[1] != 0
    }
    return _spectrum(sol.gamma, kept, labels)


def six_constants(sol: EccentricSolution) -> SixConstants:
    """
    The six constants of integration of the first-order solution.

    |C1|, |C3| and e |delta| at the sidebands w + alpha, w - alpha, w + beta
    and w - beta.
    """
    w = sol.omega
    alpha, beta = sol.modal.alpha, sol.modal.beta

    def sideband(freq: float) -> float:
        line = sol.first.line(freq, tol=_LINE_MERGE * 10)
        return 0.0 if line is None else sol.e * abs(line.delta)

    return SixConstants(
        abs_C1=abs(sol.modal.C1),
        abs_C3=abs(sol.modal.C3),
        omega_plus_alpha=sideband(w + alpha),
        omega_minus_alpha=sideband(w - alpha),
        omega_plus_beta=sideband(w + beta),
        omega_minus_beta=sideband(w - beta),
    )


def _evaluate(
    spectrum: BohrSpectrum, t: np.ndarray, order: int, scale: float = 1.0
) -> tuple[np.ndarray, np.ndarray]:
    """Sum the (delta, eps) lines, differentiated order times."""
    delta = np.zeros_like(t, dtype=complex)
    eps = np.zeros_like(t, dtype=complex)
    for line in spectrum.lines:
        rate = 1j * line.frequency
        phase = np.exp(rate * t) * rate**order * scale
        delta += line.delta * phase
        eps += line.epsilon * phase
    return delta, eps


def synthesize(
    sol: EccentricSolution, t: Sequence[float] | np.ndarray
) -> dict[str, np.ndarray]:
    """
    Evaluate delta, eps, X and Y of the solution at times t.

    Raises:
        ValidityError: If the synthesised signals are not real.

    """
    times = np.atleast_1d(np.asarray(t, dtype=float))
    d0, e0 = _evaluate(sol.zeroth, times, 0)
    d1, e1 = _evaluate(sol.first, times, 0, sol.e)
    delta, eps = d0 + d1, e0 + e1
    size = max(1.0, float(np.max(np.abs(delta))), float(np.max(np.abs(eps))))
    if max(np.max(np.abs(delta.imag)), np.max(np.abs(eps.imag))) > 1e-12 * size:
        msg = "Synthesised eccentric solution is not real"
        raise ValidityError(msg)
    x, y = rotate_back(-sol.gamma, delta.real, eps.real)
    return {"t": times, "delta": delta.real, "epsilon": eps.real, "X": x, "Y": y}


def eccentric_residual(
    sol: EccentricSolution,
    omega2: float,
    t: Sequence[float] | np.ndarray,
) -> float:
    """
    Largest residual of the full equations along the first-order solution.

    The anomaly rate is taken as w (1 + 2 e cos wt), so the residual is O(e^2).
    """
    times = np.atleast_1d(np.asarray(t, dtype=float))
    w, e = sol.omega, sol.e
    signals = []
    for order in range(3):
        d0, e0 = _evaluate(sol.zeroth, times, order)
        d1, e1 = _evaluate(sol.first, times, order, e)
        signals.append((d0 + d1, e0 + e1))
    (delta, eps), (ddot, edot), (dddot, eddot) = signals

    rate = w * (1.0 + 2.0 * e * np.cos(w * times))
    accel = -2.0 * w * w * e * np.sin(w * times)
    row1 = (
        dddot
        - 2.0 * rate * edot
        - 0.75 * rate**2 * delta
        - omega2 * eps
        - eps * accel
    )
    row2 = (
        eddot
        + 2.0 * rate * ddot
        - 2.25 * rate**2 * eps
        - omega2 * delta
        + delta * accel
    )
    return float(max(np.max(np.abs(row1)), np.max(np.abs(row2))))

