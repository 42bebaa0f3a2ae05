"""Tests for the first-order eccentric expansion."""

import dataclasses
import math

import numpy as np
import pytest

from trojan_lab.mechanics.constants import (
    bohr_mean,
    modal_decompose,
    synthesize_state,
)
from trojan_lab.mechanics.eccentric import (
    a_coefficients,
    bohr_spectrum_of_solution,
    eccentric_residual,
    first_order_solution,
    forced_rhs,
    line_response,
    six_constants,
    synthesize,
)
from trojan_lab.mechanics.exceptions import ResonanceError, ValidityError
from trojan_lab.mechanics.frame import linearise
from trojan_lab.mechanics.models.modal import ModalConstants
from trojan_lab.mechanics.models.system import SystemParams

K = 3.0 * math.sqrt(3.0) / 4.0
LIN = linearise(SystemParams.from_mass_ratio(0.02))


def _modal(c1: complex, c3: complex) -> ModalConstants:
    return modal_decompose(LIN, synthesize_state(LIN, c1, c3, 0.0))


def test_forcing_vanishes_and_is_linear() -> None:
    """Test zero forcing at e = 0 or zero state, and linearity in e."""
    zeroth = (0.3, -0.2, 0.1, 0.4)
    assert forced_rhs(LIN, 0.0, 1.3, zeroth) == pytest.approx([0.0, 0.0])
    assert forced_rhs(LIN, 0.1, 1.3, (0.0, 0.0, 0.0, 0.0)) == pytest.approx([0.0, 0.0])
    single = forced_rhs(LIN, 0.05, 1.3, zeroth)
    double = forced_rhs(LIN, 0.1, 1.3, zeroth)
    assert double == pytest.approx(2.0 * single, rel=1e-15)


def test_a_coefficients_spot_value() -> None:
    """Test A_dd at f1 = 1."""
    a_dd = a_coefficients(1.0)[0]
    assert a_dd == pytest.approx((21.0 / 8.0 - 1j * 9.0 * math.sqrt(3.0) / 4.0) / 12.0)


def test_a_coefficients_sun_jupiter() -> None:
    """Test the denominator and numerator of A_dd at the Sun-Jupiter ratio."""
    f1 = 0.996758
    den = (1.0 + f1) ** 2 * (f1 * f1 + 2.0 * f1)
    assert den == pytest.approx(11.918, rel=1e-3)
    assert (a_coefficients(f1)[0] * den).real == pytest.approx(2.5987, abs=1e-3)


def test_a_coefficients_match_matrix_path() -> None:
    """Test the closed forms against the adjugate of the operator."""
    rng = np.random.default_rng(31)
    for f1 in rng.uniform(0.5, 1.0, size=100):
        for f in (f1, -f1):
            a_dd, a_ed, a_de, a_ee = a_coefficients(f)
            (r_dd, r_de), (r_ed, r_ee) = line_response(1.0, K, f, 1)
            closed = np.array([a_dd, a_ed, a_de, a_ee])
            matrix = np.array([r_dd, r_de, r_ed, r_ee])
            assert closed == pytest.approx(matrix, rel=1e-10, abs=1e-14)


def test_a_coefficients_resonance() -> None:
    """Test that f1 = -1 is resonant."""
    with pytest.raises(ResonanceError):
        a_coefficients(-1.0)


def test_zero_eccentricity_keeps_zeroth_spectrum() -> None:
    """Test that e = 0 leaves only the lines at +-alpha and +-beta."""
    sol = first_order_solution(LIN, 0.0, _modal(0.2, 0.1j))
    spectrum = bohr_spectrum_of_solution(sol)
    assert list(spectrum.frequencies) == pytest.approx(
        sorted([LIN.alpha, -LIN.alpha, LIN.beta, -LIN.beta])
    )


def test_unexcited_mode_has_no_lines() -> None:
    """Test that C3 = 0 removes the beta line and its sidebands."""
    modal = dataclasses.replace(_modal(0.2, 0.1), C3=0j)
    sol = first_order_solution(LIN, 0.05, modal)
    frequencies = bohr_spectrum_of_solution(sol).frequencies
    w, a = LIN.omega, LIN.alpha
    expected = sorted([a, -a, w + a, -(w + a), w - a, -(w - a)])
    assert list(frequencies) == pytest.approx(expected)


def test_full_spectrum_has_twelve_lines() -> None:
    """Test the eight sidebands plus the four modal lines."""
    sol = first_order_solution(LIN, 0.05, _modal(0.2, 0.1))
    spectrum = bohr_spectrum_of_solution(sol)
    assert len(spectrum.lines) == 12
    for line in spectrum.lines:
        mirror = spectrum.line(-line.frequency)
        assert mirror is not None
        assert mirror.delta == pytest.approx(line.delta.conjugate())


def test_residual_is_second_order() -> None:
    """Test that doubling e quadruples the residual of the full equations."""
    modal = _modal(0.3, 0.2 * np.exp(0.7j))
    times = np.linspace(0.0, 40.0, 801)
    residuals = [
        eccentric_residual(first_order_solution(LIN, e, modal), LIN.Omega2, times)
        for e in (1e-3, 2e-3)
    ]
    small, large = residuals
    assert large / small == pytest.approx(4.0, rel=0.05)


def test_synthesis_is_real_and_matches_zeroth_order() -> None:
    """Test that e = 0 synthesis reproduces the modal state."""
    c1, c3 = 0.2, 0.05j
    sol = first_order_solution(LIN, 0.0, _modal(c1, c3))
    signals = synthesize(sol, [0.0, 2.5])
    state = synthesize_state(LIN, c1, c3, 2.5)
    assert signals["X"][1] == pytest.approx(state.X, abs=1e-12)
    assert signals["Y"][1] == pytest.approx(state.Y, abs=1e-12)


def test_six_constants_from_sampled_solution() -> None:
    """Test the sideband constants against Bohr means of the sampled delta."""
    sol = first_order_solution(LIN, 0.01, _modal(0.2, 0.1 * np.exp(1.0j)))
    constants = six_constants(sol)
    period = 2.0 * math.pi / LIN.omega
    times = np.arange(0.0, 500.0 * period, 0.1)
    delta = synthesize(sol, times)["delta"]

    w, a, b = LIN.omega, LIN.alpha, LIN.beta
    for freq, expected in (
        (w + a, constants.omega_plus_alpha),
        (w - a, constants.omega_minus_alpha),
        (w + b, constants.omega_plus_beta),
        (w - b, constants.omega_minus_beta),
    ):
        measured = abs(bohr_mean(delta, times, freq, window="hann"))
        assert measured == pytest.approx(expected, rel=1e-2)
    assert constants.abs_C1 == pytest.approx(0.2)
    assert constants.abs_C3 == pytest.approx(0.1)


def test_validity_flag() -> None:
    """Test the validity bound in warning and strict modes."""
    modal = _modal(0.2, 0.1)
    assert not first_order_solution(LIN, 0.3, modal).valid
    with pytest.raises(ValidityError):
        first_order_solution(LIN, 0.3, modal, strict=True)
