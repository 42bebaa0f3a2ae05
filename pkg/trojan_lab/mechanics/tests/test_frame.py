"""Tests for the rotating-frame equations and the L4/L5 linearisation."""

import math

import numpy as np
import pytest

from trojan_lab.mechanics.exceptions import CollisionError
from trojan_lab.mechanics.frame import (
    canonical_hamiltonian,
    canonical_momenta,
    from_rotated,
    full_rhs,
    jacobi_K,
    lagrange_points,
    linearise,
    linearised_rhs,
    modal_quartic,
    rotating_field,
    rotating_to_inertial,
    to_rotated,
)
from trojan_lab.mechanics.models.enums import Orientation
from trojan_lab.mechanics.models.numerics import IntegratorConfig
from trojan_lab.mechanics.models.system import RotatingState, SystemParams
from trojan_lab.mechanics.numerics import integrate_ode

SUN_JUPITER = SystemParams.from_mass_parameter(9.5388e-4)


@pytest.mark.parametrize(
    "params",
    [SUN_JUPITER, SystemParams(mu1=2.0, mu2=0.5, a0=3.0), SystemParams(1.0, 0.0)],
)
def test_equilateral_points_are_equilibria(params: SystemParams) -> None:
    """Test that L4 and L5 carry zero acceleration at rest."""
    points = lagrange_points(params)
    for point in (points.l4, points.l5):
        ax, ay = full_rhs(params, (*point, 0.0, 0.0))
        assert abs(ax) < 1e-12
        assert abs(ay) < 1e-12


def test_collinear_points_are_equilibria() -> None:
    """Test the root-found collinear points and their ordering."""
    points = lagrange_points(SUN_JUPITER)
    assert points.l1 is not None
    assert points.l2 is not None
    assert -SUN_JUPITER.r1 < points.l1[0] < SUN_JUPITER.r2 < points.l2[0]
    assert points.l3[0] < -SUN_JUPITER.r1
    for point in (points.l1, points.l2, points.l3):
        assert abs(full_rhs(SUN_JUPITER, (*point, 0.0, 0.0))[0]) < 1e-12


def test_massless_secondary_limit() -> None:
    """Test L4 at (a0/2, sqrt(3) a0/2) and L3 at -a0 when mu2 = 0."""
    params = SystemParams(mu1=1.0, mu2=0.0, a0=2.0)
    points = lagrange_points(params)
    assert points.l4 == pytest.approx((1.0, math.sqrt(3.0)))
    assert points.l1 is None
    assert points.l2 is None
    assert points.l3 == pytest.approx((-2.0, 0.0))


def test_l4_radius_is_mu_tilde() -> None:
    """Test |OL4| = mu_tilde a0."""
    points = lagrange_points(SUN_JUPITER)
    assert math.hypot(*points.l4) == pytest.approx(SUN_JUPITER.mu_tilde)


def test_equal_masses_midline_symmetry() -> None:
    """Test that gravity has no x-component on the midline for equal masses."""
    params = SystemParams(mu1=1.0, mu2=1.0)
    ax, _ = full_rhs(params, (0.0, 0.7, 0.0, 0.0))
    assert ax == pytest.approx(0.0, abs=1e-15)


def test_jacobi_gradient_matches_equations() -> None:
    """Test that -dK/dx and -dK/dy give the potential part of the accelerations."""
    rng = np.random.default_rng(7)
    params = SystemParams(mu1=0.9, mu2=0.1)
    state = np.array([0.3, 0.8, 0.0, 0.0]) + rng.normal(scale=0.05, size=4)
    h = 1e-6
    w = params.omega
    ax, ay = full_rhs(params, state)

    for index, coriolis in ((0, 2.0 * w * state[3]), (1, -2.0 * w * state[2])):
        up, down = state.copy(), state.copy()
        up[index] += h
        down[index] -= h
        gradient = (jacobi_K(params, up) - jacobi_K(params, down)) / (2.0 * h)
        acceleration = ax if index == 0 else ay
        assert -gradient == pytest.approx(acceleration - coriolis, abs=1e-7)


def test_jacobi_conserved_near_l4() -> None:
    """Test Jacobi integral drift over 100 periods of a tadpole orbit."""
    points = lagrange_points(SUN_JUPITER)
    start = np.array([points.l4[0] + 0.01, points.l4[1], 0.0, 0.0])
    period = 2.0 * math.pi / SUN_JUPITER.omega

    trajectory = integrate_ode(
        rotating_field(SUN_JUPITER), start, (0.0, 100.0 * period), IntegratorConfig()
    )

    k0 = jacobi_K(SUN_JUPITER, start)
    drift = abs(jacobi_K(SUN_JUPITER, trajectory.final) - k0) / abs(k0)
    assert drift < 1e-8


def test_collision_is_reported() -> None:
    """Test that evaluating at a primary raises."""
    with pytest.raises(CollisionError):
        full_rhs(SUN_JUPITER, (-SUN_JUPITER.r1, 0.0, 0.0, 0.0))


def test_linearise_sun_jupiter_frequencies() -> None:
    """Test the modal frequencies of the Sun-Jupiter system."""
    lin = linearise(SUN_JUPITER)
    assert lin.stable
    assert lin.alpha / lin.omega == pytest.approx(0.996758, abs=1e-5)
    assert lin.beta / lin.omega == pytest.approx(0.080464, abs=1e-5)


@pytest.mark.parametrize("mu", [1e-5, 9.5388e-4, 0.01, 0.03])
@pytest.mark.parametrize("orientation", [Orientation.L4, Orientation.L5])
def test_linearise_symmetric_functions(mu: float, orientation: Orientation) -> None:
    """Test the sum and product constraints and the modal quartic."""
    params = SystemParams.from_mass_parameter(mu, a0=1.7)
    lin = linearise(params, orientation)
    w2 = lin.omega**2

    assert lin.omegaX2 + lin.omegaY2 == pytest.approx(1.5 * w2, rel=1e-14)
    assert lin.omegaX2 * lin.omegaY2 == pytest.approx(
        27.0 * params.mass_product * w2 * w2 / 16.0, rel=1e-9
    )
    assert abs(modal_quartic(lin, 1j * lin.alpha)) < 1e-12
    assert abs(modal_quartic(lin, 1j * lin.beta)) < 1e-12
    assert lin.alpha**2 + lin.beta**2 == pytest.approx(w2)


def test_l5_flips_gamma() -> None:
    """Test that L5 mirrors the principal-axis angle and cross coefficient."""
    l4 = linearise(SUN_JUPITER, Orientation.L4)
    l5 = linearise(SUN_JUPITER, Orientation.L5)
    assert l5.gamma == pytest.approx(-l4.gamma)
    assert l5.Omega2 == pytest.approx(-l4.Omega2)
    assert (l5.alpha, l5.beta) == pytest.approx((l4.alpha, l4.beta))
    assert l5.omegaX2 == pytest.approx(l4.omegaX2)


def test_massless_limit_frequencies() -> None:
    """Test alpha -> omega and beta -> 0 as mu2 -> 0."""
    lin = linearise(SystemParams(mu1=1.0, mu2=0.0))
    assert lin.alpha == pytest.approx(1.0)
    assert lin.beta == 0.0
    assert lin.omegaX2 * lin.omegaY2 == pytest.approx(0.0, abs=1e-15)


def test_stability_boundary_is_unstable() -> None:
    """Test the double root at mass product 1/27."""
    mu = (1.0 - math.sqrt(23.0 / 27.0)) / 2.0
    lin = linearise(SystemParams.from_mass_parameter(mu))
    assert not lin.stable
    assert lin.alpha == pytest.approx(1.0 / math.sqrt(2.0), abs=1e-6)
    assert lin.beta == pytest.approx(1.0 / math.sqrt(2.0), abs=1e-6)


def test_unstable_frequencies_are_nan() -> None:
    """Test that equal masses give NaN frequencies."""
    lin = linearise(SystemParams(mu1=1.0, mu2=1.0))
    assert not lin.stable
    assert math.isnan(lin.alpha)
    assert math.isnan(lin.beta)


def test_linearised_rhs_zero_and_pure_mode() -> None:
    """Test the linear system on the origin and on a pure alpha mode."""
    lin = linearise(SUN_JUPITER)
    assert linearised_rhs(lin, RotatingState(0.0, 0.0, 0.0, 0.0)) == (0.0, 0.0)

    w, a = lin.omega, lin.alpha
    big_a = a * a + 2.0 * lin.omegaX2
    for t in np.linspace(0.0, 10.0, 7):
        state = RotatingState(
            X=4.0 * w * a * math.sin(a * t),
            Y=2.0 * big_a * math.cos(a * t),
            Xdot=4.0 * w * a * a * math.cos(a * t),
            Ydot=-2.0 * big_a * a * math.sin(a * t),
            t=t,
        )
        xdd, ydd = linearised_rhs(lin, state)
        assert xdd == pytest.approx(-4.0 * w * a**3 * math.sin(a * t), abs=1e-12)
        assert ydd == pytest.approx(-2.0 * big_a * a * a * math.cos(a * t), abs=1e-12)


def test_rotated_coordinates_round_trip() -> None:
    """Test that to_rotated and from_rotated are inverse."""
    lin = linearise(SUN_JUPITER, Orientation.L5)
    state = np.array([0.51, -0.83, 0.01, -0.02])
    assert from_rotated(lin, to_rotated(lin, state)) == pytest.approx(state)


def test_canonical_hamiltonian_equals_jacobi_form() -> None:
    """Test that H in canonical variables equals the quadratic energy."""
    lin = linearise(SUN_JUPITER)
    state = RotatingState(0.02, -0.01, 0.003, 0.004)
    p = canonical_momenta(lin, state)
    expected = (
        0.5 * (state.Xdot**2 + state.Ydot**2)
        - lin.omegaX2 * state.X**2
        - lin.omegaY2 * state.Y**2
    )
    assert canonical_hamiltonian(lin, (state.X, state.Y), p) == pytest.approx(expected)


def test_rotating_to_inertial() -> None:
    """Test that a body at rest in the rotating frame co-rotates."""
    params = SystemParams(mu1=1.0, mu2=0.0)
    quarter = math.pi / 2.0
    inertial = rotating_to_inertial(params, (1.0, 0.0, 0.0, 0.0), quarter)
    assert inertial == pytest.approx([0.0, 1.0, -1.0, 0.0], abs=1e-15)
