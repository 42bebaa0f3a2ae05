"""Tests for the special functions and integration kernels."""

import math

import numpy as np
import pytest
from scipy import special
from scipy.integrate import quad

from trojan_lab.mechanics.exceptions import (
    CharacteristicSingularityError,
    ConfigurationError,
    DiscriminantError,
    HermiteZeroError,
    ModulusRangeError,
    NonFiniteError,
    NumericalError,
    PoleProximityError,
)
from trojan_lab.mechanics.models.numerics import (
    IntegratorConfig,
    WeierstrassInvariants,
)
from trojan_lab.mechanics.numerics import (
    bessel_I,
    bessel_I_scaled,
    elliptic_F,
    elliptic_Pi,
    hermite_ratio,
    hermite_ratio_limit,
    integrate_ode,
    log_bessel_I,
    real_cubic_roots,
    weierstrass_p,
    weierstrass_p_pair,
)


def test_weierstrass_equianharmonic_half_period() -> None:
    """Test p at the real half-period of the lattice with g2 = 0, g3 = 1."""
    half_period = special.gamma(1.0 / 3.0) ** 3 / (4.0 * math.pi)
    inv = WeierstrassInvariants(g2=0.0, g3=1.0)

    value, deriv = weierstrass_p_pair(half_period, inv)

    assert value.real == pytest.approx(4.0 ** (-1.0 / 3.0), rel=1e-10)
    assert abs(value.imag) < 1e-12
    assert abs(deriv) < 1e-7


@pytest.mark.parametrize(("factor", "expected"), [(1.0, 1.0), (1.0 + 1.0j, 0.0)])
def test_weierstrass_lemniscatic_half_periods(
    factor: complex, expected: float
) -> None:
    """Test p = e1 = 1 and p = e2 = 0 at the half-periods for g2 = 4, g3 = 0."""
    half_period = 1.3110287771460599052  # half the lemniscate constant
    inv = WeierstrassInvariants(g2=4.0, g3=0.0)

    value, deriv = weierstrass_p_pair(factor * half_period, inv)

    assert abs(value - expected) < 1e-12
    assert abs(deriv) < 1e-5


@pytest.mark.parametrize(
    ("z", "g2", "g3"),
    [
        (0.7 + 0.3j, 2.0, 0.5),
        (1.2, 1.0, 0.2),
        (1.3, -1.0, 0.2),
        (0.4 - 0.9j, 0.3, -0.7),
    ],
)
def test_weierstrass_satisfies_differential_equation(
    z: complex, g2: float, g3: float
) -> None:
    """Test that (p')^2 = 4 p^3 - g2 p - g3 away from the poles."""
    value, deriv = weierstrass_p_pair(z, WeierstrassInvariants(g2, g3))
    rhs = 4.0 * value**3 - g2 * value - g3

    assert abs(deriv**2 - rhs) <= 1e-9 * max(1.0, abs(rhs))


def test_weierstrass_small_argument_matches_laurent() -> None:
    """Test the leading Laurent terms near the origin."""
    z = 0.01
    value = weierstrass_p(z, WeierstrassInvariants(g2=3.0, g3=1.0))

    assert value.real == pytest.approx(1.0 / z**2 + 3.0 * z**2 / 20.0, rel=1e-12)


def test_weierstrass_degenerate_closed_form() -> None:
    """Test the trigonometric form when the discriminant vanishes."""
    inv = WeierstrassInvariants(g2=12.0, g3=8.0)
    z = 0.5

    value = weierstrass_p(z, inv)

    expected = -1.0 + 3.0 / math.sin(math.sqrt(3.0) * z) ** 2
    assert value.real == pytest.approx(expected, rel=1e-12)


def test_weierstrass_zero_invariants() -> None:
    """Test that vanishing invariants give 1 / z^2."""
    assert weierstrass_p(2.0, WeierstrassInvariants(0.0, 0.0)) == pytest.approx(0.25)


def test_weierstrass_pole_proximity() -> None:
    """Test that arguments at the origin are rejected."""
    with pytest.raises(PoleProximityError):
        weierstrass_p(1e-13, WeierstrassInvariants(g2=1.0, g3=0.0))


@pytest.mark.parametrize("phi", [0.3, 1.2, math.pi / 2, 2.5, -0.8])
def test_elliptic_F_matches_scipy(phi: float) -> None:
    """Test F against scipy's Legendre form."""
    k = 0.7
    assert elliptic_F(phi, k) == pytest.approx(special.ellipkinc(phi, k * k))


def test_elliptic_F_zero_modulus_is_identity() -> None:
    """Test that F(phi, 0) = phi, including past pi/2."""
    assert elliptic_F(4.0, 0.0) == pytest.approx(4.0)


@pytest.mark.parametrize(("phi", "n"), [(0.9, 0.4), (1.4, -2.0), (3.0, 0.6)])
def test_elliptic_Pi_matches_quadrature(phi: float, n: float) -> None:
    """Test Pi against direct quadrature of its integrand."""
    k = 0.5

    def integrand(t: float) -> float:
        s2 = math.sin(t) ** 2
        return 1.0 / ((1.0 - n * s2) * math.sqrt(1.0 - k * k * s2))

    expected, _ = quad(integrand, 0.0, phi, epsabs=1e-13, limit=200)
    assert elliptic_Pi(phi, n, k) == pytest.approx(expected, rel=1e-10)


def test_elliptic_Pi_zero_characteristic_equals_F() -> None:
    """Test that Pi(phi, 0, k) = F(phi, k)."""
    assert elliptic_Pi(1.1, 0.0, 0.3) == pytest.approx(elliptic_F(1.1, 0.3))


def test_elliptic_modulus_range() -> None:
    """Test that k = 1 is rejected."""
    with pytest.raises(ModulusRangeError):
        elliptic_F(0.5, 1.0)
    with pytest.raises(ModulusRangeError):
        elliptic_Pi(0.5, 0.2, -0.1)


def test_elliptic_Pi_characteristic_singularity() -> None:
    """Test that a pole on the integration path is rejected."""
    with pytest.raises(CharacteristicSingularityError):
        elliptic_Pi(math.pi / 2, 2.0, 0.3)


def test_bessel_values_and_overflow() -> None:
    """Test small values, overflow, and the scaled and log forms."""
    assert bessel_I(0, 0.0) == 1.0
    assert bessel_I(1, 1.0) == pytest.approx(0.5651591039924851)
    with pytest.raises(NonFiniteError):
        bessel_I(0, 800.0)

    x = 800.0
    assert bessel_I_scaled(0, x) == pytest.approx(
        (1.0 + 1.0 / (8.0 * x)) / math.sqrt(2.0 * math.pi * x), rel=1e-6
    )
    expected = x - 0.5 * math.log(2.0 * math.pi * x) + math.log1p(1.0 / (8.0 * x))
    assert log_bessel_I(0, x) == pytest.approx(expected, abs=1e-6)


def test_hermite_ratio_low_orders() -> None:
    """Test the ratio against explicit Hermite polynomials."""
    assert hermite_ratio(1, 1.0) == pytest.approx(1.0)
    assert hermite_ratio(2, 1.0) == pytest.approx(4.0 / 3.0)


def test_hermite_ratio_large_n_limit() -> None:
    """Test that the ratio approaches u - sqrt(u^2 - 2) outside the well."""
    assert abs(hermite_ratio(200, 3.0) - (3.0 - math.sqrt(7.0))) < 1e-2
    assert hermite_ratio_limit(3.0) == pytest.approx(3.0 - math.sqrt(7.0))


def test_hermite_ratio_complex_argument() -> None:
    """Test the ratio for complex u against its limit."""
    u = 2.0 + 1.0j
    assert abs(hermite_ratio(400, u) - hermite_ratio_limit(u)) < 1e-2


def test_hermite_ratio_zero() -> None:
    """Test that a zero of H_1 is reported."""
    with pytest.raises(HermiteZeroError):
        hermite_ratio(1, 0.0)


def test_integrate_ode_oscillator_and_event() -> None:
    """Test a harmonic oscillator over one period with a crossing event."""

    def oscillator(_t: float, y: np.ndarray) -> np.ndarray:
        return np.array([y[1], -y[0]])

    def crossing(_t: float, y: np.ndarray) -> float:
        return y[0]

    crossing.direction = -1

    trajectory = integrate_ode(
        oscillator, [1.0, 0.0], (0.0, 2.0 * math.pi), events=crossing
    )

    assert trajectory.final == pytest.approx([1.0, 0.0], abs=1e-8)
    assert trajectory.t_events[0][0] == pytest.approx(math.pi / 2, rel=1e-8)
    assert trajectory(math.pi)[0] == pytest.approx(-1.0, abs=1e-8)


def test_integrate_ode_blow_up() -> None:
    """Test that a finite-time blow-up is reported."""
    with pytest.raises(NumericalError):
        integrate_ode(
            lambda _t, y: y**2,
            [1.0],
            (0.0, 2.0),
            IntegratorConfig(rel_tol=1e-8, abs_tol=1e-10),
        )


def _kepler_field(_t: float, y: np.ndarray) -> np.ndarray:
    r3 = math.hypot(y[0], y[1]) ** 3
    return np.array([y[2], y[3], -y[0] / r3, -y[1] / r3])


def _kepler_perihelion(e: float) -> list[float]:
    return [1.0 - e, 0.0, 0.0, math.sqrt((1.0 + e) / (1.0 - e))]


def test_integrate_ode_conserves_kepler_energy() -> None:
    """Test E = -1/2 over ten periods of an e = 0.3 Kepler orbit."""
    times = np.linspace(0.0, 20.0 * math.pi, 2001)
    trajectory = integrate_ode(
        _kepler_field, _kepler_perihelion(0.3), (0.0, times[-1]), t_eval=times
    )

    x, y, vx, vy = trajectory.y
    energy = 0.5 * (vx**2 + vy**2) - 1.0 / np.hypot(x, y)
    assert np.max(np.abs(energy + 0.5)) < 1e-8
    assert trajectory.final[:2] == pytest.approx([0.7, 0.0], abs=1e-6)


def test_integrate_ode_error_shrinks_with_tolerance() -> None:
    """Test that halving rel_tol lowers the return error after ten periods."""
    start = _kepler_perihelion(0.3)
    cfg = IntegratorConfig(rel_tol=1e-6, abs_tol=1e-8, method="RK45")
    errors = []
    for _ in range(4):
        final = integrate_ode(_kepler_field, start, (0.0, 20.0 * math.pi), cfg).final
        errors.append(float(np.max(np.abs(final - start))))
        cfg = cfg.tightened()
    assert all(a > b for a, b in zip(errors, errors[1:], strict=False))


def test_integrator_config_rejects_implicit_methods() -> None:
    """Test that only the embedded Runge-Kutta pairs are accepted."""
    with pytest.raises(ConfigurationError):
        IntegratorConfig(method="Radau")


def test_integrate_ode_rejects_non_finite_start() -> None:
    """Test that a non-finite initial state is rejected."""
    with pytest.raises(NonFiniteError):
        integrate_ode(lambda _t, y: y, [math.nan], (0.0, 1.0))


def test_real_cubic_roots() -> None:
    """Test the roots of (x - 3)(x - 1)(x + 2)."""
    roots = real_cubic_roots(1.0, -2.0, -5.0, 6.0)
    assert roots == pytest.approx((3.0, 1.0, -2.0), abs=1e-13)


def test_real_cubic_roots_complex_pair() -> None:
    """Test that a cubic with a complex pair is rejected."""
    with pytest.raises(DiscriminantError):
        real_cubic_roots(1.0, 0.0, 1.0, 1.0)
