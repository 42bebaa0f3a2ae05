"""Tests for the radial transition density and its Bohr limit."""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from trojan_lab.mechanics.exceptions import ConfigurationError, DomainError
from trojan_lab.mechanics.models.fields import RadialDensityParams
from trojan_lab.mechanics.wimp.density import (
    density_mode,
    density_transport,
    log_transition_density,
    preimage,
    semiclassical_radius,
    stationary_density,
    transition_density,
    transported_mass,
)

PARAMS = RadialDensityParams(n=3, epsilon2=0.1, omega=1.0)
BOHR = RadialDensityParams(n=100, epsilon2=0.01, omega=1.0)


def _bump(x: np.ndarray | float) -> np.ndarray | float:
    """Normalised Gaussian bump of width 0.1 about x = 1.5."""
    scaled = (np.asarray(x) - 1.5) / 0.1
    return np.exp(-0.5 * scaled**2) / (0.1 * math.sqrt(2 * math.pi))


def test_normalisation() -> None:
    """Test the kernel integrates to one in y."""
    mass = sum(
        quad(
            lambda y: transition_density(PARAMS, 1.0, 0.0, y, 0.7),
            lower,
            upper,
            epsabs=1e-13,
            epsrel=1e-12,
            limit=200,
        )[0]
        for lower, upper in ((0.0, 5.0), (5.0, np.inf))
    )
    assert mass == pytest.approx(1.0, abs=1e-8)


def test_positivity_and_logs() -> None:
    """Test p > 0 and log p = log(p)."""
    for y in (0.1, 1.0, 2.5):
        value = transition_density(PARAMS, 0.8, 0.2, y, 1.1)
        assert value > 0.0
        assert log_transition_density(PARAMS, 0.8, 0.2, y, 1.1) == pytest.approx(
            math.log(value)
        )


def test_chapman_kolmogorov() -> None:
    """Test composing two steps reproduces the one-step kernel."""
    x, y = 1.0, 1.3
    composed, _ = quad(
        lambda z: transition_density(PARAMS, x, 0.0, z, 0.3)
        * transition_density(PARAMS, z, 0.3, y, 0.7),
        0.0,
        8.0,
        epsabs=1e-13,
        epsrel=1e-12,
        limit=200,
    )
    direct = transition_density(PARAMS, x, 0.0, y, 0.7)
    assert composed == pytest.approx(direct, rel=1e-6)


def test_time_homogeneous() -> None:
    """Test the kernel depends on t - s only."""
    first = transition_density(PARAMS, 1.0, 0.0, 1.2, 0.5)
    later = transition_density(PARAMS, 1.0, 2.0, 1.2, 2.5)
    assert later == pytest.approx(first, rel=1e-12)


def test_stationary_limit() -> None:
    """Test the kernel forgets its start and tends to the stationary law."""
    for y in (0.3, 0.8, 1.4):
        near = transition_density(PARAMS, 0.5, 0.0, y, 20.0)
        far = transition_density(PARAMS, 1.5, 0.0, y, 20.0)
        assert near == pytest.approx(far, rel=1e-6)
        assert near == pytest.approx(stationary_density(PARAMS, y), rel=1e-6)
    mass, _ = quad(
        lambda y: stationary_density(PARAMS, y), 0.0, np.inf, epsabs=1e-12
    )
    assert mass == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize(
    ("x", "s", "y", "t"),
    [
        (0.0, 0.0, 1.0, 1.0),
        (1.0, 0.0, -1.0, 1.0),
        (1.0, 1.0, 1.0, 1.0),
        (1.0, -1.0, 1.0, 1.0),
    ],
)
def test_domain(x: float, s: float, y: float, t: float) -> None:
    """Test nonpositive radii and time gaps are rejected."""
    with pytest.raises(DomainError):
        transition_density(PARAMS, x, s, y, t)


def test_params_validation() -> None:
    """Test n >= 1 and positive scales."""
    with pytest.raises(ConfigurationError):
        RadialDensityParams(n=0, epsilon2=0.1, omega=1.0)
    with pytest.raises(ConfigurationError):
        RadialDensityParams(n=2, epsilon2=0.1, omega=0.0)


def test_bohr_limit_mode() -> None:
    """Test the mode approaches the semi-classical orbit as n grows."""
    x, t = 1.5, 0.5
    unit = RadialDensityParams(n=1, epsilon2=1.0, omega=1.0)
    orbit = semiclassical_radius(unit, x, t)
    errors = []
    for n in (200, 400):
        params = RadialDensityParams(n=n, epsilon2=1.0 / n, omega=1.0)
        errors.append(abs(density_mode(params, x, t) - orbit))
    assert errors[1] < 1e-3
    assert errors[1] < errors[0]


def test_semiclassical_radius() -> None:
    """Test the orbit starts at x and tends to sqrt(lambda / omega)."""
    assert semiclassical_radius(BOHR, 1.7, 0.0) == pytest.approx(1.7)
    assert semiclassical_radius(BOHR, 1.7, 30.0) == pytest.approx(1.0, rel=1e-12)
    with pytest.raises(DomainError):
        semiclassical_radius(BOHR, 1.0, -1.0)


def test_preimage_inverts_orbit() -> None:
    """Test x0 maps back onto y."""
    for x in (0.3, 1.0, 2.2):
        y = semiclassical_radius(BOHR, x, 0.8)
        assert float(preimage(BOHR, y, 0.8)) == pytest.approx(x, rel=1e-10)
    assert math.isnan(float(preimage(BOHR, 0.1, 2.0)))


def test_transport_identity_at_start() -> None:
    """Test t = 0 leaves the density unchanged."""
    y = np.linspace(0.5, 2.5, 9)
    np.testing.assert_allclose(density_transport(_bump, 0.0, BOHR, y), _bump(y))


def test_transport_conserves_mass() -> None:
    """Test the transported density carries the initial mass at t = 2 / omega."""
    total, _ = quad(_bump, 0.0, 10.0, points=[1.5], epsabs=1e-14)
    moved = transported_mass(_bump, 2.0, BOHR, 0.0, 10.0, points=[1.5])
    assert moved == pytest.approx(total, abs=1e-10)
    direct, _ = quad(
        lambda y: float(density_transport(_bump, 2.0, BOHR, y)),
        0.0,
        3.0,
        points=[1.0, 1.011],
        epsabs=1e-13,
        limit=400,
    )
    assert direct == pytest.approx(total, rel=1e-7)


def test_transport_empty_below_image() -> None:
    """Test radii below the image of the centre carry no density."""
    density = density_transport(_bump, 2.0, BOHR, np.array([0.1, 0.5]))
    np.testing.assert_array_equal(density, [0.0, 0.0])
    assert transported_mass(_bump, 2.0, BOHR, 0.0, 0.5) == 0.0


def test_transport_concentrates() -> None:
    """Test that by t = 10 / omega the mass sits on the classical radius."""
    radius = BOHR.classical_radius
    near = transported_mass(_bump, 10.0, BOHR, radius * (1 - 1e-3), radius * (1 + 1e-3))
    assert near >= 0.99
    assert transported_mass(_bump, 10.0, BOHR, 0.0, 10.0) == pytest.approx(1.0)


def test_transport_domain() -> None:
    """Test negative times and reversed intervals."""
    with pytest.raises(DomainError):
        density_transport(_bump, -1.0, BOHR, 1.0)
    with pytest.raises(DomainError):
        transported_mass(_bump, 1.0, BOHR, 2.0, 1.0)
