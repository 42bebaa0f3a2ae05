"""Tests for curvature, torsion, bumps and the ratio identities."""

import math

import numpy as np
import pytest

from trojan_lab.mechanics.exceptions import (
    AxisSingularityError,
    ConfigurationError,
    ValidityError,
)
from trojan_lab.mechanics.models.enums import BumpKind
from trojan_lab.mechanics.models.fields import KeplerStateParams, OrbitPoint
from trojan_lab.mechanics.models.numerics import IntegratorConfig
from trojan_lab.mechanics.wimp.fields import kepler_field, kepler_RS, magnetic_field
from trojan_lab.mechanics.wimp.flows import semiclassical_flow
from trojan_lab.mechanics.wimp.geometry import (
    antigravity_bump,
    coriolis_curvature,
    curve_curvature,
    near_orbit_asymptotics,
    orbit_point,
    parallel_curvature,
    parallel_curve,
    pauli_identity_check,
    quantum_curvature_2d,
    quantum_curvature_torsion_3d,
    trajectory_geometry,
)

TIGHT = IntegratorConfig(rel_tol=1e-12, abs_tol=1e-14)


@pytest.mark.parametrize("point", [(0.0, 1.0), (-0.6, 0.8)])
def test_curvature_on_circular_orbit(point: tuple[float, float]) -> None:
    """Test kappa_q = 1 / a on the circle r = a."""
    a = 1.3**2 / 1.1
    field = kepler_field(KeplerStateParams(mu=1.1, lam=1.3, e=0.0))
    geometry = quantum_curvature_2d(field, a * np.asarray(point))
    assert geometry.kappa == pytest.approx(1.0 / a, rel=1e-9)
    assert geometry.tangent @ geometry.normal == pytest.approx(0.0, abs=1e-12)
    # concave side faces the centre
    assert geometry.normal @ np.asarray(point) < 0.0


def test_curvature_at_pericentre() -> None:
    """Test the classical curvature 1 / (a (1 - e^2)) at the pericentre."""
    state = KeplerStateParams(mu=1.0, lam=1.0, e=0.5)
    field = kepler_field(state)
    geometry = quantum_curvature_2d(field, (state.a * 0.5, 0.0))
    assert geometry.kappa == pytest.approx(1.0 / 0.75, rel=1e-8)


def test_curvature_matches_integrated_flow() -> None:
    """Test kappa_q off the orbit against the Frenet curvature of the flow."""
    field = kepler_field(KeplerStateParams(mu=1.0, lam=1.0, e=0.0))
    flow = semiclassical_flow(field, (1.5, 0.2), (0.0, 0.2), TIGHT)
    point = flow.trajectory(0.1)
    expected = quantum_curvature_2d(field, point)
    measured = trajectory_geometry(flow.trajectory, 0.1)
    assert measured.kappa == pytest.approx(expected.kappa, rel=1e-4)
    assert measured.speed == pytest.approx(expected.speed, rel=1e-6)
    assert measured.tau == pytest.approx(0.0, abs=1e-6)


def test_curvature_rejects_vector_potential() -> None:
    """Test that the magnetic field needs the Coriolis form."""
    with pytest.raises(ConfigurationError):
        quantum_curvature_2d(magnetic_field(1.0, 1.0), (0.5, 0.5))


def test_coriolis_curvature_on_limit_circle() -> None:
    """Test kappa = 1 / a0 for the magnetic example's circle."""
    b, a0 = 2.0, 1.5
    field = magnetic_field(b, a0)
    for angle in (0.0, 1.0, 4.0):
        point = a0 * np.array([math.cos(angle), math.sin(angle)])
        assert coriolis_curvature(field, point) == pytest.approx(1.0 / a0, rel=1e-8)


def test_coriolis_curvature_without_field() -> None:
    """Test the signed form reduces to kappa_q for an anticlockwise flow."""
    field = kepler_field(KeplerStateParams(mu=1.0, lam=1.0, e=0.0))
    point = (1.4, 0.3)
    signed = coriolis_curvature(field, point)
    assert signed < 0.0
    assert -signed == pytest.approx(quantum_curvature_2d(field, point).kappa, rel=1e-7)


def test_near_orbit_asymptotics() -> None:
    """Test the estimates against the circular Keplerian state."""
    field = kepler_field(KeplerStateParams(mu=1.0, lam=1.0, e=0.0))
    orbit = orbit_point(field, (1.0, 0.0))
    assert orbit.normal_derivative == pytest.approx(1.0, rel=1e-9)
    assert orbit.curvature == pytest.approx(1.0, rel=1e-9)
    assert orbit.r_nn == pytest.approx(-1.0, rel=1e-6)

    errors = []
    for d in (1e-3, 2e-3):
        estimate = near_orbit_asymptotics(orbit, d)
        exact = (1.0 / (1.0 + d) - 1.0) ** 2
        errors.append(abs(estimate.grad_r2 - exact) / exact)
        assert estimate.first_order == pytest.approx(0.0, abs=1e-9)
        assert estimate.grad_s2 == pytest.approx(1.0 / (1.0 + d) ** 2, abs=1e-5)
    assert errors[0] < 1e-2
    assert 1.5 < errors[1] / errors[0] < 2.5


def test_near_orbit_limits() -> None:
    """Test d = 0 and the sign of |grad R|^2 on both sides."""
    orbit = OrbitPoint(
        energy=-0.5, potential=-1.0, normal_derivative=1.0, curvature=1.0, r_nn=-1.0
    )
    at_orbit = near_orbit_asymptotics(orbit, 0.0)
    assert at_orbit.grad_r2 == 0.0
    assert at_orbit.grad_s2 == 1.0
    for d in (-1e-2, -1e-3, 1e-3, 1e-2):
        assert near_orbit_asymptotics(orbit, d).grad_r2 >= 0.0


def test_torsion_on_classical_circle() -> None:
    """Test kappa = 1 / a and tau = 0 on the circle z = 0, rho = a."""
    geometry = quantum_curvature_torsion_3d(2.0, (0.0, 2.0, 0.0))
    assert geometry.kappa == pytest.approx(0.5, rel=1e-12)
    assert geometry.tau == 0.0


def test_torsion_parity() -> None:
    """Test tau vanishes in the plane and is odd in z."""
    assert quantum_curvature_torsion_3d(1.0, (0.7, 0.9, 0.0)).tau == 0.0
    up = quantum_curvature_torsion_3d(1.0, (0.8, 0.3, 0.4))
    down = quantum_curvature_torsion_3d(1.0, (0.8, 0.3, -0.4))
    assert down.tau == pytest.approx(-up.tau, rel=1e-12)
    assert down.kappa == pytest.approx(up.kappa, rel=1e-12)


def test_torsion_reference_values() -> None:
    """Test curvature and torsion at an off-plane point."""
    geometry = quantum_curvature_torsion_3d(1.0, (0.8, 0.3, 0.4))
    assert geometry.kappa == pytest.approx(1.3301242728, rel=1e-9)
    assert geometry.tau == pytest.approx(-0.292886, rel=1e-5)


def test_torsion_matches_integrated_flow() -> None:
    """Test the closed forms against the Frenet data of the spatial flow."""
    field = kepler_field(KeplerStateParams(mu=1.0, lam=1.0, e=0.0), dimension=3)
    flow = semiclassical_flow(field, (0.8, 0.3, 0.4), (0.0, 0.2), TIGHT)
    point = flow.trajectory(0.1)
    expected = quantum_curvature_torsion_3d(1.0, point)
    measured = trajectory_geometry(flow.trajectory, 0.1)
    assert measured.kappa == pytest.approx(expected.kappa, rel=1e-3)
    assert measured.tau == pytest.approx(expected.tau, rel=1e-3)


def test_torsion_axis() -> None:
    """Test the axis is rejected."""
    with pytest.raises(AxisSingularityError):
        quantum_curvature_torsion_3d(1.0, (0.0, 0.0, 1.0))


def test_trajectory_geometry_span() -> None:
    """Test a stencil leaving the span is rejected."""
    field = kepler_field(KeplerStateParams(mu=1.0, lam=1.0, e=0.0))
    flow = semiclassical_flow(field, (1.5, 0.2), (0.0, 0.2), TIGHT)
    with pytest.raises(ConfigurationError):
        trajectory_geometry(flow.trajectory, 0.01)


def test_parallel_curvature() -> None:
    """Test kappa_d = kappa0 / (1 + d kappa0) on an offset ellipse."""
    theta = np.linspace(0.0, 2.0 * math.pi, 4000, endpoint=False)
    ellipse = np.column_stack([2.0 * np.cos(theta), np.sin(theta)])
    d = 0.05
    offset = parallel_curve(ellipse, d)
    kappa0 = curve_curvature(ellipse)
    expected = np.array([parallel_curvature(k, d) for k in kappa0])
    np.testing.assert_allclose(curve_curvature(offset), expected, rtol=1e-4)
    # first-order law kappa0 - d kappa0^2 within O(d^2)
    assert np.max(np.abs(expected - (kappa0 - d * kappa0**2))) < 2.0 * d**2 * 8.0


def test_parallel_curvature_limits() -> None:
    """Test the closed form and the centre of curvature."""
    assert parallel_curvature(1.0, 1.0) == 0.5
    assert parallel_curvature(0.5, 0.0) == 0.5
    with pytest.raises(ValidityError):
        parallel_curvature(1.0, -1.0)


def test_kepler_circular_bump() -> None:
    """Test the bump at 2a and the inflection at 3a."""
    mu, lam = 1.3, 0.9
    a = lam**2 / mu
    locus = antigravity_bump(BumpKind.KEPLER_CIRCULAR, mu, lam)
    assert locus.root == pytest.approx(2.0 * a, abs=1e-10)
    assert locus.inflection == pytest.approx(3.0 * a, abs=1e-10)

    field = kepler_field(KeplerStateParams(mu=mu, lam=lam, e=0.0))
    values = [field.effective_potential((0.0, r)) for r in (1.9 * a, 2.0 * a, 2.1 * a)]
    assert values[1] > max(values[0], values[2])
    r = 1.7 * a
    veff = mu / r - lam**2 / r**2 - mu**2 / lam**2
    assert field.effective_potential((r, 0.0)) == pytest.approx(veff, rel=1e-12)


def test_oscillator_circular_bump() -> None:
    """Test the oscillator bump at 2^(1/4) a."""
    omega, lam = 1.7, 0.6
    locus = antigravity_bump("oscillator-circular", omega, lam)
    assert locus.root == pytest.approx(2.0**0.25 * math.sqrt(lam / omega), abs=1e-10)
    assert locus.inflection is None


def test_kepler_eccentric_bump() -> None:
    """Test the first-order bump curve 2p / r = 1 + c e cos(theta)."""
    mu, lam, e = 1.0, 1.0, 1e-2
    locus = antigravity_bump(BumpKind.KEPLER_ECCENTRIC, mu, lam, e)
    assert locus.coefficient == pytest.approx(-0.5, abs=5e-3)
    latus = (1.0 - e * e)
    fit = 1.0 + locus.coefficient * e * np.cos(locus.theta)
    residual = np.abs(2.0 * latus / locus.radius - fit)
    assert residual.max() < 3.0 * e * e
    assert locus.to_dict()["kind"] == "kepler-eccentric"


@pytest.mark.parametrize("e", [5e-3, 2e-2])
def test_kepler_eccentric_bump_coefficient_is_constant(e: float) -> None:
    """Test that the fitted coefficient stays near -1/2 as e varies."""
    reference = antigravity_bump(BumpKind.KEPLER_ECCENTRIC, 1.0, 1.0, 1e-2)
    locus = antigravity_bump(BumpKind.KEPLER_ECCENTRIC, 1.0, 1.0, e)
    assert locus.coefficient == pytest.approx(-0.5, abs=2e-2)
    assert locus.coefficient == pytest.approx(reference.coefficient, abs=2e-2)
    assert locus.root == pytest.approx(2.0, abs=0.1)


def test_bump_validation() -> None:
    """Test unknown kinds and eccentricities outside the first-order regime."""
    with pytest.raises(ConfigurationError):
        antigravity_bump("spiral", 1.0, 1.0)
    with pytest.raises(ConfigurationError):
        antigravity_bump(BumpKind.KEPLER_CIRCULAR, -1.0, 1.0)
    with pytest.raises(ValidityError):
        antigravity_bump(BumpKind.KEPLER_ECCENTRIC, 1.0, 1.0, 0.5)


@pytest.mark.parametrize("e", [0.3, 0.5])
def test_pauli_identities_in_space(e: float) -> None:
    """Test every ratio identity at an off-plane point."""
    state = KeplerStateParams(mu=1.3, lam=1.7, e=e)
    result = pauli_identity_check(state, (0.9 * state.a, 0.5 * state.a, 0.4 * state.a))
    assert result.skipped == ()
    assert len(result.residuals) == 8
    assert result.max_residual < 1e-8


def test_pauli_identities_in_plane() -> None:
    """Test that the vanishing components of l are skipped, not failed."""
    state = KeplerStateParams(mu=1.3, lam=1.7, e=0.5)
    result = pauli_identity_check(state, (0.9 * state.a, 0.5 * state.a))
    assert set(result.skipped) == {"-a3r/l2i", "a3i/l2r", "l1i/l2r", "-l1r/l2i"}
    assert result.max_residual < 1e-8
    assert abs(result.residuals["sin"]) < 1e-8
    assert result.to_dict()["skipped"] == list(result.skipped)


def test_pauli_sample_is_consistent() -> None:
    """Test Z is built from the state's own gradients."""
    state = KeplerStateParams(mu=1.0, lam=1.0, e=0.5)
    point = np.array([0.4, 0.6, 0.2])
    sample = kepler_RS(state, point)
    z = -1j * sample.grad_R + sample.grad_S
    # Z . Z / 2 - mu / r = E is the complex energy equation
    r = float(np.linalg.norm(point))
    assert (z @ z) / 2.0 - 1.0 / r == pytest.approx(state.energy, abs=1e-12)
