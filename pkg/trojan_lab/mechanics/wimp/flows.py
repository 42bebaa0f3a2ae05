"""
Semi-classical particle flows X' = grad(R + S) - A.

R increases along every flow line and the lines spiral onto the curve where
R is maximal, the classical orbit of the state.
"""

from __future__ import annotations

import math
from typing import TYPE_CHECKING, Any

import numpy as np

from ..const import FIELD_STEP, LOGGER, MONOTONE_SLACK, SECOND_LAW_CHECKS
from ..exceptions import (
    BranchCutError,
    ConfigurationError,
    LeftSupportError,
    OriginSingularityError,
)
from ..models.fields import FlowResult, SigmaSpiral
from ..numerics import integrate_ode
from .fields import sigma_field
from .geometry import finite_jacobian, veff_gradient

if TYPE_CHECKING:
    from ..models.fields import ScalarField
    from ..models.numerics import IntegratorConfig


def lorentz(v: np.ndarray, curl: float) -> np.ndarray:
    """v x (0, 0, curl), planar or spatial."""
    force = np.zeros_like(v)
    force[0], force[1] = curl * v[1], -curl * v[0]
    return force


def second_law_residual(field: ScalarField, point: Any) -> float:
    """
    Relative residual of X'' = -grad V_eff + X' x curl A at a point.

    The acceleration is the derivative of the drift along itself, with the
    Jacobian taken by central differences.
    """
    p = np.asarray(point, dtype=float)
    v = field.velocity(p)
    jacobian = finite_jacobian(field.velocity, p, FIELD_STEP * field.scale)
    acceleration = jacobian @ v
    force = -veff_gradient(field, p) + lorentz(v, field.curl)
    size = max(1.0, float(np.linalg.norm(acceleration)), float(np.linalg.norm(force)))
    return float(np.linalg.norm(acceleration - force)) / size


def _continuous_R(field: ScalarField, points: np.ndarray) -> np.ndarray:  # noqa: N802
    """R at the points, with its angular jumps across the negative x axis removed."""
    values = np.array([field.sample(p).R for p in points.T])
    if field.winding == 0.0:
        return values
    angle = np.arctan2(points[1], points[0])
    return values + field.winding * (np.unwrap(angle) - angle) / (2.0 * math.pi)


def semiclassical_flow(  # noqa: PLR0913
    field: ScalarField,
    x0: Any,
    t_span: tuple[float, float],
    cfg: IntegratorConfig | None = None,
    *,
    t_eval: np.ndarray | None = None,
    checks: int = SECOND_LAW_CHECKS,
    logger: Any = LOGGER,
) -> FlowResult:
    """
    Integrate the drift of a semi-classical state.

    Arguments:
        field: The state.
        x0: Starting point, in the field's dimension.
        t_span: Start and end time.
        cfg: Integrator tolerances.
        t_eval: Times at which to store the flow.
        checks: Stored steps at which the second law is checked.
        logger: Where diagnostics go.

    Returns:
        The flow with R along it, whether R stayed nondecreasing and the
        largest second-law residual.

    Raises:
        ConfigurationError: If x0 has the wrong dimension.
        LeftSupportError: If the flow starts or wanders onto a singular locus.

    """
    start = np.asarray(x0, dtype=float)
    if start.shape != (field.dimension,):
        msg = f"{field.name} is {field.dimension}-dimensional, got x0 = {start}"
        raise ConfigurationError(msg)

    def drift(_t: float, y: np.ndarray) -> np.ndarray:
        try:
            return field.velocity(y)
        except BranchCutError as err:
            msg = f"The flow of {field.name} left the support at {y}"
            raise LeftSupportError(msg) from err

    drift(0.0, start)
    trajectory = integrate_ode(drift, start, t_span, cfg, t_eval=t_eval, logger=logger)

    try:
        values = _continuous_R(field, trajectory.y)
        size = trajectory.t.size
        picks = np.unique(np.linspace(0, size - 1, min(checks, size)).astype(int))
        residual = max(second_law_residual(field, trajectory.y[:, i]) for i in picks)
    except BranchCutError as err:
        msg = f"The flow of {field.name} came too close to a singular locus"
        raise LeftSupportError(msg) from err

    slack = MONOTONE_SLACK * max(1.0, float(np.abs(values).max()))
    monotone = bool(np.all(np.diff(values) >= -slack))
    if not monotone:
        logger.warning("R decreased along the flow of %s", field.name)
    logger.debug(
        "Flow of %s: %d steps, R %.6g -> %.6g, second law %.3g",
        field.name,
        size,
        values[0],
        values[-1],
        residual,
    )
    return FlowResult(
        trajectory=trajectory, R=values, monotone=monotone, second_law=residual
    )


def sigma_spiral(  # noqa: PLR0913
    mu: float,
    lam: float,
    sigma2: float,
    x0: Any,
    t_span: tuple[float, float],
    cfg: IntegratorConfig | None = None,
    *,
    logger: Any = LOGGER,
) -> SigmaSpiral:
    """
    Flow of the viscous Coulomb state onto its circular orbit.

    The angular momentum x v_y - y v_x equals lambda + sigma^2 everywhere and
    the flow spirals onto r = lambda (lambda - sigma^2) / mu.

    Raises:
        OriginSingularityError: If x0 is the centre.

    """
    start = np.asarray(x0, dtype=float)
    if not np.any(start):
        msg = "The viscous spiral cannot start at the centre"
        raise OriginSingularityError(msg)
    field = sigma_field(mu, lam, sigma2)
    flow = semiclassical_flow(field, start, t_span, cfg, logger=logger)
    points = flow.trajectory.y
    velocities = [field.velocity(p) for p in points.T]
    angular = np.array(
        [p[0] * v[1] - p[1] * v[0] for p, v in zip(points.T, velocities, strict=True)]
    )
    limit = lam * (lam - sigma2) / mu
    logger.info(
        "Viscous spiral sigma^2 = %g: final radius %.9g, limit %.9g, L = %.12g",
        sigma2,
        math.hypot(*flow.final[:2]),
        limit,
        angular[-1],
    )
    return SigmaSpiral(flow=flow, angular_momentum=angular, limit_radius=limit)
