"""
Experiments behind the trojan_lab subcommands.

Each experiment turns a RunConfig into a Report. Numbers come from the
mechanics core; this module only chooses sample points and arranges rows.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import TYPE_CHECKING, Any

import numpy as np

from .const import LOGGER
from .mechanics.const import FRENET_STEP, TWO_PI
from .mechanics.constants import (
    bohr_mean,
    conservation_drift,
    is_periodic,
    modal_decompose,
)
from .mechanics.eccentric import (
    bohr_spectrum_of_solution,
    eccentric_residual,
    first_order_solution,
    six_constants,
)
from .mechanics.exceptions import (
    ConfigurationError,
    NoBoundMotionError,
    ValidityError,
)
from .mechanics.frame import lagrange_points, linearise, linearised_field
from .mechanics.isosceles import (
    apsidal_angle,
    closure_ratio,
    config_from_apsides,
    effective_potential,
    general_orbit,
    hildan_config,
    hildan_paradigm,
    integrate_isosceles_orbit,
    mathieu_stability,
    weierstrass_orbit,
)
from .mechanics.kepler4 import (
    TABLES,
    data_dir,
    ingest,
    invert_period,
    is_valid,
    load_pairs,
    predict_radius,
    reproduce_table,
)
from .mechanics.models.enums import BumpKind, Orientation, OscillatorVariant
from .mechanics.models.fields import (
    KeplerStateParams,
    OscillatorStateParams,
    RadialDensityParams,
)
from .mechanics.models.isosceles import IsoscelesConfig
from .mechanics.models.system import RotatingState, SystemParams
from .mechanics.numerics import integrate_ode
from .mechanics.wimp.density import (
    density_mode,
    log_transition_density,
    semiclassical_radius,
    stationary_density,
    transition_density,
)
from .mechanics.wimp.fields import (
    kepler_field,
    magnetic_field,
    oscillator_field,
    sigma_field,
)
from .mechanics.wimp.flows import semiclassical_flow, sigma_spiral
from .mechanics.wimp.geometry import (
    antigravity_bump,
    coriolis_curvature,
    pauli_identity_check,
    quantum_curvature_2d,
    quantum_curvature_torsion_3d,
    trajectory_geometry,
)
from .output import Report

if TYPE_CHECKING:
    from collections.abc import Callable, Mapping

    from .data import RunConfig
    from .mechanics.models.fields import FlowResult, ScalarField, SigmaSpiral
    from .mechanics.models.system import LinearisedParams


def _require(condition: bool, message: str) -> None:  # noqa: FBT001
    if not condition:
        raise ConfigurationError(message)


def _stable(p: Mapping[str, Any]) -> LinearisedParams:
    params = SystemParams.from_mass_ratio(p["mu_ratio"])
    lin = linearise(params, Orientation(p["orientation"]))
    if not lin.stable:
        msg = (
            f"Mass product {params.mass_product:.6g} is not below 1/27; "
            "the hidden constants need a stable linearisation"
        )
        raise ValidityError(msg)
    return lin


def _state(p: Mapping[str, Any]) -> RotatingState:
    return RotatingState(*p["state"])


# Linearised Trojan motion


def constants_check(config: RunConfig) -> Report:
    """Drift of D1, D2 and J along linearised flows from random states."""
    p = config.params
    _require(p["states"] >= 1, "states must be at least 1")
    lin = _stable(p)
    rng = np.random.default_rng(config.seed)
    rows = []
    for index in range(p["states"]):
        x, y, xdot, ydot = rng.normal(scale=p["amplitude"], size=4)
        state = RotatingState(X=x, Y=y, Xdot=xdot, Ydot=ydot)
        drift = conservation_drift(
            lin, state, p["periods"], config.integrator(), samples=p["samples"]
        )
        LOGGER.debug("State %d: worst drift %.3g", index, drift.worst)
        rows.append({"index": index, **state.to_dict(), **drift.to_dict()})
    report = Report(config.subcommand)
    report.add("linearisation", [lin.to_dict()])
    report.add("drift", rows)
    return report


def modal(config: RunConfig) -> Report:
    """Linearisation, Lagrange points and modal constants of one state."""
    p = config.params
    params = SystemParams.from_mass_ratio(p["mu_ratio"], p["a0"])
    lin = linearise(params, Orientation(p["orientation"]))
    report = Report(config.subcommand)
    report.add(
        "system",
        [
            {
                **params.to_dict(),
                "omega": params.omega,
                "mass_product": params.mass_product,
                "mu_tilde": params.mu_tilde,
            }
        ],
    )
    report.add("linearisation", [lin.to_dict()])
    report.add(
        "lagrange",
        [
            {"point": name, "x": point[0], "y": point[1]}
            for name, point in lagrange_points(params).to_dict().items()
            if point is not None
        ],
    )
    if not lin.stable:
        report.flag(
            f"Mass product {params.mass_product:.6g} is not below 1/27; "
            "no modal constants"
        )
        return report
    constants = modal_decompose(lin, _state(p))
    report.add("modal", [{**constants.to_dict(), "periodic": is_periodic(constants)}])
    return report


def spectrum(config: RunConfig) -> Report:
    """Bohr-Fourier means of a sampled linearised flow at the modal lines."""
    p = config.params
    _require(p["resolution"] >= 3, "resolution must be at least 3")  # noqa: PLR2004
    _require(p["periods"] > 0, "periods must be positive")
    lin = _stable(p)
    state = _state(p)
    step = TWO_PI / lin.alpha / p["resolution"]
    count = math.ceil(p["periods"] * TWO_PI / lin.beta / step) + 1
    times = np.arange(count) * step
    trajectory = integrate_ode(
        linearised_field(lin),
        state.as_array(),
        (0.0, float(times[-1])),
        config.integrator(),
        t_eval=times,
    )
    window = None if p["window"] == "none" else p["window"]
    rows = []
    for label, frequency in (
        ("alpha", lin.alpha),
        ("-alpha", -lin.alpha),
        ("beta", lin.beta),
        ("-beta", -lin.beta),
    ):
        row: dict[str, Any] = {"label": label, "frequency": frequency}
        for name, signal in (("X", trajectory.y[0]), ("Y", trajectory.y[1])):
            mean = bohr_mean(signal, trajectory.t, frequency, window)
            row[name] = mean
            row[f"abs_{name}"] = abs(mean)
        rows.append(row)
    report = Report(config.subcommand)
    report.add("modal", [modal_decompose(lin, state).to_dict()])
    report.add("lines", rows)
    return report


def eccentric(config: RunConfig) -> Report:
    """First-order solution for eccentric primaries: lines, constants, residual."""
    p = config.params
    _require(p["samples"] >= 2, "samples must be at least 2")  # noqa: PLR2004
    lin = _stable(p)
    constants = modal_decompose(lin, _state(p))
    solution = first_order_solution(lin, p["e"], constants, strict=config.strict)
    report = Report(config.subcommand)
    if not solution.valid:
        report.flag(f"e = {p['e']} lies outside the first-order validity bound")
    times = np.linspace(0.0, p["periods"] * TWO_PI / lin.omega, p["samples"])
    report.add(
        "residual",
        [
            {
                "e": solution.e,
                "valid": solution.valid,
                "residual": eccentric_residual(solution, lin.Omega2, times),
            }
        ],
    )
    report.add("constants", [six_constants(solution).to_dict()])
    lines = bohr_spectrum_of_solution(solution).lines
    report.add("spectrum", [line.to_dict() for line in lines])
    return report


# Isosceles configurations


def _orbit_rows(phi: np.ndarray, **columns: np.ndarray) -> list[dict[str, Any]]:
    return [
        {"phi": float(angle), **{k: float(v[i]) for k, v in columns.items()}}
        for i, angle in enumerate(phi)
    ]


def isosceles_orbit(config: RunConfig) -> Report:
    """Direct integration of an isosceles orbit with its radial band."""
    p = config.params
    _require(p["samples"] >= 1, "samples must be at least 1")
    params = SystemParams.from_mass_ratio(p["mu_ratio"], p["a0"])
    cfg = IsoscelesConfig.from_state(
        params, p["rho"], p["rhodot"], p["phi"], p["L"], p["e_primary"]
    )
    report = Report(config.subcommand)
    report.add("config", [cfg.to_dict()])
    try:
        report.add("band", [effective_potential(cfg).to_dict()])
        report.add("apsides", [apsidal_angle(cfg).to_dict()])
    except NoBoundMotionError as err:
        LOGGER.info("No apsides: %s", err)
    phi = p["phi"] + np.linspace(0.0, TWO_PI * p["revolutions"], p["samples"])
    curve = integrate_isosceles_orbit(cfg, phi, config.integrator())
    report.add("orbit", curve.rows())
    if p["e_primary"] > 0.0:
        floquet = mathieu_stability(params, p["e_primary"], config.integrator())
        report.add("floquet", [floquet.to_dict()])
    return report


def hildan(config: RunConfig) -> Report:
    """The Hildan paradigm orbit, Weierstrass form against direct integration."""
    p = config.params
    _require(p["samples"] >= 1, "samples must be at least 1")
    params = SystemParams.from_mass_ratio(p["mu_ratio"], p["a0"])
    cfg = hildan_config(params)
    phi = np.linspace(0.0, TWO_PI * p["revolutions"], p["samples"])
    closed = weierstrass_orbit(cfg, phi)
    direct = integrate_isosceles_orbit(cfg, phi, config.integrator())
    report = Report(config.subcommand)
    report.add("paradigm", [hildan_paradigm(params.a0, params.mu1).to_dict()])
    report.add("config", [cfg.to_dict()])
    report.add(
        "orbit", _orbit_rows(phi, rho_weierstrass=closed.rho, rho_direct=direct.rho)
    )
    return report


def general(config: RunConfig) -> Report:
    """Orbit between given apsides from the elliptic-integral reduction."""
    p = config.params
    params = SystemParams.from_mass_ratio(p["mu_ratio"], p["a0"])
    cfg = config_from_apsides(params, p["rho_min"], p["rho_max"])
    orbit = general_orbit(cfg, p["samples"])
    ratio = closure_ratio(orbit.apsidal_angle)
    report = Report(config.subcommand)
    report.add("config", [cfg.to_dict()])
    report.add("roots", [orbit.roots.to_dict()])
    report.add(
        "apsides",
        [
            {
                "apsidal_angle": orbit.apsidal_angle,
                "closed": ratio is not None,
                "ratio": None if ratio is None else str(ratio),
            }
        ],
    )
    report.add(
        "orbit",
        [
            {"w": float(w), **row}
            for w, row in zip(orbit.w, orbit.curve.rows(), strict=True)
        ],
    )
    return report


# Keplerian fourth law


def _fixture_tables(report: Report, selection: str, directory: str | None) -> None:
    root = Path(directory) if directory else data_dir()
    chosen = [
        entry for entry in TABLES if selection in {"all", Path(entry[1]).stem}
    ]
    if not chosen:
        names = ", ".join(Path(name).stem for _, name, _ in TABLES)
        msg = f"Unknown fixture {selection!r}; choose all or one of {names}"
        raise ConfigurationError(msg)
    pairs = load_pairs(root / "pairs.json")
    for title, name, _ in chosen:
        rows = reproduce_table(ingest(root / name), pairs)
        for row in rows:
            if not row.valid:
                report.flag(f"{title}: {row.name} lies inside (r2 - r1) / 2")
            if row.matches_reference is False:
                report.flag(
                    f"{title}: {row.name} predicts {row.predicted_rho:.10g}, "
                    f"missing the printed {row.reference_rho} ({row.provenance})"
                )
        report.add(Path(name).stem, [row.to_dict() for row in rows])


def kepler4(config: RunConfig) -> Report:
    """Predict a radius or period, or reproduce the fourth-law tables."""
    p = config.params
    report = Report(config.subcommand)
    if p["action"] == "tables":
        _fixture_tables(report, p["fixture"], None)
        return report

    pairs = load_pairs()
    pair = pairs.get(p["system"])
    if pair is None:
        msg = f"Unknown system {p['system']!r}; choose one of {', '.join(pairs)}"
        raise ConfigurationError(msg)
    _require(
        (p["T3"] is None) != (p["rho"] is None), "Give exactly one of --T3 and --rho"
    )
    if p["T3"] is not None:
        period, rho = p["T3"], predict_radius(pair, p["T3"])
    else:
        period, rho = invert_period(pair, p["rho"]), p["rho"]
    valid = is_valid(pair, rho)
    if not valid:
        report.flag(f"rho = {rho} lies inside (r2 - r1) / 2 for {pair.name}")
    report.add("pair", [pair.to_dict()])
    report.add(
        "prediction",
        [
            {
                "system": pair.name,
                "T3": period,
                "rho": rho,
                "unit": pair.unit.value,
                "valid": valid,
            }
        ],
    )
    return report


def tables(config: RunConfig) -> Report:
    """Every bundled fourth-law table."""
    report = Report(config.subcommand)
    _fixture_tables(report, "all", config.params["directory"])
    return report


# Semi-classical mechanics


def build_field(p: Mapping[str, Any]) -> ScalarField:
    """The semi-classical state named by the parameters."""
    state = p["state"]
    if state == "kepler":
        return kepler_field(KeplerStateParams(mu=p["mu"], lam=p["lam"], e=p["e"]))
    if state == "oscillator":
        variant = OscillatorVariant(p["variant"])
        return oscillator_field(
            OscillatorStateParams(
                omega=p["omega"], lam=p["lam"], e=p["e"], variant=variant
            )
        )
    if state == "magnetic":
        return magnetic_field(p["b"], p["radius"])
    return sigma_field(p["mu"], p["lam"], p["sigma2"])


def _flow(
    config: RunConfig, times: np.ndarray | None
) -> tuple[ScalarField, FlowResult, SigmaSpiral | None]:
    p = config.params
    field = build_field(p)
    span = (0.0, p["t_end"])
    if p["state"] == "sigma":
        spiral = sigma_spiral(
            p["mu"], p["lam"], p["sigma2"], p["start"], span, config.integrator()
        )
        return field, spiral.flow, spiral
    flow = semiclassical_flow(
        field, p["start"], span, config.integrator(), t_eval=times
    )
    return field, flow, None


def _flow_summary(report: Report, flow: FlowResult) -> None:
    if not flow.monotone:
        report.flag("R decreased along the flow")
    report.add(
        "summary",
        [
            {
                "monotone": flow.monotone,
                "second_law": flow.second_law,
                "final": flow.final,
            }
        ],
    )


def wimp_flow(config: RunConfig) -> Report:
    """A semi-classical flow sampled with R and the effective potential."""
    p = config.params
    _require(p["t_end"] > 0, "t_end must be positive")
    _require(p["samples"] >= 2, "samples must be at least 2")  # noqa: PLR2004
    times = np.linspace(0.0, p["t_end"], p["samples"])
    field, flow, spiral = _flow(config, times)
    trajectory = flow.trajectory
    rows = [
        {
            "t": float(t),
            "x": float(point[0]),
            "y": float(point[1]),
            "R": float(r),
            "V_eff": field.effective_potential(point),
        }
        for t, point, r in zip(trajectory.t, trajectory.y.T, flow.R, strict=True)
    ]
    report = Report(config.subcommand)
    _flow_summary(report, flow)
    if spiral is not None:
        report.add(
            "spiral",
            [
                {
                    "limit_radius": spiral.limit_radius,
                    "angular_momentum_min": float(spiral.angular_momentum.min()),
                    "angular_momentum_max": float(spiral.angular_momentum.max()),
                }
            ],
        )
    report.add("flow", rows)
    return report


def _planar_curvature(config: RunConfig, report: Report) -> None:
    p = config.params
    _require(
        p["state"] != "sigma",
        "planar curvature needs a kepler, oscillator or magnetic state",
    )
    margin = 2.5 * FRENET_STEP
    _require(p["t_end"] > 2.0 * margin, f"t_end must exceed {2.0 * margin}")
    field, flow, _ = _flow(config, None)
    curvature: Callable[[np.ndarray], float]
    if field.vector_potential is None:
        curvature = lambda q: quantum_curvature_2d(field, q).kappa  # noqa: E731
    else:
        curvature = lambda q: coriolis_curvature(field, q)  # noqa: E731
    rows = []
    for t in np.linspace(margin, p["t_end"] - margin, p["samples"]):
        point = flow.trajectory(t)[:2]
        rows.append(
            {
                "t": float(t),
                "x": float(point[0]),
                "y": float(point[1]),
                "kappa": curvature(point),
                "kappa_frenet": trajectory_geometry(flow.trajectory, t).kappa,
            }
        )
    _flow_summary(report, flow)
    report.add("curvature", rows)


def wimp_curvature(config: RunConfig) -> Report:
    """Curvature, torsion, bump location or Pauli identities."""
    p = config.params
    mode = p["mode"]
    report = Report(config.subcommand)
    if mode == "planar":
        _require(p["samples"] >= 1, "samples must be at least 1")
        _planar_curvature(config, report)
    elif mode == "space":
        report.add(
            "geometry", [quantum_curvature_torsion_3d(p["a"], p["point"]).to_dict()]
        )
    elif mode == "bump":
        kind = BumpKind(p["kind"])
        strength = p["omega"] if kind is BumpKind.OSCILLATOR_CIRCULAR else p["mu"]
        e = p["e"] if kind is BumpKind.KEPLER_ECCENTRIC else 0.0
        locus = antigravity_bump(kind, strength, p["lam"], e)
        data = locus.to_dict()
        theta, radius = data.pop("theta", None), data.pop("radius", None)
        report.add("bump", [data])
        if theta is not None and radius is not None:
            report.add(
                "curve",
                [{"theta": a, "radius": r} for a, r in zip(theta, radius, strict=True)],
            )
    else:
        state = KeplerStateParams(mu=p["mu"], lam=p["lam"], e=p["e"])
        check = pauli_identity_check(state, p["point"])
        report.add(
            "identities",
            [{"identity": k, "residual": v} for k, v in check.residuals.items()],
        )
        report.add("skipped", [{"identity": name} for name in check.skipped])
    return report


def density(config: RunConfig) -> Report:
    """Radial transition density with its mode and Bohr-limit orbit."""
    p = config.params
    _require(0.0 < p["y_min"] < p["y_max"], "need 0 < y_min < y_max")
    _require(p["samples"] >= 2, "samples must be at least 2")  # noqa: PLR2004
    epsilon2 = p["epsilon2"] if p["epsilon2"] is not None else 1.0 / p["n"]
    params = RadialDensityParams(n=p["n"], epsilon2=epsilon2, omega=p["omega"])
    x, t = p["x"], p["t"]
    report = Report(config.subcommand)
    report.add(
        "summary",
        [
            {
                "n": params.n,
                "epsilon2": params.epsilon2,
                "omega": params.omega,
                "classical_radius": params.classical_radius,
                "semiclassical_radius": semiclassical_radius(params, x, t),
                "mode": density_mode(params, x, t),
            }
        ],
    )
    report.add(
        "density",
        [
            {
                "y": float(y),
                "density": transition_density(params, x, 0.0, float(y), t),
                "log_density": log_transition_density(params, x, 0.0, float(y), t),
                "stationary": stationary_density(params, float(y)),
            }
            for y in np.linspace(p["y_min"], p["y_max"], p["samples"])
        ],
    )
    return report


EXPERIMENTS: dict[str, Callable[[RunConfig], Report]] = {
    "constants-check": constants_check,
    "modal": modal,
    "spectrum": spectrum,
    "eccentric": eccentric,
    "isosceles-orbit": isosceles_orbit,
    "hildan": hildan,
    "general-orbit": general,
    "kepler4": kepler4,
    "wimp-flow": wimp_flow,
    "wimp-curvature": wimp_curvature,
    "density": density,
    "tables": tables,
}
