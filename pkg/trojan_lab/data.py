"""Run configuration for trojan_lab experiments."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from types import MappingProxyType
from typing import TYPE_CHECKING, Any

from .const import (
    CONF_ABS_TOL,
    CONF_FORMAT,
    CONF_KEYS,
    CONF_MAX_STEP,
    CONF_OUTPUT,
    CONF_PARAMS,
    CONF_REL_TOL,
    CONF_SEED,
    CONF_STRICT,
    CONF_SUBCOMMAND,
    DEFAULT_MU_RATIO,
    DEFAULT_SEED,
    SUBCOMMANDS,
)
from .mechanics.const import DEFAULT_ABS_TOL, DEFAULT_REL_TOL
from .mechanics.exceptions import ConfigurationError
from .mechanics.models.enums import OutputFormat
from .mechanics.models.numerics import IntegratorConfig

if TYPE_CHECKING:
    from collections.abc import Callable, Mapping


def vector(size: int | None = None) -> Callable[[Any], tuple[float, ...]]:
    """Converter for comma separated numbers or a JSON list."""

    def convert(value: Any) -> tuple[float, ...]:
        items = value.split(",") if isinstance(value, str) else list(value)
        result = tuple(float(item) for item in items)
        if size is not None and len(result) != size:
            msg = f"expected {size} components, got {len(result)}"
            raise ValueError(msg)
        return result

    return convert


def choice(*values: str) -> Callable[[Any], str]:
    """Converter accepting one of a fixed set of names."""

    def convert(value: Any) -> str:
        text = str(value).strip()
        if text not in values:
            msg = f"expected one of {', '.join(values)}"
            raise ValueError(msg)
        return text

    return convert


def flag(value: Any) -> bool:
    """Converter for booleans given as JSON values or words."""
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in {"true", "yes", "1"}:
        return True
    if text in {"false", "no", "0"}:
        return False
    msg = f"expected a boolean, got {value!r}"
    raise ValueError(msg)


@dataclass(frozen=True)
class ParamSpec:
    """
    A subcommand parameter with its unit tag.

    Attributes:
        name (str): Key in the parameter map; the flag is --name with dashes.
        kind (Callable): Converter applied to flag and file values.
        default (Any): Value when neither source gives one.
        unit (str): Unit tag written to the metadata header.
        help (str): One-line description.
        positional (bool): Taken as an optional positional argument.

    """

    name: str
    kind: Callable[[Any], Any]
    default: Any
    unit: str
    help: str = ""
    positional: bool = False

    @property
    def flag(self) -> str:
        """The command-line flag."""
        return "--" + self.name.replace("_", "-")

    def convert(self, value: Any) -> Any:
        """Convert a raw value, keeping None."""
        if value is None:
            return None
        try:
            return self.kind(value)
        except (TypeError, ValueError) as err:
            msg = f"Parameter {self.name}: cannot read {value!r} ({err})"
            raise ConfigurationError(msg) from err


_STATE = vector(4)
_PLANE = vector(2)

_MU_RATIO = ParamSpec(
    "mu_ratio", float, DEFAULT_MU_RATIO, "1", "Mass ratio mu2 / mu1"
)
_A0 = ParamSpec("a0", float, 1.0, "length", "Separation of the primaries")
_ORIENTATION = ParamSpec(
    "orientation", choice("L4", "L5"), "L4", "-", "Equilibrium to linearise about"
)
_LINEAR_STATE = ParamSpec(
    "state",
    _STATE,
    (0.01, 0.0, 0.0, 0.001),
    "a0, a0, a0 omega, a0 omega",
    "Rotated-frame state X,Y,Xdot,Ydot",
)
_SAMPLES = ParamSpec("samples", int, 201, "1", "Number of output samples")

_WIMP_STATE = (
    ParamSpec(
        "state",
        choice("kepler", "oscillator", "magnetic", "sigma"),
        "kepler",
        "-",
        "Semi-classical state",
    ),
    ParamSpec("mu", float, 1.0, "length^3 / time^2", "Gravitational strength"),
    ParamSpec("lam", float, 1.0, "length^2 / time", "Angular momentum scale"),
    ParamSpec("e", float, 0.5, "1", "Eccentricity of the limit ellipse"),
    ParamSpec("omega", float, 1.0, "1 / time", "Oscillator frequency"),
    ParamSpec("variant", choice("log", "printed"), "log", "-", "Oscillator action"),
    ParamSpec("b", float, 1.0, "1 / time", "Magnetic field strength"),
    ParamSpec("radius", float, 1.0, "length", "Limit radius of the magnetic state"),
    ParamSpec("sigma2", float, 0.3, "length^2 / time", "Viscosity sigma^2"),
)

PARAMETERS: Mapping[str, tuple[ParamSpec, ...]] = MappingProxyType(
    {
        "constants-check": (
            _MU_RATIO,
            _ORIENTATION,
            ParamSpec("periods", float, 50.0, "slow period", "Length of each run"),
            ParamSpec("states", int, 10, "1", "Number of random initial states"),
            ParamSpec("amplitude", float, 0.01, "a0", "Scale of the random states"),
            ParamSpec("samples", int, 65, "1", "Checkpoints along each run"),
        ),
        "modal": (_MU_RATIO, _A0, _ORIENTATION, _LINEAR_STATE),
        "spectrum": (
            _MU_RATIO,
            _ORIENTATION,
            _LINEAR_STATE,
            ParamSpec("periods", float, 100.0, "slow period", "Sampled duration"),
            ParamSpec("resolution", int, 16, "1", "Samples per fast period"),
            ParamSpec("window", choice("hann", "none"), "hann", "-", "Taper"),
        ),
        "eccentric": (
            _MU_RATIO,
            _ORIENTATION,
            _LINEAR_STATE,
            ParamSpec("e", float, 0.01, "1", "Eccentricity of the primaries"),
            ParamSpec("periods", float, 20.0, "primary period", "Residual window"),
            ParamSpec("samples", int, 401, "1", "Residual checkpoints"),
        ),
        "isosceles-orbit": (
            ParamSpec("mu_ratio", float, 1e-3, "1", "Mass ratio mu2 / mu1"),
            _A0,
            ParamSpec("rho", float, 1.2, "length", "Initial distance from O"),
            ParamSpec("rhodot", float, 0.0, "length / time", "Initial radial speed"),
            ParamSpec("phi", float, 0.0, "rad", "Initial polar angle"),
            ParamSpec("L", float, 1.0, "length^2 / time", "Angular momentum"),
            ParamSpec("e_primary", float, 0.0, "1", "Eccentricity of the primaries"),
            ParamSpec("revolutions", float, 2.0, "1", "Polar turns to sample"),
            ParamSpec("samples", int, 401, "1", "Number of output samples"),
        ),
        "hildan": (
            ParamSpec("mu_ratio", float, 1e-5, "1", "Mass ratio mu2 / mu1"),
            _A0,
            ParamSpec("revolutions", float, 1.0, "1", "Polar turns to sample"),
            _SAMPLES,
        ),
        "general-orbit": (
            ParamSpec("mu_ratio", float, 1e-3, "1", "Mass ratio mu2 / mu1"),
            _A0,
            ParamSpec("rho_min", float, 0.8, "length", "Pericentre distance"),
            ParamSpec("rho_max", float, 1.3, "length", "Apocentre distance"),
            _SAMPLES,
        ),
        "kepler4": (
            ParamSpec(
                "action",
                choice("predict", "tables"),
                "tables",
                "-",
                "predict or tables",
                positional=True,
            ),
            ParamSpec("system", str, "sun-jupiter", "-", "Primary pair"),
            ParamSpec("T3", float, None, "day", "Period of the third body"),
            ParamSpec("rho", float, None, "pair unit", "Orbit radius to invert"),
            ParamSpec("fixture", str, "all", "-", "Table fixture, or all"),
        ),
        "wimp-flow": (
            *_WIMP_STATE,
            ParamSpec("start", _PLANE, (2.0, 0.5), "length", "Initial point x,y"),
            ParamSpec("t_end", float, 40.0, "time", "Length of the flow"),
            _SAMPLES,
        ),
        "wimp-curvature": (
            ParamSpec(
                "mode",
                choice("planar", "space", "bump", "pauli"),
                "planar",
                "-",
                "Quantity to evaluate",
            ),
            *_WIMP_STATE,
            ParamSpec("start", _PLANE, (2.0, 0.5), "length", "Initial point x,y"),
            ParamSpec("t_end", float, 10.0, "time", "Length of the flow"),
            ParamSpec("point", vector(3), (0.8, 0.3, 0.4), "length", "Point x,y,z"),
            ParamSpec("a", float, 1.0, "length", "Orbit radius lambda^2 / mu"),
            ParamSpec(
                "kind",
                choice("kepler-circular", "oscillator-circular", "kepler-eccentric"),
                "kepler-circular",
                "-",
                "Effective potential with a bump",
            ),
            _SAMPLES,
        ),
        "density": (
            ParamSpec("n", int, 400, "1", "Quantum number"),
            ParamSpec("epsilon2", float, None, "length^2 / time", "Default 1 / n"),
            ParamSpec("omega", float, 1.0, "1 / time", "Oscillator frequency"),
            ParamSpec("x", float, 1.5, "length", "Starting radius"),
            ParamSpec("t", float, 0.5, "time", "Elapsed time"),
            ParamSpec("y_min", float, 0.05, "length", "Smallest radius"),
            ParamSpec("y_max", float, 3.0, "length", "Largest radius"),
            _SAMPLES,
        ),
        "tables": (
            ParamSpec("directory", str, None, "-", "Fixture directory override"),
        ),
    }
)


@dataclass(frozen=True)
class RunConfig:
    """
    A resolved experiment: subcommand, parameters and output settings.

    Attributes:
        subcommand (str): One of SUBCOMMANDS.
        params (Mapping[str, Any]): Read-only parameter values.
        units (Mapping[str, str]): Unit tag of every parameter.
        output_format (OutputFormat): Delimited text or structured records.
        output (Path | None): Destination file, standard output when None.
        rel_tol (float): Integrator relative tolerance.
        abs_tol (float): Integrator absolute tolerance.
        max_step (float): Largest integrator step.
        seed (int): Seed of randomised sweeps.
        strict (bool): Turn validity warnings into failures.

    """

    subcommand: str
    params: Mapping[str, Any]
    units: Mapping[str, str]
    output_format: OutputFormat = OutputFormat.CSV
    output: Path | None = None
    rel_tol: float = DEFAULT_REL_TOL
    abs_tol: float = DEFAULT_ABS_TOL
    max_step: float = math.inf
    seed: int = DEFAULT_SEED
    strict: bool = False

    @classmethod
    def from_mapping(cls, config: Mapping[str, Any]) -> RunConfig:
        """
        Validate a configuration mapping.

        Raises:
            ConfigurationError: For unknown keys or subcommands and values
                that cannot be converted.

        """
        unknown = sorted(set(config) - CONF_KEYS)
        if unknown:
            msg = f"Unknown configuration keys: {', '.join(unknown)}"
            raise ConfigurationError(msg)
        subcommand = config.get(CONF_SUBCOMMAND)
        if subcommand not in SUBCOMMANDS:
            msg = f"Unknown or missing subcommand {subcommand!r}"
            raise ConfigurationError(msg)

        specs = PARAMETERS[subcommand]
        given = dict(config.get(CONF_PARAMS) or {})
        names = {param.name for param in specs}
        extra = sorted(set(given) - names)
        if extra:
            msg = f"Unknown parameters for {subcommand}: {', '.join(extra)}"
            raise ConfigurationError(msg)
        params = {
            param.name: param.convert(given.get(param.name, param.default))
            for param in specs
        }

        fmt = OutputFormat.from_str(config.get(CONF_FORMAT) or OutputFormat.CSV.value)
        if fmt is None:
            msg = f"Unknown output format {config.get(CONF_FORMAT)!r}"
            raise ConfigurationError(msg)
        output = config.get(CONF_OUTPUT)
        try:
            resolved = cls(
                subcommand=subcommand,
                params=MappingProxyType(params),
                units=MappingProxyType({param.name: param.unit for param in specs}),
                output_format=fmt,
                output=Path(output) if output else None,
                rel_tol=float(config.get(CONF_REL_TOL, DEFAULT_REL_TOL)),
                abs_tol=float(config.get(CONF_ABS_TOL, DEFAULT_ABS_TOL)),
                max_step=float(config.get(CONF_MAX_STEP, math.inf)),
                seed=int(config.get(CONF_SEED, DEFAULT_SEED)),
                strict=flag(config.get(CONF_STRICT, False)),
            )
        except (TypeError, ValueError) as err:
            msg = f"Invalid run setting: {err}"
            raise ConfigurationError(msg) from err
        resolved.integrator()
        return resolved

    def integrator(self) -> IntegratorConfig:
        """Integrator settings; raises ConfigurationError when invalid."""
        return IntegratorConfig(
            rel_tol=self.rel_tol, abs_tol=self.abs_tol, max_step=self.max_step
        )

    def to_dict(self) -> dict[str, Any]:
        """Return the settings that determine the emitted numbers."""
        return {
            CONF_SUBCOMMAND: self.subcommand,
            CONF_PARAMS: dict(self.params),
            "units": dict(self.units),
            "tolerances": self.integrator().to_dict(),
            CONF_SEED: self.seed,
        }


def load_config_file(path: str | Path) -> dict[str, Any]:
    """
    Read a JSON run configuration.

    Raises:
        ConfigurationError: If the file is missing, unparsable or not an object.

    """
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as err:
        msg = f"Cannot read config file {path}: {err.strerror}"
        raise ConfigurationError(msg) from err
    except json.JSONDecodeError as err:
        msg = f"{path.name}: {err.msg} at line {err.lineno}"
        raise ConfigurationError(msg) from err
    if not isinstance(data, dict):
        msg = f"{path.name}: expected a JSON object"
        raise ConfigurationError(msg)
    return data


def merge_config(
    base: Mapping[str, Any], overrides: Mapping[str, Any]
) -> dict[str, Any]:
    """
    Overlay command-line values on a file configuration.

    None in overrides means "not given". Parameters merge key by key; a
    different subcommand on the command line discards the file's parameters.
    """
    merged = dict(base)
    params = dict(base.get(CONF_PARAMS) or {})
    command = overrides.get(CONF_SUBCOMMAND)
    if command is not None and command != base.get(CONF_SUBCOMMAND):
        params = {}
    for key, value in overrides.items():
        if key == CONF_PARAMS:
            params.update({k: v for k, v in value.items() if v is not None})
        elif value is not None:
            merged[key] = value
    merged[CONF_PARAMS] = params
    return merged
