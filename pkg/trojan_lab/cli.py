"""Command line for trojan_lab experiments."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import TYPE_CHECKING, NoReturn

import colorlog
from loguru import logger

from .const import (
    CONF_ABS_TOL,
    CONF_FORMAT,
    CONF_MAX_STEP,
    CONF_OUTPUT,
    CONF_PARAMS,
    CONF_REL_TOL,
    CONF_SEED,
    CONF_STRICT,
    CONF_SUBCOMMAND,
    DOMAIN,
    EXIT_NUMERIC,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VALIDITY,
    LOG_LEVEL,
    SUBCOMMANDS,
    VERSION,
)
from .data import PARAMETERS, RunConfig, load_config_file, merge_config
from .experiments import EXPERIMENTS
from .mechanics.const import DEBUG
from .mechanics.exceptions import (
    ConfigurationError,
    DatasetError,
    InconsistentInitialDataError,
    NumericalError,
    ValidityError,
)
from .mechanics.models.enums import OutputFormat
from .output import emit

if TYPE_CHECKING:
    from collections.abc import Sequence
    from typing import Any

_HANDLER_NAME = f"{DOMAIN}.cli"

_DESCRIPTIONS = {
    "constants-check": "Drift of the hidden constants along linearised flows",
    "modal": "Linearisation, Lagrange points and modal amplitudes",
    "spectrum": "Bohr-Fourier means of a linearised flow",
    "eccentric": "First-order solution for eccentric primaries",
    "isosceles-orbit": "Direct integration of an isosceles orbit",
    "hildan": "Hildan paradigm orbit in Weierstrass form",
    "general-orbit": "Orbit from the elliptic-integral reduction",
    "kepler4": "Keplerian fourth law: predict or reproduce tables",
    "wimp-flow": "Semi-classical flow of an elliptic state",
    "wimp-curvature": "Quantum curvature, torsion, bumps and identities",
    "density": "Radial transition density and its Bohr limit",
    "tables": "Every bundled fourth-law table",
}


class _ArgumentParser(argparse.ArgumentParser):
    """Parser reporting usage errors as ConfigurationError instead of exiting."""

    def error(self, message: str) -> NoReturn:
        raise ConfigurationError(message)


def build_parser() -> argparse.ArgumentParser:
    """Parser for the global options and every subcommand."""
    parser = _ArgumentParser(
        prog=DOMAIN, description="Numerical laboratory for Trojan orbit mechanics."
    )
    parser.add_argument("--config", type=Path, help="JSON run configuration")
    parser.add_argument(
        "--format",
        dest=CONF_FORMAT,
        choices=[fmt.value for fmt in OutputFormat],
        help="Output format (default csv)",
    )
    parser.add_argument("--output", dest=CONF_OUTPUT, help="Output file")
    parser.add_argument("--rel-tol", dest=CONF_REL_TOL, type=float)
    parser.add_argument("--abs-tol", dest=CONF_ABS_TOL, type=float)
    parser.add_argument("--max-step", dest=CONF_MAX_STEP, type=float)
    parser.add_argument("--seed", dest=CONF_SEED, type=int)
    parser.add_argument(
        "--strict",
        dest=CONF_STRICT,
        action="store_true",
        default=None,
        help="Exit with status 3 on validity warnings",
    )
    parser.add_argument(
        "--verbose", "-v", action="store_true", help="Log numeric progress"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")

    commands = parser.add_subparsers(dest=CONF_SUBCOMMAND, metavar="SUBCOMMAND")
    for name in SUBCOMMANDS:
        command = commands.add_parser(
            name, help=_DESCRIPTIONS[name], description=_DESCRIPTIONS[name]
        )
        for param in PARAMETERS[name]:
            text = f"{param.help} [{param.unit}]"
            if param.positional:
                command.add_argument(param.name, nargs="?", default=None, help=text)
            else:
                command.add_argument(
                    param.flag, dest=param.name, default=None, help=text
                )
    return parser


def configure_logging(*, verbose: bool) -> None:
    """
    Send CLI messages to stderr through loguru.

    With verbose, the library logger also gets a coloured stream handler.
    """
    logger.remove()
    level = "DEBUG" if verbose or DEBUG else LOG_LEVEL
    logger.add(sys.stderr, colorize=DEBUG, level=level)

    library = logging.getLogger(DOMAIN)
    for handler in list(library.handlers):
        if handler.get_name() == _HANDLER_NAME:
            library.removeHandler(handler)
    if not verbose:
        library.setLevel(logging.NOTSET)
        return
    handler = colorlog.StreamHandler()
    handler.set_name(_HANDLER_NAME)
    handler.setFormatter(
        colorlog.ColoredFormatter(
            "%(log_color)s%(levelname)-8s%(reset)s %(name)s: %(message)s"
        )
    )
    library.addHandler(handler)
    library.setLevel(logging.DEBUG)


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Merge the config file, if any, with the command-line values."""
    base = load_config_file(args.config) if args.config else {}
    values = vars(args)
    command = values.get(CONF_SUBCOMMAND)
    overrides: dict[str, Any] = {
        key: values.get(key)
        for key in (
            CONF_SUBCOMMAND,
            CONF_FORMAT,
            CONF_OUTPUT,
            CONF_REL_TOL,
            CONF_ABS_TOL,
            CONF_MAX_STEP,
            CONF_SEED,
            CONF_STRICT,
        )
    }
    overrides[CONF_PARAMS] = (
        {param.name: values.get(param.name) for param in PARAMETERS[command]}
        if command
        else {}
    )
    return RunConfig.from_mapping(merge_config(base, overrides))


def run(argv: Sequence[str] | None = None) -> int:
    """
    Run one experiment and emit its tables.

    Returns:
        0 on success, 1 for usage errors, 2 for numeric failures and 3 for
        validity violations.

    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return err.code if isinstance(err.code, int) else EXIT_OK
    except ConfigurationError as err:
        configure_logging(verbose=False)
        logger.error("Usage error: {}", err)
        return EXIT_USAGE

    configure_logging(verbose=args.verbose)
    try:
        config = resolve_config(args)
        logger.debug("Running {} with {}", config.subcommand, dict(config.params))
        report = EXPERIMENTS[config.subcommand](config)
        emit(report, config)
    except (ConfigurationError, InconsistentInitialDataError) as err:
        logger.error("Usage error: {}", err)
        return EXIT_USAGE
    except ValidityError as err:
        logger.error("Validity violation: {}", err)
        return EXIT_VALIDITY
    except (NumericalError, DatasetError) as err:
        logger.error("Numeric failure ({}): {}", type(err).__name__, err)
        return EXIT_NUMERIC
    except (ArithmeticError, ValueError, RuntimeError) as err:
        # raised from inside numpy or scipy rather than by the library checks
        logger.error("Numeric failure ({}): {}", type(err).__name__, err)
        return EXIT_NUMERIC

    for violation in report.violations:
        logger.warning("{}", violation)
    if report.violations and config.strict:
        return EXIT_VALIDITY
    return EXIT_OK


def main() -> None:
    """Console entry point."""
    sys.exit(run())


if __name__ == "__main__":
    main()
