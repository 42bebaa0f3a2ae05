"""Constants for the trojan_lab command line."""

from logging import Logger, getLogger

# Program
DOMAIN = "trojan_lab"
VERSION = "0.1.0"
LOGGER: Logger = getLogger(__package__)

# Configuration keys
CONF_SUBCOMMAND = "subcommand"
CONF_PARAMS = "params"
CONF_FORMAT = "format"
CONF_OUTPUT = "output"
CONF_REL_TOL = "rel_tol"
CONF_ABS_TOL = "abs_tol"
CONF_MAX_STEP = "max_step"
CONF_SEED = "seed"
CONF_STRICT = "strict"

CONF_KEYS = frozenset(
    {
        CONF_SUBCOMMAND,
        CONF_PARAMS,
        CONF_FORMAT,
        CONF_OUTPUT,
        CONF_REL_TOL,
        CONF_ABS_TOL,
        CONF_MAX_STEP,
        CONF_SEED,
        CONF_STRICT,
    }
)

# Subcommands
SUBCOMMANDS = (
    "constants-check",
    "modal",
    "spectrum",
    "eccentric",
    "isosceles-orbit",
    "hildan",
    "general-orbit",
    "kepler4",
    "wimp-flow",
    "wimp-curvature",
    "density",
    "tables",
)

# Exit codes
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERIC = 2
EXIT_VALIDITY = 3

# Delimited output
SIGNIFICANT_DIGITS = 17
COMMENT_PREFIX = "# "

# Defaults
DEFAULT_SEED = 0
DEFAULT_MU_RATIO = 9.5365e-4
LOG_LEVEL = "INFO"
