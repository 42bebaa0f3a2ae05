"""Constants for the trojan_lab mechanics core."""

import math
import os
from logging import Logger, getLogger

DEBUG = os.environ.get("DEBUG", "false").lower() == "true"
LOGGER: Logger = getLogger(__package__)

# Integrator defaults
DEFAULT_REL_TOL = 1e-10
DEFAULT_ABS_TOL = 1e-12
DEFAULT_METHOD = "DOP853"

# Weierstrass evaluation
POLE_RADIUS = 1e-12
LAURENT_TERMS = 40
LAURENT_RADIUS = 1.0
DEGENERATE_DISCRIMINANT = 1e-12

# Hermite ratio recurrence
HERMITE_ZERO = 1e-14

# Singularity and degeneracy thresholds
COLLISION_RADIUS = 1e-9
DEGENERATE_MODES = 1e-9
RESONANCE_THRESHOLD = 1e-9
STABILITY_BOUNDARY = 1.0 / 27.0

# Closed-orbit rational test
APSIDAL_MAX_DENOMINATOR = 64
APSIDAL_TOLERANCE = 1e-6

# Eccentric expansion validity
ECCENTRICITY_VALIDITY = 0.2

# Semi-classical fields
BRANCH_CUT_TOLERANCE = 1e-10
FIELD_STEP = 1e-6
FRENET_STEP = 1e-2
ZERO_GRADIENT = 1e-12
IDENTITY_DENOMINATOR = 1e-10
MONOTONE_SLACK = 1e-10
SECOND_LAW_CHECKS = 64
BUMP_SAMPLES = 64

# Fixtures
DATA_DIR_ENV = "TROJAN_LAB_DATA_DIR"
REFERENCE_DIGIT_SLACK = 1e-9

# Units
AU_KM = 1.495978707e8
SOLAR_MASS_KG = 1.989e30

SQRT3 = math.sqrt(3.0)
TWO_PI = 2.0 * math.pi
