#!/usr/bin/env python3
# src/constants.py
"""
Application-wide constants
"""

import math

from scipy import constants as scipy_constants

# ==============================================
# Physical Constants
# ==============================================
SI_HBAR = scipy_constants.hbar          # J s
SI_SPEED_OF_LIGHT = scipy_constants.c   # m / s
SI_BOLTZMANN = scipy_constants.k        # J / K

# Natural units: hbar = c = k_B = 1, time measured in seconds
NATURAL_HBAR = 1.0
NATURAL_SPEED_OF_LIGHT = 1.0
NATURAL_BOLTZMANN = 1.0

UNITS_NATURAL = "natural"
UNITS_SI = "si"
VALID_UNITS = [UNITS_NATURAL, UNITS_SI]
DEFAULT_UNITS = UNITS_NATURAL

# Dimension exponents (energy, length, time, temperature) of reported quantities
DIMENSION_EM_CORRELATION = (1, -3, 0, 0)
DIMENSION_SCALAR_CORRELATION = (1, -1, 0, 0)
DIMENSION_ENERGY_DENSITY = (1, -3, 0, 0)
DIMENSION_TEMPERATURE = (0, 0, 0, 1)
DIMENSION_FREQUENCY = (0, 0, -1, 0)
DIMENSION_DIMENSIONLESS = (0, 0, 0, 0)

# ==============================================
# Frames & Field Components
# ==============================================
FRAME_LAB = "lab"
FRAME_LAMBDA = "lambda"
FRAME_MU = "mu"
VALID_FRAMES = [FRAME_LAB, FRAME_LAMBDA, FRAME_MU]

FIELD_ELECTRIC = "E"
FIELD_MAGNETIC = "H"
VALID_FIELDS = [FIELD_ELECTRIC, FIELD_MAGNETIC]
VALID_FIELD_INDICES = [1, 2, 3]

# Monomials in the unit wave vector components
MONOMIAL_ONE = "1"
MONOMIAL_KY = "ky"
MONOMIAL_KX2 = "kx2"
MONOMIAL_KY2 = "ky2"
MONOMIAL_KZ2 = "kz2"
MONOMIAL_KY_KZ2 = "ky_kz2"
MONOMIAL_KX2_KZ2 = "kx2_kz2"
MONOMIAL_KY2_KZ2 = "ky2_kz2"
VALID_MONOMIALS = [
    MONOMIAL_ONE, MONOMIAL_KY, MONOMIAL_KX2, MONOMIAL_KY2, MONOMIAL_KZ2,
    MONOMIAL_KY_KZ2, MONOMIAL_KX2_KZ2, MONOMIAL_KY2_KZ2,
]

METHOD_CLOSED_FORM = "closed_form"
METHOD_QUADRATURE = "quadrature"
METHOD_MONTE_CARLO = "monte_carlo"
VALID_METHODS = [METHOD_CLOSED_FORM, METHOD_QUADRATURE, METHOD_MONTE_CARLO]

# ==============================================
# Numerical Tolerances
# ==============================================
DEFAULT_QUAD_EPSABS = 1e-13
DEFAULT_QUAD_EPSREL = 1e-10
DEFAULT_QUAD_LIMIT = 200
DEFAULT_PSI_NODES = 16            # periodic trapezoid nodes around the phase axis
QUAD_ROUNDOFF_FACTOR = 100.0      # roundoff floor, in machine epsilons of int |f|
ORACLE_DIRECTION_EPSREL = 1e-8    # outer direction integral of the regulated oracle
NEAR_SINGULAR_B = 0.95            # |b| above this gets a precision warning
THERMAL_SERIES_RADIUS = 0.5       # |F| below this uses the Bernoulli series
THERMAL_SERIES_TERMS = 12

# ==============================================
# Regulators & Extrapolation
# ==============================================
DEFAULT_EPSILON_FACTORS = (0.1, 0.05, 0.025)
DEFAULT_ETA_FACTORS = tuple(0.4 * 0.8 ** i for i in range(12))
DEFAULT_DAMPED_ETA_VALUES = (0.4, 0.3, 0.2, 0.15, 0.1, 0.075)
DEFAULT_EXTRAPOLATION_ORDER = 2
DAMPED_SERIES_CUTOFF = 60.0       # terms kept while eta * n < cutoff
REGULATED_K_CUTOFF = 60.0         # u = eps k integration stops at the cutoff
DEFAULT_PLANCK_EPSILON = 0.05

# ==============================================
# Monte-Carlo
# ==============================================
DEFAULT_SEED = 20240611
DEFAULT_MC_N_MAX = 64
DEFAULT_MC_N_THETA = 8
DEFAULT_MC_N_PHI = 16
DEFAULT_MC_ENSEMBLES = 10000
DEFAULT_MC_CHUNK_SIZE = 250
DEFAULT_PHASE_CHECK_MODES = 2
MC_SIGMA_BOUND = 3.0

# ==============================================
# Normalization Conventions
# ==============================================
CONVENTION_LITERAL = "literal"
CONVENTION_RIEMANN = "riemann"
VALID_CONVENTIONS = [CONVENTION_LITERAL, CONVENTION_RIEMANN]
DEFAULT_DISCRETE_EM_CONVENTION = CONVENTION_LITERAL
DEFAULT_SCALAR_PHASE_CONVENTION = CONVENTION_LITERAL

# ==============================================
# Bogolubov Oracle
# ==============================================
DEFAULT_GAUSSIAN_SIGMA = 4.0
DEFAULT_GAUSSIAN_GRID = 2001

# ==============================================
# Verification
# ==============================================
SUITE_ALL = "all"
VALID_SUITES = [
    SUITE_ALL, "kinematics", "angular", "em", "scalar", "spectral",
    "bogolubov", "monte_carlo",
]
PROFILE_DEFAULT = "default"
PROFILE_STRICT = "strict"
PROFILE_QUICK = "quick"
VALID_TOLERANCE_PROFILES = [PROFILE_DEFAULT, PROFILE_STRICT, PROFILE_QUICK]
# Multiplier applied to every acceptance tolerance
TOLERANCE_SCALE = {
    PROFILE_DEFAULT: 1.0,
    PROFILE_STRICT: 0.5,
    PROFILE_QUICK: 10.0,
}
# Fraction of the random-case counts run by each profile
SAMPLE_SCALE = {
    PROFILE_DEFAULT: 1.0,
    PROFILE_STRICT: 1.0,
    PROFILE_QUICK: 0.1,
}

# ==============================================
# Command Line
# ==============================================
CMD_CF_EM = "cf-em"
CMD_CF_SCALAR = "cf-scalar"
CMD_SPECTRUM = "spectrum"
CMD_ENERGY_DENSITY = "energy-density"
CMD_BOGOLUBOV = "bogolubov"
CMD_FRAMES = "frames"
CMD_VERIFY = "verify"
CMD_MC = "mc"
VALID_COMMANDS = [
    CMD_CF_EM, CMD_CF_SCALAR, CMD_SPECTRUM, CMD_ENERGY_DENSITY,
    CMD_BOGOLUBOV, CMD_FRAMES, CMD_VERIFY, CMD_MC,
]

FORMAT_JSON = "json"
FORMAT_CSV = "csv"
VALID_OUTPUT_FORMATS = [FORMAT_JSON, FORMAT_CSV]
DEFAULT_OUTPUT_FORMAT = FORMAT_JSON
DEFAULT_SPECTRUM_N_MAX = 32

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_DOMAIN_ERROR = 2
EXIT_NUMERIC_ERROR = 3
EXIT_USAGE_ERROR = 64

# ==============================================
# Logging
# ==============================================
APP_LOGGER_NAME = "rotating_zpf"
DEFAULT_LOG_DIR = "logs"
DEFAULT_LOG_FILE = "rotating_zpf.log"
DEFAULT_LOG_BACKUP_COUNT = 15
DEFAULT_LOG_MAX_SIZE_MB = 1
DEFAULT_DEBUG_MODE = False
DEFAULT_LOG_TO_FILE = False

TWO_PI = 2.0 * math.pi
