"""Application constants."""

import numpy as np

TOOL_VERSION = "1.0.0"

MACHINE_EPS = float(np.finfo(float).eps)

# Condition (F) validation
DEFAULT_VALIDATION_SAMPLES = 2000
RIGHT_SAMPLE_WIDTH = 0.5        # Delta: f < 0 checked on (1, 1 + Delta]
K_SAMPLE_RIGHT_END = 10.0       # K = -inf f' sampled on (1, 10]
THETA_EDGE_OFFSET = 1e-9        # delta in [alpha + delta, 1 - delta]

# Quadrature
QUAD_EPSABS = 1e-13
QUAD_EPSREL = 1e-12
QUAD_LIMIT = 200
A_INTEGRAND_EPS = 1e-8          # integrand of A evaluated on (eps, theta]
RICHARDSON_STEP = 1e-3
GAUSS_ORDER = 16

# Root scans
ROOT_SCAN_POINTS = 10_000
ROOT_XTOL = 1e-14
ROOT_MERGE_TOL = 1e-9

# Steady profiles
MAX_GROUND_SPACING = 0.01       # in units of 1/lambda
ACTIVE_TAIL_GAP = 1e-6          # active state switches to its exponential tail at 1 - gap

# PDE solver
CLIP_TOL = 10.0 * MACHINE_EPS     # relative to max(1, ||u0||)
BLOWUP_FACTOR = 10.0
GROWTH_MARGIN_LAMBDA = 20.0     # growth margin = 20 / lambda
SIGN_FLAT_TOL = 1e-13
DECAY_NOISE_FLOOR = 1e-13

# Threshold search
BRACKET_CAP = 2.0 ** 30
UNDECIDED_RETRY_FACTOR = 4.0
BUMP_LEVELS = 9                 # m-grid size in (theta, 1) for spreading certificates
VANISHING_CONFIRM_TIME = 10.0
CLASSIFY_INTERVAL = 0.5         # time between certificate checks during a run
DEFAULT_TOL_REL = 1e-10
DEFAULT_MAX_ITER = 60

# Transition dynamics
BAND_LOW_FRACTION = 0.1         # umax in (alpha + 0.1(theta-alpha), theta + 0.1(1-theta))
BAND_HIGH_FRACTION = 0.1
LOG_SLOPE_TOLERANCE = 0.15

# CLI exit codes
EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3

# Output formats
FLOAT_FORMAT = ".17g"
PROFILE_CSV_HEADER = ["z", "v", "vprime"]
SNAPSHOT_CSV_HEADER = ["x", "u"]
RUN_LOG_CSV_HEADER = ["t", "umax", "argmax", "energy", "signchanges", "domain_len"]
TRAJECTORY_CSV_HEADER = ["t", "xi", "umax"]
REDUCED_ODE_CSV_HEADER = ["t", "y", "y_closed"]
CURVE_CSV_HEADER = ["b", "sigma_lo", "sigma_hi", "sigma_mid", "width", "iterations", "status"]
