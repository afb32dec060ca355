# Licensed under the MIT License.
# divgame Copyright (C) 2024 divgame contributors.

"""
constants
"""

# model defaults
"""
The reference market: a duopoly drift of 0.8 that jumps to 1.8 for the survivor,
volatility 0.4 and discount rate 0.8. Every default below is tuned for it.
"""
DEFAULT_MU0 = 0.8
DEFAULT_MU_HAT = 1.8
DEFAULT_SIGMA = 0.4
DEFAULT_R = 0.8

DEFAULT_X0 = 0.2
DEFAULT_Y0 = 0.5

# numerics
ROOT_TOLERANCE = 1e-12
ROOT_MAXIMUM_ITERATIONS = 200
CLAMP_TOLERANCE = 1e-12

ODE_STEPS = 2000
ODE_MINIMUM_STEPS = 100
COEFFICIENT_GRID_POINTS = 2001
BOUNDARY_TABLE_POINTS = 4001

# verification
VERIFY_GRID = 200
VERIFY_MINIMUM_GRID = 50
VERIFY_STEP_DIVISOR = 2000
VERIFY_Z_MARGIN = 1.0

TOLERANCE_PDE = 1e-4
TOLERANCE_GRADIENT = 1e-5
TOLERANCE_SMOOTH_PASTING = 1e-4
TOLERANCE_DIRICHLET = 1e-6
TOLERANCE_REFLECTION = 1e-4

CHECK_PDE_CONTINUATION = "pde_continuation"
CHECK_PDE_STOPPING = "pde_stopping"
CHECK_GRADIENT = "gradient"
CHECK_SMOOTH_PASTING = "smooth_pasting"
CHECK_DIRICHLET = "dirichlet"
CHECK_REFLECTION = "reflection"

# regions
REGION_H_LE = "H_LE"
REGION_H_0_ALPHA = "H_0_ALPHA"
REGION_H_ALPHA_B = "H_ALPHA_B"
REGION_STOP = "STOP"

# players
PLAYER_ONE = 1
PLAYER_TWO = 2
BOTH_PLAYERS = 0

ROLE_LEADER = "leader"
ROLE_FOLLOWER = "follower"

GAME_ASYMMETRIC = "asymmetric"
GAME_SYMMETRIC = "symmetric"

# simulation
DEFAULT_DT = 1e-3
DEFAULT_HORIZON = 30.0
DEFAULT_PATHS = 100000
DEFAULT_SEED = 20240611
DEFAULT_WORKERS = 1
DEFAULT_BUDGET_PATHS = 20000
MINIMUM_HORIZON_STEPS = 10
CHUNK_SIZE = 256

CONFIDENCE = 3.0
ACCEPTANCE_FLOOR = 1e-12

SEED_BITS = 64

# commands
COMMAND_SOLVE = "solve"
COMMAND_BOUNDARY = "boundary"
COMMAND_SURFACE = "surface"
COMMAND_SIMULATE = "simulate"
COMMAND_DEVIATE = "deviate"
COMMAND_VERIFY = "verify"
COMMAND_INDIFF = "indiff"

# output
FORMAT_CSV = "csv"
FORMAT_JSON = "json"
STDOUT_TARGET = "-"
CSV_FLOAT_SPEC = "{:.12g}"
JSON_INDENT = 2

BOUNDARY_ROWS = 1001
BOUNDARY_MARGIN = 0.5
SURFACE_GRID = 101

STOP_RULE_TIME = "time"
STOP_RULE_HIT = "hit"
INDIFFERENCE_HIT_OFFSET = 0.2

# exit codes
EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_BAD_INPUT = 2
EXIT_OUTPUT = 3

# log
LOG_FORMAT = "[{time}.{milli}] [{level_name}] {message}"
LOG_MARK = "divgame"
STANDARD = "standard"
FILE = "file"
CHAR_LF = "\n"


__all__ = [x for x in dir() if x[0] != "_"]
