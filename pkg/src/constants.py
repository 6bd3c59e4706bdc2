"""
Constants and default limits for logmonoid.
Bounds are element counts unless otherwise noted.
"""

# Enumeration Bounds
DEFAULT_ENUMERATION_BOUND = 4096  # max group order for subgroup / cover enumeration
MEMBERSHIP_NODE_BUDGET = 200000  # search states visited by one membership decision
HILBERT_CANDIDATE_LIMIT = 20000  # parallelotope points collected before giving up
DEFAULT_WORD_LENGTH = 6  # word length for congruence enumeration

# Abhyankar Classification Limits
ABHYANKAR_MAX_RANK = 4  # r <= 4
ABHYANKAR_MAX_DIVISOR = 6  # every d_i <= 6

# Nearby Cycles
DEFAULT_R_MAX = 64  # stabilization limit for the J_r tower
SHAPIRO_CHECK_DEPTH = 3  # r = 1..3 for the K_m cross-check

# Cech Slices
DEFAULT_CECH_DEPTH = 3  # s
DEFAULT_CECH_DEGREE = 3  # D, measured in units of P

# Command Line
DEFAULT_SEED = 7
REPORT_INDENT = 2
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
COLOR_LOG_FORMAT = "%(log_color)s" + LOG_FORMAT

# Exit Codes
EXIT_OK = 0
EXIT_INPUT = 1  # usage or input error
EXIT_BOUND = 2  # computational bound exceeded
EXIT_VERIFICATION = 3  # certificate or cross-check failed
