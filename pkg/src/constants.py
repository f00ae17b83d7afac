"""
banditboost constants - Centralized default values
"""

# ============================================================================
# LABEL SPACE / SAMPLING
# ============================================================================

# Smallest label index (labels are 1..k in every public interface)
FIRST_LABEL = 1

# Minimum number of classes
MIN_CLASSES = 2

# Tolerance for "probabilities sum to one"
PROB_SUM_TOL = 1e-12

# ============================================================================
# COST VECTORS
# ============================================================================

# Entrywise clipping of estimated cost vectors to [-b, b]
DEFAULT_CLIP_BOUND = 100.0

# Importance-weight multiplier for the weak-learner reduction
DEFAULT_WEIGHT_SCALE = 1.0

# ============================================================================
# POTENTIALS
# ============================================================================

# Maximum number of leaves the exact potential may enumerate
DEFAULT_ENUMERATION_BUDGET = 10 ** 6

# Monte Carlo rollouts per cost-matrix entry when exact evaluation is refused
DEFAULT_MC_SAMPLES = 10_000

# Tie-breaking rule for argmax in the potential base case
TIE_BREAK_LOWEST = "lowest"
TIE_BREAK_UNIFORM = "uniform"

# ============================================================================
# BOOSTERS
# ============================================================================

# Number of weak learners
DEFAULT_N_LEARNERS = 10

# Exploration rate
DEFAULT_RHO = 0.1

# Edge assumed by the BBM potentials
DEFAULT_GAMMA = 0.1

# Feasible set for Ada learner weights
ALPHA_MIN = -2.0
ALPHA_MAX = 2.0

# Initial learner weights
BBM_INITIAL_ALPHA = 1.0
ADA_INITIAL_ALPHA = 0.0

# ============================================================================
# WEAK LEARNERS
# ============================================================================

# Hoeffding tree
HT_SPLIT_CONFIDENCE = 1e-7
HT_GRACE_PERIOD = 200
HT_TIE_THRESHOLD = 0.05
HT_N_SPLIT_POINTS = 10
HT_MAX_DEPTH = 20
# Leaf predictor: majority class (mc), naive Bayes (nb) or adaptive (nba)
HT_LEAF_PREDICTION = "nba"

# Naive Bayes: variance floor
VAR_SMOOTHING = 1e-9

# ============================================================================
# HARNESS
# ============================================================================

# Asymptotic accuracy counts only the last 20% of rounds
ASYMPTOTIC_FRACTION = 0.2

# Learning-curve window = 20% of total rounds
WINDOW_FRACTION = 0.2

# Minimum stream length for a learning curve
MIN_CURVE_ROUNDS = 5

# Seeds used when a config declares none
DEFAULT_SEEDS = tuple(range(20))

# Report schema
REPORT_SCHEMA_VERSION = "1.0"

# ============================================================================
# CLI
# ============================================================================

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG_ERROR = 2
EXIT_DATA_ERROR = 3

THREADS_ENV_VAR = "BANDITBOOST_THREADS"
LOG_LEVEL_ENV_VAR = "BANDITBOOST_LOG_LEVEL"
