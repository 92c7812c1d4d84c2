import os

LOG_LEVEL = os.environ.get("CVRP_LOG_LEVEL", "WARNING")

DEFAULT_P = 0.30
P_RANGE = (0.05, 0.40)
DEFAULT_MCS_SIMULATIONS = 1000
DEFAULT_NNI_ROLLOUTS = 100
DEFAULT_REPETITIONS = 20

# rank weights below this are lifted to it before normalizing
RANK_WEIGHT_FLOOR = 1e-3
SAMPLING_RESOLUTION = 10**6

MAX_PASSES_FACTOR = 10
PENALTY_FACTOR = 2
MEAN_TIE_TOLERANCE = 1e-9

ORACLE_LIMIT_N = 10

SUBSTREAM_GOLDEN = 0x9E3779B97F4A7C15
U64_MASK = (1 << 64) - 1
