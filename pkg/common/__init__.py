SUPPORTED_SCHEDULER_MODES = ["qoe_aware", "baseline"]
SUPPORTED_SWEEP_VARIABLES = ["omega", "bandwidth"]
SUPPORTED_TASKS = ["run", "sweep-omega", "sweep-bw", "gen-data", "fit-qoe", "replay"]

# exit codes of main_sim.py
EXIT_OK = 0
EXIT_CONFIG_ERROR = 2
EXIT_RUNTIME_ERROR = 3

DEFAULT_N_USERS = 4
DEFAULT_HORIZON_SLOTS = 600
DEFAULT_SLOT_S = 1.0
DEFAULT_BANDWIDTH_HZ = 10e6
DEFAULT_LOG_FREQ = 100

DEFAULT_CELL_RADIUS_M = 500.0
DEFAULT_MIN_DISTANCE_M = 10.0
DEFAULT_PL0_DB = -30.0
DEFAULT_PL_EXPONENT = 3.5
DEFAULT_NOISE_PSD_DBM_HZ = -174.0
DEFAULT_NOISE_FIGURE_DB = 9.0
DEFAULT_SPEED_MPS = 1.0

DEFAULT_TOTAL_POWER_DBM = 20.0
DEFAULT_MAX_CLUSTER_SIZE = 2
DEFAULT_POWER_GRID_STEP = 0.05
MAX_PARTITION_USERS = 6

# (bitrate_bps, psnr_db) per level, lowest level first
DEFAULT_LADDER = [(0.8e6, 32.0), (1.5e6, 36.0), (3.0e6, 40.0), (6.0e6, 44.0)]
DEFAULT_STARTUP_THRESHOLD_S = 2.0
DEFAULT_VIDEO_LENGTH_S = 3600.0

DEFAULT_OMEGA = 4.0
DEFAULT_DECISION_SPACE_LIMIT = 1000000

DEFAULT_OMEGA_GRID = [0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0]
DEFAULT_BANDWIDTH_GRID_HZ = [2.5e6, 5e6, 10e6, 20e6]
DEFAULT_SWEEP_SEEDS = 30

DEFAULT_CMF_RANK = 3
DEFAULT_CMF_MAX_ITER = 500
DEFAULT_CMF_TOL = 1e-6
DEFAULT_IG_BINS = 10

# session table columns, fixed order
SESSION_COLUMNS = [
    "user_id",
    "service_id",
    "net_cond",
    "hw_class",
    "context",
    "psnr_deficit",
    "stall_rate",
    "qoe",
    "engagement",
]
FACTOR_COLUMNS = ["net_cond", "hw_class", "context", "psnr_deficit", "stall_rate"]
SERVICE_FEATURE_COLUMNS = ["psnr_deficit", "stall_rate"]
USER_FEATURE_COLUMNS = ["net_cond", "hw_class"]

SWEEP_CSV_HEADER = [
    "variable",
    "value",
    "seed",
    "mode",
    "mean_psnr_db",
    "stall_count",
    "join_time_slots",
    "mean_rate_bps",
]
CSV_NA = "NA"

TRACE_COLUMNS = [
    "slot",
    "user_id",
    "gain_lin",
    "backlog_s",
    "buffered_s",
    "joined",
    "cluster",
    "level",
    "rate_bps",
    "delivered_s",
    "success",
    "played",
    "qoe_loss",
    "objective",
]
