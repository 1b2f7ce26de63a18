# --------------------------------------------------------
# Licensed under The MIT License
# --------------------------------------------------------

SUPPORTED_STATS = ["objective", "rate_bps", "qoe_loss", "delivered_s", "stalls"]


from .run_metrics import RunMetrics, UserMetrics
from .stats import Statistics
