# --------------------------------------------------------
# Licensed under The MIT License
# --------------------------------------------------------

from .replay import check_summary, read_trace, replay_trace
from .reporting import emit_csv, make_table, parse_csv
from .simulation import TRACE_FILE, Simulator, format_value, run
from .sweep import SweepSpec, sweep
