# --------------------------------------------------------
# Licensed under The MIT License
# --------------------------------------------------------

import sys
import time
from typing import Optional, TextIO

text_colors = {
    "logs": "\033[34m",  # 033 is the escape code and 34 is the color code
    "info": "\033[32m",
    "warning": "\033[33m",
    "debug": "\033[93m",
    "error": "\033[31m",
    "bold": "\033[1m",
    "end_color": "\033[0m",
    "light_red": "\033[36m",
}


def get_curr_time_stamp() -> str:
    return time.strftime("%Y-%m-%d %H:%M:%S")


def _tag(name: str, color: str) -> str:
    return text_colors[color] + text_colors["bold"] + name + text_colors["end_color"]


def _emit(
    tag: str, message: str, end: str = "\n", stream: Optional[TextIO] = None
) -> None:
    stream = sys.stdout if stream is None else stream
    print(
        "{} - {} - {}".format(get_curr_time_stamp(), tag, message),
        end=end,
        file=stream,
        flush=True,
    )


def error(message: str, exit_code: int = 3) -> None:
    """Print the message and terminate with ``exit_code``.

    Only entry points call this. Library code raises exceptions from
    :mod:`utils.exceptions` so that callers (and tests) can handle them.
    """
    _emit(_tag("ERROR  ", "error"), "{}. Exiting!!!".format(message), stream=sys.stderr)
    sys.exit(exit_code)


def color_text(in_text: str) -> str:
    return text_colors["light_red"] + in_text + text_colors["end_color"]


def log(message: str, end="\n") -> None:
    _emit(_tag("LOGS   ", "logs"), message, end=end)


def warning(message: str) -> None:
    _emit(_tag("WARNING", "warning"), message, stream=sys.stderr)


def info(message: str, print_line: Optional[bool] = False) -> None:
    _emit(_tag("INFO   ", "info"), message)
    if print_line:
        double_dash_line(dashes=150)


def debug(message: str) -> None:
    _emit(_tag("DEBUG  ", "debug"), message)


def double_dash_line(dashes: Optional[int] = 75) -> None:
    print(text_colors["error"] + "=" * dashes + text_colors["end_color"])

