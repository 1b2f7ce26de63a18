# --------------------------------------------------------
# Licensed under The MIT License
# --------------------------------------------------------

import argparse

from common import DEFAULT_SLOT_S, DEFAULT_STARTUP_THRESHOLD_S, DEFAULT_VIDEO_LENGTH_S

from .buffer import NOT_JOINED, STALL, ClientBuffer, playback_step
from .ladder import QualityLadder, QualityLevel, parse_ladder
from .quality import QualityReport, quality_metrics
from .queue import (
    ChunkReceipt,
    SourceQueue,
    chunks_for_rate,
    deliverable_s,
    source_arrival,
    transmit,
)


def arguments_video(parser: argparse.ArgumentParser) -> argparse.ArgumentParser:
    group = parser.add_argument_group(
        title="Video arguments", description="Quality ladder, queues and playback"
    )
    group.add_argument(
        "--video.ladder",
        type=str,
        nargs="+",
        default=None,
        help="Quality ladder as bitrate_bps:psnr_db pairs, lowest level first",
    )
    group.add_argument(
        "--video.slot-s",
        type=float,
        default=DEFAULT_SLOT_S,
        help="Slot duration, equal to the chunk duration",
    )
    group.add_argument(
        "--video.startup-threshold-s",
        type=float,
        default=DEFAULT_STARTUP_THRESHOLD_S,
        help="Buffered seconds needed before playback starts",
    )
    group.add_argument(
        "--video.length-s",
        type=float,
        default=DEFAULT_VIDEO_LENGTH_S,
        help="Length of the live feed",
    )
    return parser
