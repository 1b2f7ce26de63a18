# --------------------------------------------------------
# Licensed under The MIT License
# --------------------------------------------------------

from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple, Union

from common import DEFAULT_LADDER
from utils.exceptions import ConfigError


@dataclass(frozen=True)
class QualityLevel:
    level_id: int
    bitrate_bps: float
    psnr_db: float


class QualityLadder(object):
    """Encoding ladder; level ids run from 1 (lowest) to L (highest)."""

    def __init__(self, pairs: Sequence[Tuple[float, float]]) -> None:
        super(QualityLadder, self).__init__()
        if len(pairs) == 0:
            raise ConfigError("Quality ladder cannot be empty")
        levels = [
            QualityLevel(level_id=idx + 1, bitrate_bps=float(b), psnr_db=float(p))
            for idx, (b, p) in enumerate(pairs)
        ]
        for lower, upper in zip(levels[:-1], levels[1:]):
            if not (
                upper.bitrate_bps > lower.bitrate_bps and upper.psnr_db > lower.psnr_db
            ):
                raise ConfigError(
                    "Bitrate and PSNR should strictly increase with the level. Got: {}".format(
                        list(pairs)
                    )
                )
        if levels[0].bitrate_bps <= 0:
            raise ConfigError("Bitrates should be positive. Got: {}".format(list(pairs)))
        self.levels: List[QualityLevel] = levels

    @classmethod
    def from_opts(cls, opts) -> "QualityLadder":
        return cls(parse_ladder(getattr(opts, "video.ladder", None)))

    def __len__(self) -> int:
        return len(self.levels)

    def __iter__(self):
        return iter(self.levels)

    def __eq__(self, other) -> bool:
        return isinstance(other, QualityLadder) and self.levels == other.levels

    def level(self, level_id: int) -> QualityLevel:
        if not 1 <= level_id <= len(self.levels):
            raise KeyError("Unknown quality level: {}".format(level_id))
        return self.levels[level_id - 1]

    def bitrate(self, level_id: int) -> float:
        return self.level(level_id).bitrate_bps

    def psnr(self, level_id: int) -> float:
        return self.level(level_id).psnr_db

    @property
    def level_ids(self) -> List[int]:
        return [lvl.level_id for lvl in self.levels]

    @property
    def top(self) -> QualityLevel:
        return self.levels[-1]

    @property
    def bottom(self) -> QualityLevel:
        return self.levels[0]

    def highest_fitting(self, rate_bps: float):
        """Highest level whose bitrate fits in ``rate_bps``, or None."""
        fitting = [lvl.level_id for lvl in self.levels if lvl.bitrate_bps <= rate_bps]
        return fitting[-1] if fitting else None

    def __repr__(self) -> str:
        return "{}({})".format(
            self.__class__.__name__,
            ", ".join(
                "{}: {:.0f} bps / {:.1f} dB".format(l.level_id, l.bitrate_bps, l.psnr_db)
                for l in self.levels
            ),
        )


def parse_ladder(
    value: Union[None, str, Iterable[Union[str, Sequence[float]]]]
) -> List[Tuple[float, float]]:
    """Parse ``bitrate_bps:psnr_db`` pairs given as a string or a list."""
    if value is None or (not isinstance(value, str) and len(list(value)) == 0):
        return list(DEFAULT_LADDER)
    if isinstance(value, str):
        value = [v for v in value.replace(";", ",").split(",") if v.strip()]

    pairs = []
    for item in value:
        try:
            if isinstance(item, str):
                bitrate, psnr = item.strip().split(":")
            else:
                bitrate, psnr = item
            pairs.append((float(bitrate), float(psnr)))
        except (TypeError, ValueError):
            raise ConfigError(
                "Ladder entries should be of the form bitrate_bps:psnr_db. Got: {}".format(
                    item
                )
            )
    return pairs
