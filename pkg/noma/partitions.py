# --------------------------------------------------------
# Licensed under The MIT License
# --------------------------------------------------------

from functools import lru_cache
from typing import Iterator, List, Sequence, Tuple

from common import MAX_PARTITION_USERS
from utils.exceptions import DecisionSpaceError

Block = Tuple[int, ...]
Partition = Tuple[Block, ...]


def _set_partitions(items: Tuple[int, ...], max_block: int) -> Iterator[List[Block]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    # the block containing the smallest element is chosen first
    for rest_partition in _set_partitions(rest, max_block):
        yield [(first,)] + rest_partition
        for idx, block in enumerate(rest_partition):
            if len(block) < max_block:
                yield (
                    rest_partition[:idx]
                    + [(first,) + block]
                    + rest_partition[idx + 1 :]
                )


@lru_cache(maxsize=64)
def _canonical_partitions(items: Tuple[int, ...], max_block: int) -> Tuple[Partition, ...]:
    partitions = set()
    for partition in _set_partitions(items, max_block):
        blocks = sorted(tuple(sorted(block)) for block in partition)
        partitions.add(tuple(blocks))
    return tuple(sorted(partitions))


def enumerate_partitions(
    user_ids: Sequence[int], max_cluster_size: int
) -> List[Partition]:
    """All set partitions of ``user_ids`` with blocks of at most ``max_cluster_size``.

    Blocks are sorted ascending, blocks within a partition by their smallest
    element, and partitions lexicographically. Schedulers break ties by this
    order, so it must stay deterministic.
    """
    items = tuple(sorted(user_ids))
    if not 1 <= len(items) <= MAX_PARTITION_USERS:
        raise DecisionSpaceError(
            "decision space too large: partition enumeration supports 1 to {} users. Got: {}".format(
                MAX_PARTITION_USERS, len(items)
            )
        )
    if len(set(items)) != len(items):
        raise ValueError("User ids should be unique. Got: {}".format(user_ids))
    return list(_canonical_partitions(items, max(1, int(max_cluster_size))))
