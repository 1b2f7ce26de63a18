# --------------------------------------------------------
# Licensed under The MIT License
# --------------------------------------------------------

import math
from typing import Dict, Mapping

import numpy as np

from .structures import Cluster, PowerAllocation, RateVector


def sic_rate_matrix(
    gains: np.ndarray,
    fractions: np.ndarray,
    bandwidth_hz: float,
    noise_w: float,
    power_w: float,
) -> np.ndarray:
    """Shannon rates after SIC for many allocations at once.

    ``gains`` holds the members in decode position order (strongest first) and
    ``fractions`` is (allocations x members). The member at position i is
    interfered by the members at positions < i, whose layers it cannot cancel.
    """
    fractions = np.atleast_2d(fractions)
    interference = np.cumsum(fractions, axis=1) - fractions
    rx_power = power_w * gains[None, :]
    sinr = fractions * rx_power / (interference * rx_power + noise_w)
    return bandwidth_hz * np.log2(1.0 + sinr)


def sic_rates(
    cluster: Cluster,
    alloc: PowerAllocation,
    bandwidth_hz: float,
    noise_w: float,
    gains: Mapping[int, float],
    power_w: float = 1.0,
) -> RateVector:
    member_gains = np.asarray([gains[uid] for uid in cluster.members], dtype=np.float64)
    rates = sic_rate_matrix(
        member_gains,
        np.asarray(alloc.fractions, dtype=np.float64),
        bandwidth_hz,
        noise_w,
        power_w,
    )[0]
    return {uid: float(r) for uid, r in zip(cluster.members, rates)}


def layer_rates(
    cluster: Cluster,
    alloc: PowerAllocation,
    bandwidth_hz: float,
    noise_w: float,
    gains: Mapping[int, float],
    power_w: float = 1.0,
) -> Dict[int, Dict[int, float]]:
    """Rate at which receiver i can decode the layer of member j, for every j
    receiver i has to decode (its own layer and all weaker members' layers).

    ``result[receiver][owner]``.
    """
    result = {}
    members = cluster.members
    fractions = np.asarray(alloc.fractions, dtype=np.float64)
    for pos_i, receiver in enumerate(members):
        # every layer seen through the receiver's own channel
        own_view = np.full(len(members), float(gains[receiver]))
        rates = sic_rate_matrix(own_view, fractions, bandwidth_hz, noise_w, power_w)[0]
        result[receiver] = {
            members[pos_j]: float(rates[pos_j]) for pos_j in range(pos_i, len(members))
        }
    return result


def sum_rate_bound(
    cluster: Cluster,
    bandwidth_hz: float,
    noise_w: float,
    gains: Mapping[int, float],
    power_w: float = 1.0,
) -> float:
    """Single-user capacity of the best member at full cluster power."""
    g_max = max(gains[uid] for uid in cluster.members)
    return bandwidth_hz * math.log2(1.0 + power_w * g_max / noise_w)


def sic_decode_outcome(
    cluster: Cluster,
    assigned_bitrates: Mapping[int, float],
    realized_rates_per_layer: Mapping[int, Mapping[int, float]],
) -> Dict[int, bool]:
    """Per-user decode success under cascading SIC failure.

    Receiver i decodes the weakest member's layer first and moves towards its own.
    The first layer whose realized rate falls short of its assigned bitrate makes
    every following layer at that receiver undecodable.
    """
    outcome = {}
    members = cluster.members
    for pos_i, receiver in enumerate(members):
        success = True
        for owner in reversed(members[pos_i:]):
            needed = assigned_bitrates.get(owner, 0.0)
            if needed > 0.0 and realized_rates_per_layer[receiver][owner] < needed:
                success = False
                break
        outcome[receiver] = success
    return outcome
