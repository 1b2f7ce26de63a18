# --------------------------------------------------------
# Licensed under The MIT License
# --------------------------------------------------------

import argparse
from typing import List, Sequence

from common import DEFAULT_CMF_MAX_ITER, DEFAULT_CMF_RANK, DEFAULT_CMF_TOL, DEFAULT_IG_BINS
from utils.exceptions import ConfigError, ModelError

from qoe.cmf import CmfHyperParams, CmfModel, cmf_fit, cmf_predict, dump_model, load_model
from qoe.dataset import (
    QoeMatrix,
    SyntheticDataset,
    read_dataset,
    synth_dataset,
    write_dataset,
)
from qoe.entropy import entropy_bits, information_gain, rank_top_k
from qoe.profile import QoeProfile, derive_profile, qoe_loss, quality_deficits

PROFILES_SECTION = "PROFILES"


def load_profiles(opts: argparse.Namespace, user_ids: Sequence[int]) -> List[QoeProfile]:
    """Per-user profiles for a simulation.

    ``qoe.model_file`` takes precedence: simulated user ``u`` gets row ``u`` of
    the dump's profile section. Otherwise ``qoe.w_quality`` gives one weight per
    user (or a single weight for everyone). Without either, every user gets the
    neutral (0.5, 0.5) profile.
    """
    model_file = getattr(opts, "qoe.model_file", None)
    if model_file:
        try:
            _, sections = load_model(model_file)
        except FileNotFoundError:
            raise ConfigError("QoE model file not found: {}".format(model_file))
        if PROFILES_SECTION not in sections:
            raise ModelError("Model dump {} has no profile section".format(model_file))
        table = sections[PROFILES_SECTION]
        if table.shape[0] < len(user_ids):
            raise ConfigError(
                "Model dump holds {} profiles but the simulation has {} users".format(
                    table.shape[0], len(user_ids)
                )
            )
        return [
            QoeProfile(uid, float(table[uid, 0]), float(table[uid, 1]))
            for uid in user_ids
        ]

    w_quality = getattr(opts, "qoe.w_quality", None) or []
    if isinstance(w_quality, (int, float)):
        w_quality = [w_quality]
    if len(w_quality) == 0:
        return [QoeProfile(uid) for uid in user_ids]
    if len(w_quality) == 1:
        w_quality = list(w_quality) * len(user_ids)
    if len(w_quality) != len(user_ids):
        raise ConfigError(
            "qoe.w_quality should have 1 or {} entries. Got: {}".format(
                len(user_ids), len(w_quality)
            )
        )
    return [
        QoeProfile.from_quality_weight(uid, float(w)) for uid, w in zip(user_ids, w_quality)
    ]


def arguments_qoe(parser: argparse.ArgumentParser) -> argparse.ArgumentParser:
    group = parser.add_argument_group(
        title="QoE arguments", description="QoE profiles and model fitting"
    )
    group.add_argument(
        "--qoe.w-quality",
        type=float,
        nargs="*",
        default=None,
        help="Per-user quality weights. A single entry applies to all users",
    )
    group.add_argument(
        "--qoe.model-file",
        type=str,
        default=None,
        help="Fitted model dump whose profile section is used in the simulation",
    )
    group.add_argument("--qoe.rank", type=int, default=DEFAULT_CMF_RANK, help="CMF rank")
    group.add_argument(
        "--qoe.beta-y", type=float, default=1.0, help="Weight of the QoE matrix loss"
    )
    group.add_argument(
        "--qoe.beta-u", type=float, default=0.1, help="Weight of the user matrix loss"
    )
    group.add_argument(
        "--qoe.beta-s",
        type=float,
        default=0.1,
        help="Weight of the service matrix loss",
    )
    group.add_argument(
        "--qoe.lambda-reg", type=float, default=0.01, help="L2 regularization"
    )
    group.add_argument(
        "--qoe.max-iter",
        type=int,
        default=DEFAULT_CMF_MAX_ITER,
        help="Max. number of alternating updates",
    )
    group.add_argument(
        "--qoe.tol",
        type=float,
        default=DEFAULT_CMF_TOL,
        help="Stop when the relative objective decrease falls below this value",
    )
    group.add_argument(
        "--qoe.top-k", type=int, default=3, help="Number of factors to report"
    )
    group.add_argument(
        "--qoe.n-bins",
        type=int,
        default=DEFAULT_IG_BINS,
        help="Equal-frequency bins for numeric factors",
    )

    group = parser.add_argument_group(
        title="Dataset arguments", description="Synthetic session dataset"
    )
    group.add_argument(
        "--data.dir",
        type=str,
        default=None,
        help="Dataset directory. Defaults to <results-loc>/data",
    )
    group.add_argument("--data.n-users", type=int, default=200, help="Number of users")
    group.add_argument(
        "--data.n-services", type=int, default=50, help="Number of services"
    )
    group.add_argument(
        "--data.noise-sigma",
        type=float,
        default=0.05,
        help="Std. dev. of the Gaussian QoE noise",
    )
    group.add_argument(
        "--data.obs-rate",
        type=float,
        default=0.4,
        help="Fraction of observed (user, service) entries",
    )
    return parser
