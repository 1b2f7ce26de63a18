# --------------------------------------------------------
# Licensed under The MIT License
# --------------------------------------------------------

import os
from typing import List, NamedTuple, Tuple

import numpy as np
import pandas as pd

from common import SERVICE_FEATURE_COLUMNS, SESSION_COLUMNS, USER_FEATURE_COLUMNS
from qoe.profile import QoeProfile
from utils import logger
from utils.common_utils import create_directories

SESSIONS_FILE = "sessions.csv"
USERS_FILE = "users.csv"
SERVICES_FILE = "services.csv"

# usage-time class boundary on the QoE score
ENGAGEMENT_THRESHOLD = 0.5

N_NET_CONDITIONS = 3
N_HW_CLASSES = 2
N_CONTEXTS = 4


class QoeMatrix(NamedTuple):
    Y: np.ndarray
    M: np.ndarray


class SyntheticDataset(NamedTuple):
    sessions: pd.DataFrame
    matrix: QoeMatrix
    Xu: np.ndarray
    Xs: np.ndarray
    profiles: List[QoeProfile]


def synth_dataset(
    rng: np.random.Generator,
    n_users: int,
    n_services: int,
    noise_sigma: float,
    obs_rate: float = 0.4,
) -> SyntheticDataset:
    if n_users < 2 or n_services < 2:
        raise ValueError(
            "Synthetic dataset needs at least 2 users and 2 services. Got: {}x{}".format(
                n_users, n_services
            )
        )
    if not 0.0 <= obs_rate <= 1.0:
        raise ValueError("Observation rate should be in [0, 1]. Got: {}".format(obs_rate))

    weights = rng.dirichlet([1.0, 1.0], size=n_users)
    profiles = [
        QoeProfile.from_quality_weight(uid, weights[uid, 0]) for uid in range(n_users)
    ]
    net_cond = rng.integers(0, N_NET_CONDITIONS, size=n_users)
    hw_class = rng.integers(0, N_HW_CLASSES, size=n_users)
    Xs = rng.uniform(0.0, 1.0, size=(n_services, len(SERVICE_FEATURE_COLUMNS)))

    clean = 1.0 - weights @ Xs.T
    noise = rng.normal(0.0, noise_sigma, size=clean.shape) if noise_sigma > 0 else 0.0
    Y = np.clip(clean + noise, 0.0, 1.0)
    M = rng.random(size=Y.shape) < obs_rate
    context = rng.integers(0, N_CONTEXTS, size=Y.shape)

    users, services = np.nonzero(M)
    sessions = pd.DataFrame(
        {
            "user_id": users,
            "service_id": services,
            "net_cond": net_cond[users],
            "hw_class": hw_class[users],
            "context": context[users, services],
            "psnr_deficit": Xs[services, 0],
            "stall_rate": Xs[services, 1],
            "qoe": Y[users, services],
            "engagement": (Y[users, services] >= ENGAGEMENT_THRESHOLD).astype(np.int64),
        },
        columns=SESSION_COLUMNS,
    )
    Xu = np.column_stack([net_cond, hw_class]).astype(np.float64)
    Xu = Xu / np.array([N_NET_CONDITIONS - 1, N_HW_CLASSES - 1], dtype=np.float64)
    return SyntheticDataset(
        sessions=sessions,
        matrix=QoeMatrix(Y=np.where(M, Y, 0.0), M=M),
        Xu=Xu,
        Xs=Xs,
        profiles=profiles,
    )


def write_dataset(dataset: SyntheticDataset, out_dir: str) -> None:
    create_directories(out_dir, verbose=False)
    dataset.sessions.to_csv(os.path.join(out_dir, SESSIONS_FILE), index=False)

    n_users = dataset.Xu.shape[0]
    users = pd.DataFrame(
        {
            "user_id": np.arange(n_users),
            "net_cond": np.rint(dataset.Xu[:, 0] * (N_NET_CONDITIONS - 1)).astype(int),
            "hw_class": np.rint(dataset.Xu[:, 1] * (N_HW_CLASSES - 1)).astype(int),
            "w_quality": [p.w_quality for p in dataset.profiles],
            "w_stall": [p.w_stall for p in dataset.profiles],
        }
    )
    users.to_csv(os.path.join(out_dir, USERS_FILE), index=False)

    services = pd.DataFrame(dataset.Xs, columns=SERVICE_FEATURE_COLUMNS)
    services.insert(0, "service_id", np.arange(dataset.Xs.shape[0]))
    services.to_csv(os.path.join(out_dir, SERVICES_FILE), index=False)
    logger.log(
        "Wrote {} sessions for {} users and {} services to {}".format(
            len(dataset.sessions), n_users, dataset.Xs.shape[0], out_dir
        )
    )


def read_dataset(data_dir: str) -> SyntheticDataset:
    """Rebuild matrices from the CSV files written by ``write_dataset``."""
    try:
        sessions = pd.read_csv(os.path.join(data_dir, SESSIONS_FILE))
        users = pd.read_csv(os.path.join(data_dir, USERS_FILE))
        services = pd.read_csv(os.path.join(data_dir, SERVICES_FILE))
    except FileNotFoundError as e:
        raise FileNotFoundError("Incomplete dataset in {}: {}".format(data_dir, e))

    missing = [c for c in SESSION_COLUMNS if c not in sessions.columns]
    if missing:
        raise ValueError("Session table misses columns: {}".format(missing))
    if sessions["engagement"].isna().any():
        raise ValueError("Session table has missing engagement labels")

    users = users.sort_values("user_id")
    services = services.sort_values("service_id")
    n_users, n_services = len(users), len(services)
    Y, M = _session_matrix(sessions, n_users, n_services)
    Xu = users[USER_FEATURE_COLUMNS].to_numpy(dtype=np.float64)
    Xu = Xu / np.array([N_NET_CONDITIONS - 1, N_HW_CLASSES - 1], dtype=np.float64)
    profiles = [
        QoeProfile.from_quality_weight(int(uid), wq)
        for uid, wq in zip(users["user_id"], users["w_quality"])
    ]
    return SyntheticDataset(
        sessions=sessions,
        matrix=QoeMatrix(Y=Y, M=M),
        Xu=Xu,
        Xs=services[SERVICE_FEATURE_COLUMNS].to_numpy(dtype=np.float64),
        profiles=profiles,
    )


def _session_matrix(
    sessions: pd.DataFrame, n_users: int, n_services: int
) -> Tuple[np.ndarray, np.ndarray]:
    Y = np.zeros((n_users, n_services))
    M = np.zeros((n_users, n_services), dtype=bool)
    users = sessions["user_id"].to_numpy(dtype=int)
    services = sessions["service_id"].to_numpy(dtype=int)
    Y[users, services] = sessions["qoe"].to_numpy(dtype=np.float64)
    M[users, services] = True
    return Y, M
