# --------------------------------------------------------
# Licensed under The MIT License
# --------------------------------------------------------

import argparse
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from common import DEFAULT_CMF_MAX_ITER, DEFAULT_CMF_RANK, DEFAULT_CMF_TOL
from utils import logger
from utils.exceptions import ModelError


@dataclass(frozen=True)
class CmfHyperParams:
    rank: int = DEFAULT_CMF_RANK
    beta_y: float = 1.0
    beta_u: float = 0.1
    beta_s: float = 0.1
    lambda_reg: float = 0.01
    max_iter: int = DEFAULT_CMF_MAX_ITER
    tol: float = DEFAULT_CMF_TOL
    seed: int = 0

    def __post_init__(self):
        if self.rank < 1:
            raise ModelError("CMF rank should be >= 1. Got: {}".format(self.rank))
        if min(self.beta_y, self.beta_u, self.beta_s, self.lambda_reg) < 0:
            raise ModelError("CMF loss weights and regularizer should be non-negative")
        if self.max_iter < 1:
            raise ModelError("CMF max_iter should be >= 1. Got: {}".format(self.max_iter))

    @classmethod
    def from_opts(cls, opts: argparse.Namespace) -> "CmfHyperParams":
        return cls(
            rank=int(getattr(opts, "qoe.rank", DEFAULT_CMF_RANK)),
            beta_y=float(getattr(opts, "qoe.beta_y", 1.0)),
            beta_u=float(getattr(opts, "qoe.beta_u", 0.1)),
            beta_s=float(getattr(opts, "qoe.beta_s", 0.1)),
            lambda_reg=float(getattr(opts, "qoe.lambda_reg", 0.01)),
            max_iter=int(getattr(opts, "qoe.max_iter", DEFAULT_CMF_MAX_ITER)),
            tol=float(getattr(opts, "qoe.tol", DEFAULT_CMF_TOL)),
            seed=int(getattr(opts, "common.seed", 0)),
        )


@dataclass
class CmfModel:
    U: np.ndarray
    V: np.ndarray
    A: np.ndarray
    B: np.ndarray
    hyperparams: CmfHyperParams
    trace: List[float] = field(default_factory=list)

    @property
    def rank(self) -> int:
        return self.U.shape[1]

    @property
    def n_users(self) -> int:
        return self.U.shape[0]

    @property
    def n_services(self) -> int:
        return self.V.shape[0]

    def predict_row(self, user: int) -> np.ndarray:
        self._check_user(user)
        return np.clip(self.V @ self.U[user], 0.0, 1.0)

    def predict_matrix(self) -> np.ndarray:
        return np.clip(self.U @ self.V.T, 0.0, 1.0)

    def _check_user(self, user: int) -> None:
        if not 0 <= user < self.n_users:
            raise ModelError(
                "Unknown user id {}. Model has {} users".format(user, self.n_users)
            )

    def _check_service(self, service: int) -> None:
        if not 0 <= service < self.n_services:
            raise ModelError(
                "Unknown service id {}. Model has {} services".format(
                    service, self.n_services
                )
            )


def _as_side_matrix(x: Optional[np.ndarray], n_rows: int, name: str) -> np.ndarray:
    if x is None:
        return np.zeros((n_rows, 0))
    x = np.asarray(x, dtype=np.float64)
    if x.ndim == 1:
        x = x.reshape(-1, 1)
    if x.shape[0] != n_rows:
        raise ModelError(
            "{} should have {} rows. Got: {}".format(name, n_rows, x.shape[0])
        )
    return x


def cmf_objective(
    Y: np.ndarray,
    M: np.ndarray,
    Xu: np.ndarray,
    Xs: np.ndarray,
    U: np.ndarray,
    V: np.ndarray,
    A: np.ndarray,
    B: np.ndarray,
    hp: CmfHyperParams,
) -> float:
    residual = np.where(M, Y - U @ V.T, 0.0)
    value = hp.beta_y * np.sum(residual ** 2)
    value += hp.beta_u * np.sum((Xu - U @ A.T) ** 2)
    value += hp.beta_s * np.sum((Xs - V @ B.T) ** 2)
    value += hp.lambda_reg * (
        np.sum(U ** 2) + np.sum(V ** 2) + np.sum(A ** 2) + np.sum(B ** 2)
    )
    return float(value)


def _ridge_solve(gram: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    try:
        return np.linalg.solve(gram, rhs)
    except np.linalg.LinAlgError:
        return np.linalg.lstsq(gram, rhs, rcond=None)[0]


def _update_factor(
    Y: np.ndarray,
    M: np.ndarray,
    other: np.ndarray,
    side: np.ndarray,
    loadings: np.ndarray,
    beta_y: float,
    beta_side: float,
    lambda_reg: float,
) -> np.ndarray:
    """Row-wise ridge update of one factor with the other factors fixed."""
    k = other.shape[1]
    side_gram = beta_side * loadings.T @ loadings + lambda_reg * np.eye(k)
    side_rhs = beta_side * side @ loadings
    out = np.empty((Y.shape[0], k))
    for row in range(Y.shape[0]):
        observed = M[row]
        V_obs = other[observed]
        gram = beta_y * V_obs.T @ V_obs + side_gram
        rhs = beta_y * V_obs.T @ Y[row, observed] + side_rhs[row]
        out[row] = _ridge_solve(gram, rhs)
    return out


def _update_loadings(
    factor: np.ndarray, side: np.ndarray, beta_side: float, lambda_reg: float
) -> np.ndarray:
    k = factor.shape[1]
    gram = beta_side * factor.T @ factor + lambda_reg * np.eye(k)
    return _ridge_solve(gram, beta_side * factor.T @ side).T


def cmf_fit(
    Y: np.ndarray,
    M: np.ndarray,
    Xu: Optional[np.ndarray] = None,
    Xs: Optional[np.ndarray] = None,
    hyperparams: CmfHyperParams = CmfHyperParams(),
) -> CmfModel:
    """Collective factorization of the QoE matrix with user and service side data.

    Minimizes the weighted sum of the masked QoE reconstruction error and the
    side-matrix reconstruction errors plus an L2 penalty on every factor, by
    alternating closed-form ridge updates of U, V, A and B.
    """
    hp = hyperparams
    Y = np.asarray(Y, dtype=np.float64)
    M = np.asarray(M, dtype=bool)
    if Y.ndim != 2 or Y.shape != M.shape:
        raise ModelError(
            "Y and M should be 2D with the same shape. Got: {} and {}".format(
                Y.shape, M.shape
            )
        )
    n_users, n_services = Y.shape
    Xu = _as_side_matrix(Xu, n_users, "Xu")
    Xs = _as_side_matrix(Xs, n_services, "Xs")

    if not hp.rank < min(n_users, n_services):
        raise ModelError(
            "CMF rank should be smaller than min{}. Got: {}".format(Y.shape, hp.rank)
        )
    if not M.any():
        raise ModelError("QoE matrix has no observed entries")
    if not (np.isfinite(Y[M]).all() and np.isfinite(Xu).all() and np.isfinite(Xs).all()):
        raise ModelError("CMF inputs should be finite")
    Y = np.where(M, Y, 0.0)

    rng = np.random.default_rng(hp.seed)
    U = rng.uniform(-0.01, 0.01, size=(n_users, hp.rank))
    V = rng.uniform(-0.01, 0.01, size=(n_services, hp.rank))
    A = rng.uniform(-0.01, 0.01, size=(Xu.shape[1], hp.rank))
    B = rng.uniform(-0.01, 0.01, size=(Xs.shape[1], hp.rank))

    trace = [cmf_objective(Y, M, Xu, Xs, U, V, A, B, hp)]
    for iteration in range(hp.max_iter):
        prev = (U, V, A, B)
        U = _update_factor(Y, M, V, Xu, A, hp.beta_y, hp.beta_u, hp.lambda_reg)
        A = _update_loadings(U, Xu, hp.beta_u, hp.lambda_reg)
        V = _update_factor(Y.T, M.T, U, Xs, B, hp.beta_y, hp.beta_s, hp.lambda_reg)
        B = _update_loadings(V, Xs, hp.beta_s, hp.lambda_reg)

        value = cmf_objective(Y, M, Xu, Xs, U, V, A, B, hp)
        if value > trace[-1]:
            # rounding noise at convergence; keep the previous iterate
            U, V, A, B = prev
            break
        trace.append(value)
        if trace[-2] == 0.0 or (trace[-2] - value) / trace[-2] < hp.tol:
            break

    logger.debug(
        "CMF stopped after {} iterations with objective {:.6g}".format(
            len(trace) - 1, trace[-1]
        )
    )
    return CmfModel(U=U, V=V, A=A, B=B, hyperparams=hp, trace=trace)


def cmf_predict(model: CmfModel, user: int, service: int) -> float:
    model._check_user(user)
    model._check_service(service)
    return float(np.clip(model.U[user] @ model.V[service], 0.0, 1.0))


# -------- plain-text model dump --------

_HP_FIELDS = ("rank", "beta_y", "beta_u", "beta_s", "lambda_reg", "max_iter", "tol", "seed")


def _write_section(f, name: str, matrix: np.ndarray) -> None:
    matrix = np.atleast_2d(np.asarray(matrix, dtype=np.float64))
    f.write("[{}] {} {}\n".format(name, matrix.shape[0], matrix.shape[1]))
    for row in matrix:
        f.write(" ".join("{!r}".format(float(v)) for v in row) + "\n")


def dump_model(
    model: CmfModel, path: str, extras: Optional[Dict[str, np.ndarray]] = None
) -> None:
    """Write ``model`` and optional extra matrices as plain-text sections.

    Each section starts with ``[NAME] rows cols`` followed by one line per row.
    """
    with open(path, "w") as f:
        for name in _HP_FIELDS:
            f.write("{} {!r}\n".format(name, getattr(model.hyperparams, name)))
        _write_section(f, "U", model.U)
        _write_section(f, "V", model.V)
        _write_section(f, "A", model.A)
        _write_section(f, "B", model.B)
        _write_section(f, "TRACE", np.asarray(model.trace).reshape(-1, 1))
        for name, matrix in (extras or {}).items():
            _write_section(f, name, matrix)


def read_sections(path: str) -> Tuple[Dict[str, str], Dict[str, np.ndarray]]:
    header: Dict[str, str] = {}
    sections: Dict[str, np.ndarray] = {}
    with open(path, "r") as f:
        lines = [line.strip() for line in f if line.strip()]

    idx = 0
    while idx < len(lines):
        line = lines[idx]
        if line.startswith("["):
            try:
                name, rows, cols = line.split()
                rows, cols = int(rows), int(cols)
                values = [
                    [float(v) for v in lines[idx + 1 + r].split()] for r in range(rows)
                ]
            except (ValueError, IndexError):
                raise ModelError("Malformed section header in {}: {}".format(path, line))
            sections[name.strip("[]")] = np.asarray(values, dtype=np.float64).reshape(
                rows, cols
            )
            idx += 1 + rows
        else:
            key, _, value = line.partition(" ")
            header[key] = value
            idx += 1
    return header, sections


def load_model(path: str) -> Tuple[CmfModel, Dict[str, np.ndarray]]:
    header, sections = read_sections(path)
    missing = [s for s in ("U", "V", "A", "B", "TRACE") if s not in sections]
    if missing:
        raise ModelError("Model dump {} misses sections: {}".format(path, missing))
    try:
        hp = CmfHyperParams(
            **{
                name: (int if name in ("rank", "max_iter", "seed") else float)(
                    header[name]
                )
                for name in _HP_FIELDS
            }
        )
    except (KeyError, ValueError):
        raise ModelError("Model dump {} has an incomplete header".format(path))
    model = CmfModel(
        U=sections.pop("U"),
        V=sections.pop("V"),
        A=sections.pop("A"),
        B=sections.pop("B"),
        hyperparams=hp,
        trace=sections.pop("TRACE").ravel().tolist(),
    )
    return model, sections
