# --------------------------------------------------------
# Licensed under The MIT License
# --------------------------------------------------------

import argparse
import filecmp
import os

import numpy as np
import pandas as pd
import pytest

from common import DEFAULT_LADDER, SESSION_COLUMNS
from qoe import (
    PROFILES_SECTION,
    CmfHyperParams,
    CmfModel,
    QoeProfile,
    cmf_fit,
    cmf_predict,
    derive_profile,
    dump_model,
    entropy_bits,
    information_gain,
    load_model,
    load_profiles,
    qoe_loss,
    rank_top_k,
    read_dataset,
    synth_dataset,
    write_dataset,
)
from utils.exceptions import ConfigError, ModelError
from video import NOT_JOINED, STALL, QualityLadder


@pytest.fixture
def ladder():
    return QualityLadder(DEFAULT_LADDER)


def _model(U, V):
    U = np.asarray(U, dtype=np.float64)
    V = np.asarray(V, dtype=np.float64)
    return CmfModel(
        U=U,
        V=V,
        A=np.zeros((0, U.shape[1])),
        B=np.zeros((0, U.shape[1])),
        hyperparams=CmfHyperParams(rank=U.shape[1]),
    )


# information gain


def test_information_gain_examples():
    assert information_gain([1, 1, 0, 0], [1, 1, 0, 0]) == pytest.approx(1.0)
    assert information_gain([1, 0, 1, 0], [1, 1, 0, 0]) == pytest.approx(0.0, abs=1e-12)
    assert information_gain([1, 1, 0, 0], [1, 1, 1, 0]) == pytest.approx(0.311, abs=1e-3)


def test_information_gain_of_constant_label():
    assert information_gain([0, 1, 2, 3], [1, 1, 1, 1]) == 0.0


def test_information_gain_input_checks():
    with pytest.raises(ValueError):
        information_gain([1, 2], [1, 2, 3])
    with pytest.raises(ValueError):
        information_gain([1], [1])


def test_information_gain_large_tables():
    rng = np.random.default_rng(0)
    label = rng.integers(0, 3, size=10000)
    h_label = entropy_bits(label)
    assert information_gain(rng.normal(size=10000), label) < 0.01
    assert information_gain(rng.integers(0, 5, size=10000), label) < 0.01
    assert information_gain(label.copy(), label) >= 0.99 * h_label


def test_information_gain_bounded_by_label_entropy():
    rng = np.random.default_rng(1)
    for _ in range(50):
        label = rng.integers(0, 2, size=200)
        factor = label + rng.integers(0, 3, size=200)
        gain = information_gain(factor, label)
        assert 0.0 <= gain <= entropy_bits(label)


def test_numeric_label_uses_median_split():
    qoe = np.linspace(0.0, 1.0, 100)
    high = (qoe > np.median(qoe)).astype(int)
    assert information_gain(high, qoe) == pytest.approx(1.0)


def test_rank_top_k():
    rng = np.random.default_rng(3)
    label = rng.integers(0, 2, size=500)
    table = pd.DataFrame(
        {
            "f1": rng.integers(0, 4, size=500),
            "f2": rng.normal(size=500),
            "f3": label * 2 + 1,
            "f4": label * 2 + 1,
            "engagement": label,
        }
    )
    assert rank_top_k(table, 2) == ["f3", "f4"]
    assert sorted(rank_top_k(table, 4)) == ["f1", "f2", "f3", "f4"]
    assert rank_top_k(table, 1, factors=["f2", "f4", "f3"]) == ["f4"]
    with pytest.raises(ValueError):
        rank_top_k(table, 5)


# collective matrix factorization


def test_rank_one_noiseless_fit():
    rng = np.random.default_rng(4)
    u = rng.uniform(0.2, 1.0, size=8)
    v = rng.uniform(0.2, 1.0, size=6)
    Y = np.outer(u, v)
    hp = CmfHyperParams(rank=1, beta_u=0.0, beta_s=0.0, lambda_reg=1e-8)
    model = cmf_fit(Y, np.ones_like(Y, dtype=bool), hyperparams=hp)
    rmse = np.sqrt(np.mean((model.predict_matrix() - Y) ** 2))
    assert rmse < 1e-3
    assert cmf_predict(model, 2, 3) == pytest.approx(Y[2, 3], abs=1e-3)


def test_heavy_regularization_shrinks_predictions():
    rng = np.random.default_rng(5)
    Y = rng.uniform(0.0, 1.0, size=(6, 5))
    hp = CmfHyperParams(rank=2, lambda_reg=1e6)
    model = cmf_fit(Y, np.ones_like(Y, dtype=bool), hyperparams=hp)
    assert np.all(model.predict_matrix() < 1e-6)


def test_objective_trace_non_increasing():
    data = synth_dataset(np.random.default_rng(6), 40, 15, noise_sigma=0.05)
    model = cmf_fit(data.matrix.Y, data.matrix.M, data.Xu, data.Xs, CmfHyperParams(seed=2))
    trace = np.asarray(model.trace)
    assert len(trace) >= 2
    assert np.all(np.diff(trace) <= 0.0)


def test_cmf_input_errors():
    Y = np.ones((4, 3))
    M = np.ones((4, 3), dtype=bool)
    with pytest.raises(ModelError):
        cmf_fit(Y, np.ones((3, 3), dtype=bool))
    with pytest.raises(ModelError):
        cmf_fit(Y, M, hyperparams=CmfHyperParams(rank=3))
    with pytest.raises(ModelError):
        cmf_fit(Y, np.zeros_like(M), hyperparams=CmfHyperParams(rank=1))
    Y[0, 0] = np.nan
    with pytest.raises(ModelError):
        cmf_fit(Y, M, hyperparams=CmfHyperParams(rank=1))
    with pytest.raises(ModelError):
        CmfHyperParams(rank=0)


def test_no_observations_from_generator():
    data = synth_dataset(np.random.default_rng(7), 5, 4, noise_sigma=0.0, obs_rate=0.0)
    assert len(data.sessions) == 0
    with pytest.raises(ModelError, match="no observed entries"):
        cmf_fit(data.matrix.Y, data.matrix.M, hyperparams=CmfHyperParams(rank=1))


def test_predict_clips_and_checks_ids():
    model = _model([[1.2], [-0.3], [0.0]], [[1.0], [1.0]])
    assert cmf_predict(model, 0, 1) == 1.0
    assert cmf_predict(model, 1, 0) == 0.0
    assert cmf_predict(model, 2, 0) == 0.0
    with pytest.raises(ModelError):
        cmf_predict(model, 3, 0)
    with pytest.raises(ModelError):
        cmf_predict(model, 0, -1)


def test_model_dump_round_trip(tmp_path):
    data = synth_dataset(np.random.default_rng(8), 12, 8, noise_sigma=0.05)
    model = cmf_fit(data.matrix.Y, data.matrix.M, data.Xu, data.Xs, CmfHyperParams(rank=2))
    profiles = np.array([[p.w_quality, p.w_stall] for p in data.profiles])
    path = str(tmp_path / "model.txt")
    dump_model(model, path, extras={PROFILES_SECTION: profiles})

    loaded, extras = load_model(path)
    assert loaded.hyperparams == model.hyperparams
    np.testing.assert_array_equal(loaded.U, model.U)
    np.testing.assert_array_equal(loaded.B, model.B)
    assert loaded.trace == model.trace
    np.testing.assert_array_equal(extras[PROFILES_SECTION], profiles)


def test_load_model_rejects_truncated_dump(tmp_path):
    path = tmp_path / "broken.txt"
    path.write_text("rank 1\n[U] 2 1\n0.5\n")
    with pytest.raises(ModelError):
        load_model(str(path))


# profiles and loss


def test_constant_row_gives_neutral_profile():
    xs = np.random.default_rng(9).uniform(size=(10, 2))
    profile = derive_profile(_model([[0.5]], np.ones((10, 1))), 0, xs)
    assert (profile.w_quality, profile.w_stall) == (0.5, 0.5)


def test_rank_deficient_regression_gives_neutral_profile():
    xs = np.column_stack([np.linspace(0.0, 1.0, 10), np.full(10, 0.3)])
    model = _model([[1.0]], xs[:, :1])
    profile = derive_profile(model, 0, xs)
    assert (profile.w_quality, profile.w_stall) == (0.5, 0.5)


def test_profile_ignoring_stalls():
    xs = np.random.default_rng(10).uniform(size=(12, 2))
    # row = 1 - 0.9 * deficit
    model = _model([[1.0, -0.9]], np.column_stack([np.ones(12), xs[:, 0]]))
    profile = derive_profile(model, 0, xs)
    assert profile.w_quality == pytest.approx(1.0)
    assert profile.w_stall == pytest.approx(0.0, abs=1e-9)


def test_noiseless_pipeline_recovers_profiles():
    data = synth_dataset(np.random.default_rng(11), 30, 20, noise_sigma=0.0, obs_rate=1.0)
    hp = CmfHyperParams(beta_u=0.0, beta_s=0.0, lambda_reg=1e-6, max_iter=2000, tol=1e-10)
    model = cmf_fit(data.matrix.Y, data.matrix.M, data.Xu, data.Xs, hp)
    for truth in data.profiles:
        derived = derive_profile(model, truth.user_id, data.Xs)
        assert derived.w_quality == pytest.approx(truth.w_quality, abs=0.1)
        assert derived.w_quality + derived.w_stall == pytest.approx(1.0)


def test_noisy_pipeline_recovers_profiles_on_average():
    data = synth_dataset(np.random.default_rng(12), 200, 50, noise_sigma=0.05, obs_rate=0.4)
    model = cmf_fit(data.matrix.Y, data.matrix.M, data.Xu, data.Xs, CmfHyperParams())
    assert np.all(np.diff(model.trace) <= 0.0)
    errors = [
        abs(derive_profile(model, p.user_id, data.Xs).w_quality - p.w_quality)
        for p in data.profiles
    ]
    assert np.mean(errors) <= 0.15


def test_profile_validation():
    with pytest.raises(ConfigError):
        QoeProfile(user_id=0, w_quality=0.7, w_stall=0.7)
    with pytest.raises(ConfigError):
        QoeProfile.from_quality_weight(0, 1.5)


def test_qoe_loss_values(ladder):
    quality_only = QoeProfile(user_id=0, w_quality=1.0, w_stall=0.0)
    assert qoe_loss(quality_only, 2, ladder) == pytest.approx(2.0 / 3.0)
    assert qoe_loss(quality_only, 4, ladder) == 0.0
    for profile in (quality_only, QoeProfile(user_id=1), QoeProfile(1, 0.2, 0.8)):
        assert qoe_loss(profile, STALL, ladder) == pytest.approx(1.0)
        assert qoe_loss(profile, NOT_JOINED, ladder) == 0.0
        losses = [qoe_loss(profile, level, ladder) for level in ladder.level_ids]
        assert all(a >= b for a, b in zip(losses[:-1], losses[1:]))
        assert all(0.0 <= loss <= 1.0 for loss in losses)


# dataset files


def test_synthetic_dataset_is_seeded(tmp_path):
    a = synth_dataset(np.random.default_rng(13), 10, 6, noise_sigma=0.05)
    b = synth_dataset(np.random.default_rng(13), 10, 6, noise_sigma=0.05)
    assert list(a.sessions.columns) == SESSION_COLUMNS
    pd.testing.assert_frame_equal(a.sessions, b.sessions)

    write_dataset(a, str(tmp_path / "a"))
    write_dataset(b, str(tmp_path / "b"))
    for name in ("sessions.csv", "users.csv", "services.csv"):
        assert filecmp.cmp(
            os.path.join(tmp_path, "a", name),
            os.path.join(tmp_path, "b", name),
            shallow=False,
        )


def test_dataset_files_round_trip(tmp_path):
    data = synth_dataset(np.random.default_rng(14), 10, 6, noise_sigma=0.05)
    write_dataset(data, str(tmp_path))
    loaded = read_dataset(str(tmp_path))
    np.testing.assert_array_equal(loaded.matrix.M, data.matrix.M)
    np.testing.assert_allclose(loaded.matrix.Y, data.matrix.Y, rtol=0, atol=1e-12)
    np.testing.assert_allclose(loaded.Xu, data.Xu)
    np.testing.assert_allclose(loaded.Xs, data.Xs, rtol=0, atol=1e-12)
    assert [p.w_quality for p in loaded.profiles] == pytest.approx(
        [p.w_quality for p in data.profiles]
    )


def test_engagement_label_follows_qoe():
    data = synth_dataset(np.random.default_rng(15), 20, 10, noise_sigma=0.05)
    sessions = data.sessions
    assert ((sessions["qoe"] >= 0.5).astype(int) == sessions["engagement"]).all()


# simulation profiles


def test_load_profiles_from_weights():
    opts = argparse.Namespace()
    assert load_profiles(opts, [0, 1]) == [QoeProfile(0), QoeProfile(1)]

    setattr(opts, "qoe.w_quality", [0.8])
    assert [p.w_quality for p in load_profiles(opts, [0, 1, 2])] == [0.8] * 3

    setattr(opts, "qoe.w_quality", [0.1, 0.9])
    assert [p.w_stall for p in load_profiles(opts, [0, 1])] == pytest.approx([0.9, 0.1])
    with pytest.raises(ConfigError):
        load_profiles(opts, [0, 1, 2])


def test_load_profiles_from_model_dump(tmp_path):
    model = _model(np.ones((3, 1)), np.ones((2, 1)))
    path = str(tmp_path / "model.txt")
    table = np.array([[0.7, 0.3], [0.2, 0.8], [1.0, 0.0]])
    dump_model(model, path, extras={PROFILES_SECTION: table})

    opts = argparse.Namespace()
    setattr(opts, "qoe.model_file", path)
    setattr(opts, "qoe.w_quality", [0.5])
    profiles = load_profiles(opts, [0, 1])
    assert [p.w_quality for p in profiles] == [0.7, 0.2]
    with pytest.raises(ConfigError):
        load_profiles(opts, [0, 1, 2, 3])

    setattr(opts, "qoe.model_file", str(tmp_path / "missing.txt"))
    with pytest.raises(ConfigError):
        load_profiles(opts, [0])
