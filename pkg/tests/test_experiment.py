import numpy as np
import pytest

from grassmann_kit import grassmann as g
from grassmann_kit.exceptions import DomainError, InvalidInputError
from grassmann_kit.experiment import (
    ExperimentConfig,
    max_error_by_method,
    records_to_csv,
    run_experiment,
    standard_log,
    trial_instance,
)

from conftest import make_pair


def test_standard_log_agrees_far_from_cut():
    U, D = make_pair(0, 10, 3, sigma1=1.0)
    Y = g.exp(U, D)
    np.testing.assert_allclose(standard_log(U, Y), D, atol=1e-12)
    np.testing.assert_allclose(standard_log(U, Y, project=True), D, atol=1e-12)


def test_standard_log_fails_on_exact_cut_pair():
    with pytest.raises(DomainError):
        standard_log(np.eye(2)[:, :1], np.eye(2)[:, 1:])


def test_config_validation():
    with pytest.raises(InvalidInputError):
        ExperimentConfig(n=4, p=4)
    with pytest.raises(InvalidInputError):
        ExperimentConfig(trials=0)
    with pytest.raises(InvalidInputError):
        ExperimentConfig(method="newton")
    cfg = ExperimentConfig(tau_min=1e-4, tau_max=1.0, tau_steps=5)
    np.testing.assert_allclose(cfg.tau_grid, [1e-4, 1e-3, 1e-2, 1e-1, 1.0])


def test_trial_instance_at_cut_distance():
    cfg = ExperimentConfig(n=12, p=3, trials=1)
    U, D = trial_instance(cfg, 0)
    assert np.linalg.norm(D, 2) == pytest.approx(np.pi / 2, rel=1e-15)
    assert g.cut_time(U, D) == pytest.approx(1.0, rel=1e-15)


def small_config(**kw):
    base = dict(n=20, p=4, trials=3, tau_steps=9, seed=5)
    base.update(kw)
    return ExperimentConfig(**base)


def test_records_sorted_and_complete():
    recs = run_experiment(small_config(), threads=2)
    assert len(recs) == 3 * 9 * 3
    keys = [(r.trial, r.tau) for r in recs]
    assert keys == sorted(keys)
    assert all(r.error_rad >= 0 for r in recs)


def test_deterministic_across_thread_counts():
    a = records_to_csv(run_experiment(small_config(), threads=1), timing=False)
    b = records_to_csv(run_experiment(small_config(), threads=3), timing=False)
    assert a == b
    assert a.splitlines()[0] == "trial,tau,method,error_rad,ms"


def test_thread_env(monkeypatch):
    from grassmann_kit.experiment import thread_count

    monkeypatch.setenv("GRASSMANN_KIT_THREADS", "2")
    assert thread_count() == 2
    monkeypatch.setenv("GRASSMANN_KIT_THREADS", "zero")
    with pytest.raises(InvalidInputError):
        thread_count()


def test_qualitative_behaviour_small():
    recs = run_experiment(small_config(tau_min=1e-14))
    worst = max_error_by_method(recs)
    assert worst["extended-log"] <= 1e-6
    assert max_error_by_method(recs, tau_max=1e-3)["standard-log"] > 1e-3


def test_methods_agree_far_from_cut():
    cfg = small_config(tau_steps=1)
    U, D = trial_instance(cfg, 0)
    # tau = 1 places U1 at U; the three logs should coincide
    U1 = g.exp(U, 0.5 * D)
    a = g.log(U, U1)
    assert np.linalg.norm(standard_log(U, U1) - a) <= 1e-9
    assert np.linalg.norm(standard_log(U, U1, project=True) - a) <= 1e-9


def test_large_p_runs():
    # p > n/2: the tangent has rank n - p, still with a pi/2 singular value
    recs = run_experiment(ExperimentConfig(n=7, p=5, trials=1, tau_steps=4, tau_min=1e-12))
    assert max_error_by_method(recs)["extended-log"] <= 1e-6
