# Licensed under the MIT License.
# divgame Copyright (C) 2024 divgame contributors.

# std
import os
import math

from dataclasses import replace

# site
import numpy as np
import pytest

# internal
from divgame import ModelParams, SimConfig, ControlledTrajectory
from divgame.constants import GAME_ASYMMETRIC, GAME_SYMMETRIC, ROLE_LEADER, ROLE_FOLLOWER
from divgame.dividend import monopoly_solution
from divgame.exceptions import DomainError, ParameterInvalid
from divgame.montecarlo import (
    FixedTime, FirstHitting, sample_path, gen_paths, sample_paths, measure_bias_budget, truncation_budget,
    payoff_pair, estimate_asymmetric, estimate_symmetric, deviation_scan, indifference_check,
    _asymmetric_sample, _excess_sample
)


def small_config(**kwargs):
    settings = dict(dt=0.01, horizon=5.0, n_paths=200, seed=11)
    settings.update(kwargs)
    return SimConfig(**settings)


def test_paths_are_reproducible():
    config = small_config()
    first, again, other = sample_path(config, 3), sample_path(config, 3), sample_path(config, 4)
    np.testing.assert_array_equal(first.brownian, again.brownian)
    assert first.draws == again.draws
    assert not np.array_equal(first.brownian, other.brownian)

    assert first.brownian[0] == 0.0
    assert first.brownian.shape == (config.n_steps + 1,)
    assert all(0.0 <= u < 1.0 for u in first.draws)


def test_seed_changes_paths():
    a = sample_path(small_config(seed=1), 0)
    b = sample_path(small_config(seed=2), 0)
    assert not np.array_equal(a.brownian, b.brownian)


def test_gen_paths_in_order():
    config = small_config(n_paths=5)
    assert [path.index for path in gen_paths(config)] == [0, 1, 2, 3, 4]


def test_coarsen():
    path = sample_path(small_config(), 0)
    coarse = path.coarsen()
    assert coarse.n_steps == path.n_steps // 2
    assert coarse.dt == 2 * path.dt
    np.testing.assert_array_equal(coarse.brownian, path.brownian[::2])

    odd = sample_path(small_config(horizon=0.99), 0)
    with pytest.raises(ParameterInvalid):
        odd.coarsen()


def test_worker_count_does_not_change_results(eq):
    serial = sample_paths(small_config(n_paths=300, horizon=1.0, workers=1), _asymmetric_sample, eq)
    pooled = sample_paths(small_config(n_paths=300, horizon=1.0, workers=2), _asymmetric_sample, eq)
    assert serial.shape == (300, 4)
    np.testing.assert_array_equal(serial, pooled)


def test_stop_rules():
    path = sample_path(small_config(), 0)
    free = path.free(path.x0)

    assert FixedTime(0.5).index(path, free) == 50
    assert FixedTime(100.0).index(path, free) == path.n_steps
    assert FixedTime(0.5).name == "time:0.5"

    rule = FirstHitting(0.6)
    index = rule.index(path, free)
    assert rule.name == "hit:0.6"
    if index < path.n_steps:
        assert free[index] >= 0.6 and np.all(free[:index] < 0.6)

    assert FirstHitting(1e6).index(path, free) == path.n_steps

    with pytest.raises(DomainError):
        FixedTime(-1.0)


def test_payoff_pair_without_default():
    params = ModelParams()
    times = np.array([0.0, 1.0, 2.0])
    traj = ControlledTrajectory(times, np.full(3, 0.3), np.full(3, 0.6),
                                np.array([0.0, 1.0, 1.0]), np.array([0.5, 0.5, 1.5]))
    payoff1, payoff2 = payoff_pair(traj, params)
    assert payoff1 == pytest.approx(math.exp(-params.r))
    assert payoff2 == pytest.approx(0.5 + math.exp(-2 * params.r))


def test_payoff_pair_survivor_collects_monopoly_value():
    params = ModelParams()
    times = np.array([0.0, 1.0, 2.0])
    traj = ControlledTrajectory(times, np.array([0.3, 0.5, 0.5]), np.array([0.6, -0.1, -0.1]),
                                np.array([0.0, 1.0, 1.0]), np.zeros(3), gamma_x=None, gamma_y=1)
    payoff1, payoff2 = payoff_pair(traj, params)
    assert payoff1 == pytest.approx(math.exp(-params.r) * (1.0 + monopoly_solution(params).value(0.5)))
    assert payoff2 == 0.0


def test_payoff_pair_simultaneous_default():
    params = ModelParams()
    times = np.array([0.0, 1.0])
    traj = ControlledTrajectory(times, np.array([0.3, 0.0]), np.array([0.3, 0.0]),
                                np.array([0.2, 0.2]), np.array([0.1, 0.1]), gamma_x=1, gamma_y=1)
    assert payoff_pair(traj, params) == pytest.approx((0.2, 0.1))


def test_truncation_budget(params, eq):
    config = small_config()
    expected = math.exp(-params.r * 5.0) * (0.5 + 0.2 + 2 * (params.mu_hat / params.r + eq.a_hat))
    assert truncation_budget(config, eq) == pytest.approx(expected)


def test_measure_bias_budget(eq):
    config = small_config(horizon=1.0)
    budget = measure_bias_budget(config, _asymmetric_sample, eq, n_paths=50)
    assert budget.shape == (4,)
    assert np.all(budget >= 0)

    # the budget is the plain shift between the two steps on common paths
    fine = replace(config.refined(), n_paths=50)
    fine_rows = np.array([_asymmetric_sample(sample_path(fine, k), eq) for k in range(50)])
    coarse_rows = np.array([_asymmetric_sample(sample_path(fine, k).coarsen(), eq) for k in range(50)])
    np.testing.assert_allclose(budget, np.abs(coarse_rows.mean(axis=0) - fine_rows.mean(axis=0)), rtol=1e-12, atol=1e-15)


def test_asymmetric_estimate(eq):
    estimate = estimate_asymmetric(small_config(), eq, budget_paths=0)
    assert estimate.game == GAME_ASYMMETRIC
    assert estimate.player1.n == 200
    assert estimate.player1.bias_budget == 0.0
    assert estimate.follower_first == 0
    assert estimate.reference1 == pytest.approx(eq.duopoly.value(0.2))
    assert estimate.reference2 == pytest.approx(eq.v2_eval(0.2, 0.5))
    assert estimate.player1.mean == pytest.approx(estimate.reference1, abs=0.25)
    assert estimate.player2.mean == pytest.approx(estimate.reference2, abs=0.3)


def test_asymmetric_needs_richer_follower(eq):
    with pytest.raises(DomainError):
        estimate_asymmetric(small_config(x0=0.5, y0=0.2), eq, budget_paths=0)


def test_asymmetric_estimate_above_barrier(eq):
    x0, y0 = eq.a0 + 0.3, eq.a0 + 0.6
    config = small_config(x0=x0, y0=y0, dt=0.0025, horizon=8.0, n_paths=300)
    estimate = estimate_asymmetric(config, eq, budget_paths=0)

    assert estimate.reference1 == pytest.approx(eq.duopoly.value(x0))
    assert estimate.reference2 == pytest.approx(eq.v2_eval(eq.a0, y0))
    # the follower faces the leader after its lump, not the pre-lump gap
    assert estimate.player2.mean == pytest.approx(estimate.reference2, abs=0.15)
    assert abs(estimate.player2.mean - estimate.reference2) < abs(estimate.player2.mean - eq.v2_eval(x0, y0))
    assert estimate.player1.mean == pytest.approx(estimate.reference1, abs=0.15)


def test_symmetric_estimate(eq):
    estimate = estimate_symmetric(small_config(x0=0.3, y0=0.3), eq, bias_budget=0.0)
    assert estimate.game == GAME_SYMMETRIC
    assert estimate.reference1 == estimate.reference2 == pytest.approx(eq.duopoly.value(0.3))
    assert estimate.closed_form1.n == estimate.closed_form2.n == 200
    assert estimate.agreement1 is not None and estimate.agreement2 is not None
    assert estimate.closed_form1.mean == pytest.approx(estimate.reference1, abs=0.25)


def test_symmetric_needs_equal_reserves(eq):
    with pytest.raises(DomainError):
        estimate_symmetric(small_config(), eq, budget_paths=0)


def test_deviation_scan(eq):
    config = small_config(n_paths=100)
    rows = deviation_scan(config, eq, ROLE_LEADER, [0.5 * eq.a0, eq.a0])
    assert [row.trial for row in rows] == [0.5 * eq.a0, eq.a0]
    assert rows[0].reference == pytest.approx(eq.duopoly.barrier_value(0.2, 0.5 * eq.a0))
    # the equilibrium trial is paired with itself
    assert rows[1].excess.mean == pytest.approx(0.0, abs=1e-12)
    assert rows[1].passed()

    follower = deviation_scan(config, eq, ROLE_FOLLOWER, [eq.alpha])
    assert follower[0].role == ROLE_FOLLOWER
    assert math.isnan(follower[0].reference)


def test_deviation_scan_measures_bias(eq):
    config = small_config(n_paths=60, horizon=1.0)
    trial = 0.5 * eq.a0
    row = deviation_scan(config, eq, ROLE_LEADER, [trial], budget_paths=40)[0]
    expected = measure_bias_budget(config, _excess_sample, eq, ROLE_LEADER, trial, n_paths=40)[0]
    assert row.excess.bias_budget == pytest.approx(expected, rel=1e-12, abs=1e-15)
    assert row.estimate.bias_budget == row.excess.bias_budget

    unmeasured = deviation_scan(config, eq, ROLE_LEADER, [trial], budget_paths=0)[0]
    assert unmeasured.excess.bias_budget == 0.0


def test_deviation_scan_rejects_bad_input(eq):
    config = small_config(n_paths=10)
    with pytest.raises(DomainError):
        deviation_scan(config, eq, "bystander", [0.1])

    with pytest.raises(DomainError):
        deviation_scan(config, eq, ROLE_LEADER, [0.0])


def test_stopping_at_once_is_exact(eq):
    rows = indifference_check(small_config(x0=0.3, y0=0.3, n_paths=50), eq, [FixedTime(0.0)], bias_budget=0.0)
    assert rows[0].rule == "time:0"
    assert rows[0].estimate.mean == pytest.approx(eq.duopoly.value(0.3), abs=1e-12)
    assert rows[0].estimate.std_err == pytest.approx(0.0, abs=1e-12)
    assert rows[0].passed()


@pytest.mark.slow
def test_asymmetric_acceptance(eq):
    estimate = estimate_asymmetric(SimConfig(workers=os.cpu_count() or 1), eq)
    assert estimate.passed()


@pytest.mark.slow
def test_symmetric_acceptance(eq):
    estimate = estimate_symmetric(SimConfig(x0=0.3, y0=0.3, workers=os.cpu_count() or 1), eq)
    assert estimate.passed()


@pytest.mark.slow
def test_indifference_acceptance(eq):
    config = SimConfig(x0=0.3, y0=0.3, n_paths=20000, workers=os.cpu_count() or 1)
    rules = [FixedTime(0.0), FixedTime(config.horizon), FirstHitting(eq.a0 + 0.2)]
    assert all(row.passed() for row in indifference_check(config, eq, rules))


@pytest.mark.parametrize("settings", [
    dict(x0="0.2"), dict(dt=None), dict(horizon=math.nan), dict(n_paths=200.0),
    dict(n_paths=True), dict(seed="11"), dict(workers=False), dict(params={"sigma": 0.4})
])
def test_config_rejects_wrong_types(settings):
    with pytest.raises(ParameterInvalid):
        small_config(**settings)


def test_params_reject_booleans():
    with pytest.raises(ParameterInvalid):
        ModelParams(sigma=True)

    with pytest.raises(ParameterInvalid):
        ModelParams(r="0.8")
