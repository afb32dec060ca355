# Licensed under the MIT License.
# divgame Copyright (C) 2024 divgame contributors.

# site
import numpy as np
import pytest

# internal
from divgame import ModelParams, SamplePath
from divgame.constants import PLAYER_ONE, PLAYER_TWO, BOTH_PLAYERS
from divgame.exceptions import DomainError
from divgame.montecarlo import payoff_pair
from divgame.strategy import (
    ConstantGap, first_default, reflect_leader, build_controlled,
    cumulative_hazard, randomized_time, symmetric_controls
)


def make_path(brownian, x0=0.2, y0=0.5, dt=0.01):
    brownian = np.asarray(brownian, dtype=float)
    return SamplePath(dt, brownian.size - 1, brownian, x0, y0, ModelParams())


def random_path(seed, n_steps=2000, x0=0.2, y0=0.5, dt=0.001):
    rng = np.random.default_rng(seed)
    increments = rng.standard_normal(n_steps) * np.sqrt(dt)
    return make_path(np.concatenate([[0.0], np.cumsum(increments)]), x0, y0, dt)


def falling_path(x0=0.2, y0=0.5):
    # free reserves move as x - 1.2 t
    times = np.arange(101) * 0.01
    return make_path(-5.0 * times, x0, y0)


def test_first_default():
    assert first_default(np.array([0.3, 0.1, 0.0, -0.2])) == 2
    assert first_default(np.array([0.3, -0.1, 0.2, -0.2]), start=2) == 3
    assert first_default(np.array([0.3, 0.1])) is None


def test_reflection_ceiling():
    path = random_path(1)
    barrier = 0.35
    control = reflect_leader(path, path.x0, barrier)
    assert control[0] == 0.0
    assert np.all(np.diff(control) >= 0)
    assert np.all(path.free(path.x0) - control <= barrier + 1e-12)


def test_reflection_waits_for_start():
    path = make_path(np.zeros(11), x0=1.0)
    control = reflect_leader(path, 1.0, 0.5, start=4)
    np.testing.assert_array_equal(control[:4], 0.0)
    assert control[4] == pytest.approx(0.5 + 0.8 * 0.04)


@pytest.mark.parametrize("seed", [2, 3, 4])
def test_follower_stays_under_boundary(eq, seed):
    traj = build_controlled(random_path(seed), eq.boundary)
    for k in range(traj.end + 1):
        if traj.x[k] > 0:
            assert traj.gap[k] <= eq.boundary.height(traj.x[k]) + 1e-12

    assert np.all(traj.x[:traj.end + 1] <= eq.a0 + 1e-12)
    assert np.all(np.diff(traj.l) >= 0) and np.all(np.diff(traj.d) >= 0)
    assert traj.leader_tag == PLAYER_ONE


def test_constant_gap_ceiling(eq):
    traj = build_controlled(random_path(5), ConstantGap(0.1, eq.a0))
    assert np.all(traj.gap[:traj.end + 1] <= 0.1 + 1e-12)


def test_constant_gap():
    rule = ConstantGap(0.2, 0.4)
    assert rule.barrier == 0.4
    np.testing.assert_array_equal(rule.height(np.array([-0.1, 0.0, 3.0])), [np.inf, 0.2, 0.2])

    with pytest.raises(DomainError):
        ConstantGap(0.0, 0.4)


def test_controls_frozen_after_default(eq):
    traj = build_controlled(falling_path(), eq.boundary)
    assert traj.gamma_x == 17
    assert traj.gamma_x == first_default(traj.x)
    assert traj.end == traj.gamma_x
    assert np.all(traj.l[traj.end:] == traj.l[traj.end])
    assert np.all(traj.d[traj.end:] == traj.d[traj.end])


def test_leader_must_be_poorer(eq):
    with pytest.raises(DomainError):
        build_controlled(make_path(np.zeros(11), x0=0.5, y0=0.2), eq.boundary)


def test_initial_lump_above_barrier(eq):
    params = ModelParams()
    x0, y0 = eq.a0 + 0.3, eq.a0 + 0.6
    path = make_path(np.zeros(101), x0=x0, y0=y0)
    traj = build_controlled(path, eq.boundary)

    assert traj.l[0] == pytest.approx(x0 - eq.a0, abs=1e-12)
    assert traj.x[0] == pytest.approx(eq.a0, abs=1e-12)
    assert traj.d[0] == pytest.approx(0.6 - eq.alpha, abs=1e-9)
    assert traj.gamma_x is None and traj.gamma_y is None

    # without noise the leader pays the lump, then the drift
    payoff1, _ = payoff_pair(traj, params)
    tail = np.sum(np.exp(-params.r * path.times[1:]) * np.diff(traj.l))
    assert np.diff(traj.l) == pytest.approx(np.full(100, params.mu0 * path.dt))
    assert payoff1 == pytest.approx((x0 - eq.a0) + tail, rel=1e-12)


def test_cumulative_hazard_of_constant_intensity():
    path = random_path(6, n_steps=500)
    track = cumulative_hazard(path, lambda x: np.full_like(x, 2.0))
    np.testing.assert_allclose(track.integral, 2.0 * path.times, atol=1e-12)
    np.testing.assert_allclose(track.gamma, 1.0 - np.exp(-2.0 * path.times), atol=1e-12)


def test_randomized_time():
    path = random_path(7, n_steps=500)
    track = cumulative_hazard(path, lambda x: np.full_like(x, 2.0))

    assert randomized_time(track, 0.0) == 0
    assert randomized_time(track, 1.0) is None

    index = randomized_time(track, 0.4)
    assert track.gamma[index] >= 0.4 > track.gamma[index - 1]

    # the hazard reaches only 1 - e^{-1} by the horizon
    assert randomized_time(track, 0.9) is None

    with pytest.raises(DomainError):
        randomized_time(track, 1.5)


def test_hazard_vanishes_below_barrier(eq):
    path = falling_path(0.3, 0.3)
    track = cumulative_hazard(path, eq.ell_star)
    np.testing.assert_array_equal(track.integral, 0.0)
    assert randomized_time(track, 0.5) is None

    traj = symmetric_controls(path, 0.3, 0.5, 0.5, eq)
    assert traj.leader_tag is None
    np.testing.assert_array_equal(traj.l, 0.0)
    np.testing.assert_array_equal(traj.d, 0.0)


@pytest.mark.parametrize("u1, u2, tag", [(0.0, 1.0, PLAYER_ONE), (1.0, 0.0, PLAYER_TWO), (0.0, 0.0, BOTH_PLAYERS), (1.0, 1.0, None)])
def test_symmetric_leader_tags(eq, u1, u2, tag):
    path = random_path(8, x0=0.3, y0=0.3)
    traj = symmetric_controls(path, 0.3, u1, u2, eq)
    assert traj.leader_tag == tag

    if tag == PLAYER_ONE:
        assert np.all(traj.x[:traj.end + 1] <= eq.a0 + 1e-12)

    elif tag == PLAYER_TWO:
        assert np.all(traj.y[:traj.end + 1] <= eq.a0 + 1e-12)

    elif tag == BOTH_PLAYERS:
        np.testing.assert_array_equal(traj.l, traj.d)
