# Licensed under the MIT License.
# divgame Copyright (C) 2024 divgame contributors.

# std
import math
import dataclasses
import pickle

# site
import numpy as np
import pytest

# internal
from divgame.dividend import (
    DividendSolution, characteristic_roots, optimal_barrier, value_w, generator_residual, dividend_solution
)
from divgame.exceptions import DomainError


def test_roots_reference_values():
    beta1, beta2 = characteristic_roots(0.8, 0.4, 0.8)
    assert beta1 == pytest.approx(0.916080, abs=1e-6)
    assert beta2 == pytest.approx(-10.916080, abs=1e-6)

    beta1, beta2 = characteristic_roots(1.8, 0.4, 0.8)
    assert beta1 == pytest.approx(0.436, abs=1e-3)
    assert beta2 == pytest.approx(-22.936, abs=1e-3)


def test_roots_vieta_on_random_triples():
    rng = np.random.default_rng(7)
    for mu, sigma, r in zip(rng.uniform(-3, 3, 100), rng.uniform(0.05, 2, 100), rng.uniform(0.01, 2, 100)):
        beta1, beta2 = characteristic_roots(mu, sigma, r)
        assert beta2 < 0 < beta1
        assert beta1 * beta2 == pytest.approx(-2 * r / sigma ** 2, rel=1e-12)
        assert beta1 + beta2 == pytest.approx(-2 * mu / sigma ** 2, rel=1e-12, abs=1e-12)


def test_roots_stable_for_small_volatility():
    beta1, beta2 = characteristic_roots(5.0, 0.01, 0.1)
    # the positive root is tiny and must not cancel to zero
    assert beta1 == pytest.approx(0.02, rel=1e-4)
    assert 0.5 * 0.01 ** 2 * beta1 ** 2 + 5.0 * beta1 - 0.1 == pytest.approx(0.0, abs=1e-14)


@pytest.mark.parametrize("sigma, r", [(0.0, 0.8), (-0.1, 0.8), (0.4, 0.0), (0.4, -1.0)])
def test_roots_reject_degenerate_inputs(sigma, r):
    with pytest.raises(DomainError):
        characteristic_roots(0.8, sigma, r)


def test_reference_barriers(duopoly, monopoly):
    assert duopoly.a_star == pytest.approx(0.419, abs=1e-3)
    assert monopoly.a_star == pytest.approx(0.339, abs=1e-3)
    assert optimal_barrier(duopoly) == duopoly.a_star
    assert duopoly.c_coeff > 0


def test_reference_values(duopoly, monopoly):
    assert duopoly.value(0.0) == 0.0
    assert duopoly.value(duopoly.a_star) == pytest.approx(1.0, abs=1e-10)
    assert monopoly.value(monopoly.a_star) == pytest.approx(2.25, abs=1e-10)
    assert duopoly.value(0.2) == pytest.approx(0.747, abs=1e-3)


def test_smooth_pasting(duopoly, monopoly):
    for sol in (duopoly, monopoly):
        w, w1, w2 = value_w(sol.a_star, sol)
        assert w == pytest.approx(sol.mu / sol.r, abs=1e-10)
        assert w1 == pytest.approx(1.0, abs=1e-10)
        assert w2 == pytest.approx(0.0, abs=1e-10)


def test_shape_on_grid(duopoly):
    x = np.linspace(0.0, 3 * duopoly.a_star, 1000)
    w, w1, w2 = value_w(x, duopoly)
    inside = (x > 0) & (x < duopoly.a_star - 1e-9)
    beyond = x > duopoly.a_star

    assert np.all(w1[inside] > 1.0)
    assert np.all(w1[beyond] == 1.0)
    assert np.all(w2[x <= duopoly.a_star] <= 1e-12)
    np.testing.assert_array_equal(duopoly.r * w > duopoly.mu + 1e-12, x > duopoly.a_star + 1e-9)


def test_generator_residual(duopoly):
    x = np.linspace(0.0, 2.0, 1000)
    expected = np.where(x <= duopoly.a_star, 0.0, -duopoly.r * (x - duopoly.a_star))
    np.testing.assert_allclose(generator_residual(x, duopoly), expected, atol=1e-9)


def test_higher_derivatives(duopoly):
    x = 0.5 * duopoly.a_star
    h = 1e-5
    numeric = (duopoly.derivative(x + h, 2) - duopoly.derivative(x - h, 2)) / (2 * h)
    assert duopoly.derivative(x, 3) == pytest.approx(numeric, rel=1e-6)
    assert duopoly.derivative(2 * duopoly.a_star, 3) == 0.0


def test_clamping_and_domain(duopoly):
    assert duopoly.value(-1e-13) == 0.0
    with pytest.raises(DomainError):
        duopoly.value(-1e-6)

    with pytest.raises(DomainError):
        value_w(np.array([0.1, -0.5]), duopoly)


def test_barrier_value_matches_optimum(duopoly):
    x = np.linspace(0.0, 1.0, 101)
    np.testing.assert_allclose(duopoly.barrier_value(x, duopoly.a_star), duopoly.value(x), atol=1e-12)


def test_optimal_barrier_dominates(duopoly):
    x = 0.2
    best = duopoly.value(x)
    for factor in (0.5, 0.75, 1.25, 1.5):
        assert duopoly.barrier_value(x, factor * duopoly.a_star) < best

    with pytest.raises(DomainError):
        duopoly.barrier_value(x, 0.0)


def test_monopoly_dominates_duopoly(duopoly, monopoly):
    x = np.linspace(0.0, 3.0, 500)
    assert np.all(monopoly.value(x) >= duopoly.value(x))


def test_scalar_and_array_outputs(duopoly):
    assert isinstance(duopoly.value(0.1), float)
    assert duopoly.value(np.array([0.1, 0.2])).shape == (2,)


def test_cached_and_picklable():
    sol = dividend_solution(0.8, 0.4, 0.8)
    assert dividend_solution(0.8, 0.4, 0.8) is sol

    clone = pickle.loads(pickle.dumps(sol))
    assert isinstance(clone, DividendSolution)
    assert clone.a_star == sol.a_star
    assert math.isclose(clone.value(0.3), sol.value(0.3))


def test_solution_is_frozen(duopoly):
    with pytest.raises(dataclasses.FrozenInstanceError):
        duopoly.a_star = 1.0

    assert duopoly == DividendSolution(duopoly.mu, duopoly.sigma, duopoly.r)
