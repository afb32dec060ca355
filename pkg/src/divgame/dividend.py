# Licensed under the MIT License.
# divgame Copyright (C) 2024 divgame contributors.

"""
Closed-form solution of the single-firm dividend problem.

For a reserve dX = mu dt + sigma dB absorbed at 0, paying dividends optimally means
reflecting at the barrier a*. The value is w(x) = C (e^{beta1 x} - e^{beta2 x}) below
the barrier and grows with slope 1 above it. Everything here is evaluated from the
closed form on demand, nothing is tabulated.
"""

# std
import math

from functools import lru_cache
from typing import Tuple, Union
from dataclasses import dataclass, field

# site
import numpy as np

# internal
from .typeins import ModelParams
from .constants import *
from .exceptions import *

ArrayLike = Union[float, np.ndarray]


def characteristic_roots(mu: float, sigma: float, r: float) -> Tuple[float, float]:
    """
    Roots of (sigma^2 / 2) beta^2 + mu beta - r = 0.

    The larger-magnitude root comes from the quadratic formula with the sign of mu,
    the other from the product of the roots, so neither suffers cancellation.

    Arguments:
        mu (float): Drift.
        sigma (float): Volatility.
        r (float): Discount rate.

    Returns:
        beta1 (float): The positive root.
        beta2 (float): The negative root.

    Raises:
        DomainError (DomainError): If sigma or r is not positive.
    """
    if not sigma > 0:
        raise DomainError(f"sigma must be positive (got {sigma})")

    if not r > 0:
        raise DomainError(f"r must be positive (got {r})")

    a = sigma * sigma / 2
    root = math.sqrt(mu * mu + 4 * a * r)
    q = -0.5 * (mu + math.copysign(root, mu))
    first, second = q / a, -r / q
    return max(first, second), min(first, second)


def optimal_barrier(sol: "DividendSolution") -> float:
    """
    Optimal reflection barrier a* = 2 / (beta1 - beta2) * log(-beta2 / beta1).

    Arguments:
        sol (DividendSolution): A solution whose roots are set.

    Returns:
        a_star (float): The barrier, strictly positive.
    """
    return 2.0 / (sol.beta1 - sol.beta2) * math.log(-sol.beta2 / sol.beta1)


def _as_scalar(value: np.ndarray, like: ArrayLike) -> ArrayLike:
    return float(value) if np.ndim(like) == 0 else value


@dataclass(frozen=True)
class DividendSolution (object):
    """
    Classical dividend problem for one drift.

    The roots, the barrier and the amplitude C are derived once in `__post_init__`;
    the instance is frozen.
    """
    mu: float
    sigma: float
    r: float

    beta1: float = field(init=False)
    beta2: float = field(init=False)
    a_star: float = field(init=False)
    c_coeff: float = field(init=False)

    def __post_init__(self):
        beta1, beta2 = characteristic_roots(self.mu, self.sigma, self.r)
        object.__setattr__(self, "beta1", beta1)
        object.__setattr__(self, "beta2", beta2)
        object.__setattr__(self, "a_star", optimal_barrier(self))
        object.__setattr__(self, "c_coeff", 1.0 / (beta1 * math.exp(beta1 * self.a_star) - beta2 * math.exp(beta2 * self.a_star)))

    def _reserve(self, x: ArrayLike) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if np.any(x < -CLAMP_TOLERANCE):
            raise DomainError(f"reserve must be non-negative (got min {x.min()})")

        return np.maximum(x, 0.0)

    def derivative(self, x: ArrayLike, order: int = 0) -> ArrayLike:
        """
        Value function or one of its derivatives.

        Arguments:
            x (float | np.ndarray): Reserve levels, non-negative.
            order (int): Derivative order, 0 for the value itself.

        Returns:
            w (float | np.ndarray): w^(order)(x).

        Raises:
            DomainError (DomainError): If some x is negative.
        """
        reserve = self._reserve(x)
        inside = np.minimum(reserve, self.a_star)
        result = self.c_coeff * (self.beta1 ** order * np.exp(self.beta1 * inside) - self.beta2 ** order * np.exp(self.beta2 * inside))

        above = reserve > self.a_star
        if order == 0:
            result = np.where(above, result + (reserve - self.a_star), result)

        elif order == 1:
            result = np.where(above, 1.0, result)

        else:
            result = np.where(above, 0.0, result)

        return _as_scalar(result, x)

    def value(self, x: ArrayLike) -> ArrayLike:
        return self.derivative(x, 0)

    def value_w(self, x: ArrayLike) -> Tuple[ArrayLike, ArrayLike, ArrayLike]:
        return self.derivative(x, 0), self.derivative(x, 1), self.derivative(x, 2)

    def generator_residual(self, x: ArrayLike) -> ArrayLike:
        """(sigma^2 / 2) w'' + mu w' - r w, zero up to a* and -r (x - a*) beyond."""
        w, w1, w2 = self.value_w(x)
        return 0.5 * self.sigma ** 2 * w2 + self.mu * w1 - self.r * w

    def barrier_value(self, x: ArrayLike, barrier: float) -> ArrayLike:
        """
        Value of reflecting at an arbitrary barrier instead of a*.

        Arguments:
            x (float | np.ndarray): Initial reserves.
            barrier (float): Reflection barrier, positive.

        Returns:
            value (float | np.ndarray): Expected discounted dividends until default.

        Raises:
            DomainError (DomainError): If the barrier is not positive or some x is negative.
        """
        if not barrier > 0:
            raise DomainError(f"barrier must be positive (got {barrier})")

        reserve = self._reserve(x)
        inside = np.minimum(reserve, barrier)
        slope = self.beta1 * math.exp(self.beta1 * barrier) - self.beta2 * math.exp(self.beta2 * barrier)
        result = (np.exp(self.beta1 * inside) - np.exp(self.beta2 * inside)) / slope
        result = result + np.maximum(reserve - barrier, 0.0)
        return _as_scalar(result, x)


def value_w(x: ArrayLike, sol: DividendSolution) -> Tuple[ArrayLike, ArrayLike, ArrayLike]:
    """
    Value function and its first two derivatives.

    Arguments:
        x (float | np.ndarray): Reserve levels, non-negative.
        sol (DividendSolution): The solved problem.

    Returns:
        w, w1, w2 (Tuple): w(x), w'(x), w''(x).
    """
    return sol.value_w(x)


def generator_residual(x: ArrayLike, sol: DividendSolution) -> ArrayLike:
    return sol.generator_residual(x)


@lru_cache(maxsize=64)
def dividend_solution(mu: float, sigma: float, r: float) -> DividendSolution:
    return DividendSolution(mu, sigma, r)


def duopoly_solution(params: ModelParams) -> DividendSolution:
    """The problem with drift mu0, value v0."""
    return dividend_solution(params.mu0, params.sigma, params.r)


def monopoly_solution(params: ModelParams) -> DividendSolution:
    """The problem with drift mu_hat, value v_hat."""
    return dividend_solution(params.mu_hat, params.sigma, params.r)


__all__ = [
    "characteristic_roots",
    "optimal_barrier",
    "DividendSolution",
    "value_w",
    "generator_residual",
    "dividend_solution",
    "duopoly_solution",
    "monopoly_solution"
]
