# Licensed under the MIT License.
# divgame Copyright (C) 2024 divgame contributors.

"""
Asymmetric equilibrium of the dividend game.

The leader (the poorer firm) reflects its reserve at a0, the barrier of the duopoly
problem. The follower pays out whatever pushes the gap z = y - x above the moving
boundary b(x), which falls from a_hat at x = 0 to alpha at x = a0. The follower's value
u2(x, z) is assembled from the coefficient function A' (closed form on [alpha, a_hat],
RK4 on [0, alpha]) and the constant A(0).

Notation: (beta1, beta2, a0, C0) belong to the duopoly drift mu0,
v_hat and a_hat to the monopoly drift mu_hat.
"""

# std
import math

from typing import Tuple, Union
from dataclasses import dataclass, field

# site
import numpy as np
from scipy.interpolate import CubicSpline

# internal
from . import _ease
from . import utils
from .base import BaseBoundary
from .typeins import ModelParams
from .dividend import DividendSolution, duopoly_solution, monopoly_solution
from .decorators import timed
from .constants import *
from .exceptions import *

ArrayLike = Union[float, np.ndarray]


def _as_scalar(value: np.ndarray, *like: ArrayLike) -> ArrayLike:
    return float(value) if all(np.ndim(item) == 0 for item in like) else value


def _checked(values: ArrayLike, lower: float, upper: float, name: str) -> np.ndarray:
    values = np.asarray(values, dtype=float)
    if np.any(values < lower - CLAMP_TOLERANCE) or np.any(values > upper + CLAMP_TOLERANCE):
        raise DomainError(f"{name} must lie in [{lower:.6g}, {upper:.6g}]")

    return np.clip(values, lower, upper)


def phi_derivative(ell: ArrayLike, duopoly: DividendSolution, order: int = 1) -> ArrayLike:
    """
    Derivatives of phi(l) = v0'(a0 - l).

    With phi(l) = (beta1 e^{-beta2 l} - beta2 e^{-beta1 l}) / (beta1 - beta2) every
    order has the closed form (beta1 (-beta2)^n e^{-beta2 l} - beta2 (-beta1)^n e^{-beta1 l}) / (beta1 - beta2).

    Arguments:
        ell (float | np.ndarray): Distances below a0, in [0, a0].
        duopoly (DividendSolution): The duopoly problem.
        order (int): Derivative order, 0 for phi itself.

    Returns:
        value (float | np.ndarray): phi^(order)(ell).

    Raises:
        DomainError (DomainError): If some ell lies outside [0, a0].
    """
    b1, b2 = duopoly.beta1, duopoly.beta2
    length = _checked(ell, 0.0, duopoly.a_star, "ell")
    value = (b1 * (-b2) ** order * np.exp(-b2 * length) - b2 * (-b1) ** order * np.exp(-b1 * length)) / (b1 - b2)
    return _as_scalar(value, ell)


def phi(ell: ArrayLike, duopoly: DividendSolution) -> ArrayLike:
    """
    Marginal duopoly value at distance ell below the barrier, v0'(a0 - ell).

    phi(0) = 1, phi(a0) = v0'(0), strictly increasing in between.
    """
    return phi_derivative(ell, duopoly, 0)


def solve_alpha(params: ModelParams) -> float:
    """
    Level of the follower boundary once the leader sits at its barrier.

    Solves v_hat'(alpha) = v0'(0) on (0, a_hat); v_hat' is decreasing there.

    Arguments:
        params (ModelParams): Market constants.

    Returns:
        alpha (float): The root, to 1e-12.

    Raises:
        BracketFailure (BracketFailure): If v_hat'(0) < v0'(0), impossible for valid params.
    """
    duopoly, monopoly = duopoly_solution(params), monopoly_solution(params)
    return utils.bisect(lambda z: monopoly.derivative(z, 1), duopoly.derivative(0.0, 1),
                        0.0, monopoly.a_star, increasing=False)


@dataclass
class EquilibriumBoundary (BaseBoundary):
    """
    The follower's free boundary b and its inverse c.

    `exact` solves by bisection, `height` interpolates the table and is the one used on
    simulated paths. Both return alpha beyond a0; `height` is +inf on negative reserves,
    where the leader has already defaulted.
    """
    duopoly: DividendSolution
    monopoly: DividendSolution
    alpha: float
    x_grid: np.ndarray = field(default=None, repr=False)
    b_values: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        if self.x_grid is None:
            self.x_grid = np.linspace(0.0, self.duopoly.a_star, BOUNDARY_TABLE_POINTS)
            self.b_values = self.exact(self.x_grid)

        if not np.all(np.diff(self.b_values) < 0):
            raise InvariantViolation("the free boundary must be strictly decreasing on [0, a0]")

    @property
    def barrier(self) -> float:
        """Leader's reflection barrier a0. | **Read only**"""
        return self.duopoly.a_star

    def exact(self, x: ArrayLike) -> ArrayLike:
        """
        b(x) = (v_hat')^{-1}(phi(x)) on [0, a0], alpha beyond.

        Arguments:
            x (float | np.ndarray): Leader reserves, non-negative.

        Returns:
            b (float | np.ndarray): Boundary heights.

        Raises:
            DomainError (DomainError): If some x is negative.
        """
        reserve = np.asarray(x, dtype=float)
        if np.any(reserve < -CLAMP_TOLERANCE):
            raise DomainError(f"x must be non-negative (got min {reserve.min()})")

        a0 = self.barrier
        levels, inverse = np.unique(np.clip(reserve, 0.0, a0), return_inverse=True)
        heights = np.full(levels.shape, self.alpha)
        heights[levels <= 0.0] = self.monopoly.a_star

        inside = (levels > 0.0) & (levels < a0)
        if inside.any():
            heights[inside] = utils.bisect(lambda b: self.monopoly.derivative(b, 1), phi(levels[inside], self.duopoly),
                                           self.alpha, self.monopoly.a_star, increasing=False)

        return _as_scalar(heights[inverse].reshape(reserve.shape), x)

    def height(self, x: ArrayLike) -> ArrayLike:
        reserve = np.asarray(x, dtype=float)
        heights = np.interp(reserve, self.x_grid, self.b_values)
        heights = np.where(reserve < 0.0, np.inf, heights)
        return _as_scalar(heights, x)

    def inverse(self, z: ArrayLike) -> ArrayLike:
        """
        c(z) = phi^{-1}(v_hat'(z)), the leader reserve at which the boundary reaches z.

        Arguments:
            z (float | np.ndarray): Gaps in [alpha, a_hat].

        Returns:
            c (float | np.ndarray): Reserves in [0, a0].

        Raises:
            DomainError (DomainError): If some z lies outside [alpha, a_hat].
        """
        a_hat = self.monopoly.a_star
        gaps = _checked(z, self.alpha, a_hat, "z")
        levels, inverse = np.unique(gaps, return_inverse=True)
        reserves = np.zeros(levels.shape)
        reserves[levels <= self.alpha] = self.barrier

        inside = (levels > self.alpha) & (levels < a_hat)
        if inside.any():
            reserves[inside] = utils.bisect(lambda ell: phi(ell, self.duopoly), self.monopoly.derivative(levels[inside], 1),
                                            0.0, self.barrier, increasing=True)

        return _as_scalar(reserves[inverse].reshape(gaps.shape), z)

    def slope(self, x: ArrayLike) -> ArrayLike:
        """
        b'(x) = phi'(x) / v_hat''(b(x)).

        At x = 0 both sides vanish and the limit -sqrt(phi''(0) / v_hat'''(a_hat)) is used;
        beyond a0 the boundary is flat.
        """
        reserve = np.asarray(x, dtype=float)
        if np.any(reserve < -CLAMP_TOLERANCE):
            raise DomainError(f"x must be non-negative (got min {reserve.min()})")

        reserve = np.maximum(reserve, 0.0)
        origin = -math.sqrt(phi_derivative(0.0, self.duopoly, 2) / self.monopoly.derivative(self.monopoly.a_star, 3))
        slopes = np.zeros(reserve.shape)
        slopes[reserve <= 0.0] = origin

        inside = (reserve > 0.0) & (reserve < self.barrier)
        if inside.any():
            heights = np.asarray(self.exact(reserve[inside]))
            slopes[inside] = phi_derivative(reserve[inside], self.duopoly, 1) / self.monopoly.derivative(heights, 2)

        return _as_scalar(slopes, x)


def coeff_upper(z: ArrayLike, boundary: EquilibriumBoundary) -> Tuple[ArrayLike, ArrayLike]:
    """
    Coefficients A', B' on [alpha, a_hat], from smooth pasting at x = c(z).

    Arguments:
        z (float | np.ndarray): Gaps in [alpha, a_hat].
        boundary (EquilibriumBoundary): The free boundary.

    Returns:
        a_prime (float | np.ndarray): -beta2 e^{beta2 c} v_hat'(z) / (beta1 e^{beta1 c} - beta2 e^{beta2 c}).
        b_prime (float | np.ndarray): v_hat'(z) - A'(z).

    Raises:
        DomainError (DomainError): If some z lies outside [alpha, a_hat].
    """
    b1, b2 = boundary.duopoly.beta1, boundary.duopoly.beta2
    c = np.asarray(boundary.inverse(z))
    slope = np.asarray(boundary.monopoly.derivative(np.clip(z, boundary.alpha, boundary.monopoly.a_star), 1))
    a_prime = -b2 * np.exp(b2 * c) * slope / (b1 * np.exp(b1 * c) - b2 * np.exp(b2 * c))
    return _as_scalar(a_prime, z), _as_scalar(slope - a_prime, z)


def coeff_ode_solve(boundary: EquilibriumBoundary, n_steps: int = ODE_STEPS) -> Tuple[np.ndarray, np.ndarray]:
    """
    Integrate the coefficient ODE backward from alpha to 0 with classical RK4.

    A'' K = A' M + e^{beta2 a0} (beta2 v_hat' - v_hat''), K = e^{beta1 a0} - e^{beta2 a0},
    M = beta1 e^{beta1 a0} - beta2 e^{beta2 a0}, started from A'(alpha) = -beta2 e^{-beta1 a0} / (beta1 - beta2).

    Arguments:
        boundary (EquilibriumBoundary): The free boundary, for alpha and both problems.
        n_steps (int): Number of uniform steps, at least 100.

    Returns:
        z_nodes (np.ndarray): n_steps + 1 ascending nodes on [0, alpha].
        a_prime (np.ndarray): A' at the nodes.

    Raises:
        DomainError (DomainError): If n_steps is below 100.
    """
    if not isinstance(n_steps, (int, np.integer)) or n_steps < ODE_MINIMUM_STEPS:
        raise DomainError(f"n_steps must be an integer >= {ODE_MINIMUM_STEPS} (got {n_steps!r})")

    duopoly, monopoly, alpha = boundary.duopoly, boundary.monopoly, boundary.alpha
    b1, b2, a0 = duopoly.beta1, duopoly.beta2, duopoly.a_star
    k = math.exp(b1 * a0) - math.exp(b2 * a0)
    m = b1 * math.exp(b1 * a0) - b2 * math.exp(b2 * a0)

    # forcing on the half-step grid, index 2j is node j
    half = np.linspace(0.0, alpha, 2 * n_steps + 1)
    forcing = math.exp(b2 * a0) * (b2 * monopoly.derivative(half, 1) - monopoly.derivative(half, 2))

    h = -alpha / n_steps
    values = np.empty(n_steps + 1)
    values[n_steps] = -b2 * math.exp(-b1 * a0) / (b1 - b2)
    for j in range(n_steps, 0, -1):
        y = values[j]
        k1 = (m * y + forcing[2 * j]) / k
        k2 = (m * (y + 0.5 * h * k1) + forcing[2 * j - 1]) / k
        k3 = (m * (y + 0.5 * h * k2) + forcing[2 * j - 1]) / k
        k4 = (m * (y + h * k3) + forcing[2 * j - 2]) / k
        values[j - 1] = y + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)

    return half[::2].copy(), values


@dataclass
class CoefficientTables (object):
    """
    A' and B' on [0, a_hat] and the constant A(0).

    The z grid holds the RK4 nodes on [0, alpha] followed by the closed-form nodes on
    (alpha, a_hat]. A' has a kink at alpha, so each side gets its own cubic spline and
    `integral` adds their exact antiderivatives.
    """
    duopoly: DividendSolution
    monopoly: DividendSolution
    alpha: float
    z_grid: np.ndarray = field(repr=False)
    a_prime: np.ndarray = field(repr=False)
    b_prime: np.ndarray = field(repr=False)
    a_zero: float = math.nan

    _lower: CubicSpline = field(init=False, repr=False)
    _upper: CubicSpline = field(init=False, repr=False)
    _lower_integral: CubicSpline = field(init=False, repr=False)
    _upper_integral: CubicSpline = field(init=False, repr=False)

    def __post_init__(self):
        split = int(np.searchsorted(self.z_grid, self.alpha, side="right"))
        self._lower = CubicSpline(self.z_grid[:split], self.a_prime[:split])
        self._upper = CubicSpline(self.z_grid[split - 1:], self.a_prime[split - 1:])
        self._lower_integral = self._lower.antiderivative()
        self._upper_integral = self._upper.antiderivative()

    def a_prime_at(self, z: ArrayLike) -> ArrayLike:
        gaps = _checked(z, 0.0, self.monopoly.a_star, "z")
        value = np.where(gaps <= self.alpha, self._lower(gaps), self._upper(gaps))
        return _as_scalar(value, z)

    def b_prime_at(self, z: ArrayLike) -> ArrayLike:
        gaps = _checked(z, 0.0, self.monopoly.a_star, "z")
        value = self.monopoly.derivative(gaps, 1) - np.asarray(self.a_prime_at(gaps))
        return _as_scalar(value, z)

    def integral(self, m: ArrayLike) -> ArrayLike:
        """
        The integral of A' over [0, m].

        Arguments:
            m (float | np.ndarray): Upper limits in [0, a_hat].

        Returns:
            integral (float | np.ndarray): A(m) - A(0).
        """
        upper = _checked(m, 0.0, self.monopoly.a_star, "m")
        lower = np.minimum(upper, self.alpha)
        value = self._lower_integral(lower) - self._lower_integral(0.0)
        value = value + np.where(upper > self.alpha, self._upper_integral(np.maximum(upper, self.alpha)) - self._upper_integral(self.alpha), 0.0)
        return _as_scalar(value, m)


def a_zero(tables: CoefficientTables) -> float:
    """
    A(0) = Q2(a0, 0+) / (beta1 e^{beta1 a0} - beta2 e^{beta2 a0}).

    Arguments:
        tables (CoefficientTables): Tables with A' filled on [0, a_hat].

    Returns:
        a_zero (float): The constant, strictly above C0.

    Raises:
        InvariantViolation (InvariantViolation): If A(0) <= C0.
    """
    duopoly = tables.duopoly
    b1, b2, a0 = duopoly.beta1, duopoly.beta2, duopoly.a_star
    head = float(tables.a_prime[0])
    q2 = head * math.exp(b1 * a0) + (tables.monopoly.derivative(0.0, 1) - head) * math.exp(b2 * a0)
    value = q2 / (b1 * math.exp(b1 * a0) - b2 * math.exp(b2 * a0))
    if not value > duopoly.c_coeff:
        raise InvariantViolation(f"A(0) must exceed C0 (got A(0)={value}, C0={duopoly.c_coeff})")

    return value


def build_tables(boundary: EquilibriumBoundary, ode_steps: int = ODE_STEPS,
                 grid_points: int = COEFFICIENT_GRID_POINTS) -> CoefficientTables:
    """
    Fill the coefficient tables and compute A(0).

    Arguments:
        boundary (EquilibriumBoundary): The free boundary.
        ode_steps (int): RK4 steps on [0, alpha].
        grid_points (int): Closed-form nodes on [alpha, a_hat].

    Returns:
        tables (CoefficientTables): The tables.

    Raises:
        InvariantViolation (InvariantViolation): If a sign condition on A' or B' fails.
    """
    lower_z, lower_a = coeff_ode_solve(boundary, ode_steps)
    if not np.all(np.diff(lower_a) > 0):
        raise InvariantViolation("A' must be strictly increasing on [0, alpha]")

    upper_z = np.linspace(boundary.alpha, boundary.monopoly.a_star, grid_points)
    upper_a, upper_b = coeff_upper(upper_z, boundary)
    if not (np.all(upper_a > 0) and np.all(upper_b > 0)):
        raise InvariantViolation("A' and B' must be positive on [alpha, a_hat]")

    z_grid = np.concatenate([lower_z, upper_z[1:]])
    a_prime = np.concatenate([lower_a, upper_a[1:]])
    b_prime = boundary.monopoly.derivative(z_grid, 1) - a_prime
    tables = CoefficientTables(boundary.duopoly, boundary.monopoly, boundary.alpha, z_grid, a_prime, b_prime)
    tables.a_zero = a_zero(tables)
    return tables


@dataclass
class ValueSurface (object):
    """
    The follower's value u2(x, z), with z = y - x the gap.

    Reserves beyond a0 are clamped to a0 since the leader pays the excess at once.
    """
    boundary: EquilibriumBoundary
    tables: CoefficientTables

    @property
    def a_zero(self) -> float:
        return self.tables.a_zero

    def _arguments(self, x: ArrayLike, z: ArrayLike) -> Tuple[np.ndarray, np.ndarray]:
        reserve, gap = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(z, dtype=float))
        if np.any(reserve < -CLAMP_TOLERANCE):
            raise DomainError(f"x must be non-negative (got min {reserve.min()})")

        reserve = np.clip(reserve, 0.0, self.boundary.barrier)
        if np.any(gap < -reserve - CLAMP_TOLERANCE):
            raise DomainError("z must not lie below the default diagonal z = -min(x, a0)")

        return reserve, np.maximum(gap, -reserve)

    def _upper_branch(self, reserve: np.ndarray, m: np.ndarray) -> np.ndarray:
        b1, b2 = self.boundary.duopoly.beta1, self.boundary.duopoly.beta2
        integral = np.asarray(self.tables.integral(m))
        value = np.asarray(self.boundary.monopoly.value(m))
        return (self.a_zero + integral) * np.exp(b1 * reserve) + (value - self.a_zero - integral) * np.exp(b2 * reserve)

    def u(self, x: ArrayLike, z: ArrayLike) -> ArrayLike:
        """
        Evaluate u2.

        Arguments:
            x (float | np.ndarray): Leader reserves, non-negative.
            z (float | np.ndarray): Gaps, at least -min(x, a0).

        Returns:
            u (float | np.ndarray): The follower's value.

        Raises:
            DomainError (DomainError): If a point lies outside the domain.
        """
        reserve, gap = self._arguments(x, z)
        b1, b2 = self.boundary.duopoly.beta1, self.boundary.duopoly.beta2
        result = np.empty(reserve.shape)

        below = gap <= 0.0
        if below.any():
            total = reserve[below] + gap[below]
            result[below] = self.a_zero * (np.exp(b1 * total) - np.exp(b2 * total))

        above = ~below
        if above.any():
            heights = np.asarray(self.boundary.exact(reserve[above]))
            m = np.minimum(gap[above], heights)
            result[above] = self._upper_branch(reserve[above], m) + np.maximum(gap[above] - heights, 0.0)

        return _as_scalar(result, x, z)

    def continuation(self, x: ArrayLike, z: ArrayLike) -> ArrayLike:
        """
        The continuation-set formula for u2 on 0 < z <= a_hat, whatever side of b(x) the point is.

        Raises:
            DomainError (DomainError): If z lies outside [0, a_hat] or x is negative.
        """
        reserve, gap = self._arguments(x, z)
        gap = _checked(gap, 0.0, self.boundary.monopoly.a_star, "z")
        return _as_scalar(self._upper_branch(reserve, gap), x, z)

    def region(self, x: ArrayLike, z: ArrayLike) -> Union[str, np.ndarray]:
        """
        Label points of the half plane H.

        Arguments:
            x (float | np.ndarray): Leader reserves.
            z (float | np.ndarray): Gaps.

        Returns:
            label (str | np.ndarray): H_LE for z <= 0, STOP for z >= b(x),
                H_0_ALPHA for 0 < z <= alpha, H_ALPHA_B otherwise.
        """
        reserve, gap = self._arguments(x, z)
        heights = np.asarray(self.boundary.exact(reserve))
        labels = np.where(gap <= 0.0, REGION_H_LE,
                          np.where(gap >= heights, REGION_STOP,
                                   np.where(gap <= self.boundary.alpha, REGION_H_0_ALPHA, REGION_H_ALPHA_B)))
        return str(labels) if np.ndim(x) == 0 and np.ndim(z) == 0 else labels


@dataclass(frozen=True)
class EquilibriumSolution (object):
    """
    Everything the asymmetric and symmetric equilibria need.

    Immutable once `solve_equilibrium` returns, and picklable, so it is shipped as is to
    Monte Carlo workers.
    """
    params: ModelParams
    duopoly: DividendSolution
    monopoly: DividendSolution
    alpha: float
    boundary: EquilibriumBoundary
    tables: CoefficientTables
    surface: ValueSurface

    @property
    def a0(self) -> float:
        return self.duopoly.a_star

    @property
    def a_hat(self) -> float:
        return self.monopoly.a_star

    @property
    def a_zero(self) -> float:
        return self.tables.a_zero

    def phi(self, ell: ArrayLike) -> ArrayLike:
        return phi(ell, self.duopoly)

    def phi_derivative(self, ell: ArrayLike, order: int = 1) -> ArrayLike:
        return phi_derivative(ell, self.duopoly, order)

    def boundary_b(self, x: ArrayLike) -> ArrayLike:
        return self.boundary.exact(x)

    def boundary_inverse_c(self, z: ArrayLike) -> ArrayLike:
        return self.boundary.inverse(z)

    def boundary_slope(self, x: ArrayLike) -> ArrayLike:
        return self.boundary.slope(x)

    def coeff_upper(self, z: ArrayLike) -> Tuple[ArrayLike, ArrayLike]:
        return coeff_upper(z, self.boundary)

    def coeff_ode_solve(self, n_steps: int = ODE_STEPS) -> Tuple[np.ndarray, np.ndarray]:
        return coeff_ode_solve(self.boundary, n_steps)

    def u2_eval(self, x: ArrayLike, z: ArrayLike) -> ArrayLike:
        return self.surface.u(x, z)

    def v2_eval(self, x: ArrayLike, y: ArrayLike) -> ArrayLike:
        """
        Follower's value in the original coordinates, u2(x, y - x).

        Raises:
            DomainError (DomainError): If x or y is negative.
        """
        if np.any(np.asarray(y) < -CLAMP_TOLERANCE):
            raise DomainError("y must be non-negative")

        return self.surface.u(x, np.asarray(y, dtype=float) - np.asarray(x, dtype=float))

    def region(self, x: ArrayLike, z: ArrayLike) -> Union[str, np.ndarray]:
        return self.surface.region(x, z)

    def ell_star(self, x: ArrayLike) -> ArrayLike:
        """
        Stopping intensity of the symmetric equilibrium.

        ell*(x) = [r v0(x) - mu0]^+ / (v2(a0, x) - v0(x)), zero on [0, a0].

        Arguments:
            x (float | np.ndarray): Reserves, non-negative.

        Returns:
            intensity (float | np.ndarray): ell*(x).

        Raises:
            DomainError (DomainError): If some x is negative.
            InvariantViolation (InvariantViolation): If the denominator is not positive where the numerator is.
        """
        reserve = np.asarray(x, dtype=float)
        if np.any(reserve < -CLAMP_TOLERANCE):
            raise DomainError(f"x must be non-negative (got min {reserve.min()})")

        intensity = np.zeros(reserve.shape)
        active = reserve > self.a0
        if active.any():
            level = reserve[active]
            numerator = np.maximum(self.params.r * np.asarray(self.duopoly.value(level)) - self.params.mu0, 0.0)
            denominator = np.asarray(self.v2_eval(np.full(level.shape, self.a0), level)) - np.asarray(self.duopoly.value(level))
            if np.any((numerator > 0) & (denominator <= 0)):
                raise InvariantViolation("v2(a0, x) - v0(x) must be positive beyond a0")

            intensity[active] = np.where(numerator > 0, numerator / np.where(denominator > 0, denominator, 1.0), 0.0)

        return _as_scalar(intensity, x)

    def equilibrium_payoffs(self, x: float, y: float) -> Tuple[float, float]:
        """
        Payoffs (J1, J2) of the pure asymmetric equilibrium in which the poorer firm leads.

        A leader above a0 pays the excess at time zero, so the follower's value is taken
        with the leader already at a0.

        Arguments:
            x (float): Player 1's reserve.
            y (float): Player 2's reserve.

        Returns:
            payoffs (Tuple[float, float]): Player 1's and Player 2's values.
        """
        if x <= y:
            return float(self.duopoly.value(x)), float(self.v2_eval(min(x, self.a0), y))

        return float(self.v2_eval(min(y, self.a0), x)), float(self.duopoly.value(y))

    def summary(self) -> dict:
        return {
            "beta1": self.duopoly.beta1,
            "beta2": self.duopoly.beta2,
            "beta1_hat": self.monopoly.beta1,
            "beta2_hat": self.monopoly.beta2,
            "a0": self.a0,
            "a_hat": self.a_hat,
            "alpha": self.alpha,
            "C0": self.duopoly.c_coeff,
            "C_hat": self.monopoly.c_coeff,
            "A0": self.a_zero,
            "passed": self.a_zero > self.duopoly.c_coeff
        }


@timed
def solve_equilibrium(params: ModelParams, ode_steps: int = ODE_STEPS,
                      grid_points: int = COEFFICIENT_GRID_POINTS) -> EquilibriumSolution:
    """
    Construct the asymmetric equilibrium.

    Arguments:
        params (ModelParams): Market constants.
        ode_steps (int): RK4 steps for A' on [0, alpha].
        grid_points (int): Closed-form nodes for A' on [alpha, a_hat].

    Returns:
        solution (EquilibriumSolution): The solved equilibrium.

    Raises:
        BracketFailure (BracketFailure): If alpha cannot be bracketed.
        InvariantViolation (InvariantViolation): If a construction invariant fails.
        DomainError (DomainError): If ode_steps is below 100.
    """
    duopoly, monopoly = duopoly_solution(params), monopoly_solution(params)
    alpha = solve_alpha(params)
    _ease.debug("alpha solved: {alpha:.12f}", alpha=alpha)

    boundary = EquilibriumBoundary(duopoly, monopoly, alpha)
    tables = build_tables(boundary, ode_steps, grid_points)
    solution = EquilibriumSolution(params, duopoly, monopoly, alpha, boundary, tables, ValueSurface(boundary, tables))
    _ease.info("equilibrium solved: a0={a0:.6f} a_hat={a_hat:.6f} alpha={alpha:.6f} A0={a_zero:.6f}",
               a0=solution.a0, a_hat=solution.a_hat, alpha=alpha, a_zero=solution.a_zero)
    return solution


__all__ = [
    "phi",
    "phi_derivative",
    "solve_alpha",
    "EquilibriumBoundary",
    "coeff_upper",
    "coeff_ode_solve",
    "CoefficientTables",
    "a_zero",
    "build_tables",
    "ValueSurface",
    "EquilibriumSolution",
    "solve_equilibrium"
]
