# Licensed under the MIT License.
# divgame Copyright (C) 2024 divgame contributors.

"""
Finite-difference check of the follower's variational system.

u2 is only piecewise smooth: its second derivatives jump across the default diagonal,
z = 0, z = alpha, the free boundary and x = a0. Every stencil stays inside the piece of
its point, falling back to a one-sided stencil near an edge.
"""

# std
from typing import Tuple

# site
import numpy as np

# internal
from . import _ease
from . import utils
from .typeins import ResidualCheck, ResidualReport
from .equilibrium import EquilibriumSolution
from .decorators import timed
from .constants import *
from .exceptions import *


def _step(eq: EquilibriumSolution) -> float:
    return min(eq.a0, eq.a_hat) / VERIFY_STEP_DIVISOR


def _x_piece(eq: EquilibriumSolution, z: np.ndarray, stopping: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    lower = np.maximum(0.0, -z)
    upper = np.full(z.shape, eq.a0)

    crossing = (z > eq.alpha) & (z < eq.a_hat)
    if crossing.any():
        c = np.asarray(eq.boundary.inverse(z[crossing]))
        upper[crossing] = np.where(stopping[crossing], upper[crossing], c)
        lower[crossing] = np.where(stopping[crossing], np.maximum(lower[crossing], c), lower[crossing])

    return lower, upper


def _z_piece(eq: EquilibriumSolution, x: np.ndarray, z: np.ndarray, heights: np.ndarray,
             stopping: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    lower = np.where(z <= 0.0, -np.minimum(x, eq.a0), np.where(z <= eq.alpha, 0.0, eq.alpha))
    upper = np.where(z <= 0.0, 0.0, np.where(z <= eq.alpha, eq.alpha, heights))
    lower = np.where(stopping, heights, lower)
    upper = np.where(stopping, np.inf, upper)
    return lower, upper


def _x_derivatives(eq: EquilibriumSolution, x: np.ndarray, z: np.ndarray, h: float,
                   stopping: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    lower, upper = _x_piece(eq, z, stopping)
    along_x = lambda shifted, mask: np.asarray(eq.surface.u(shifted, z[mask]))
    return (utils.finite_difference(along_x, x, lower, upper, h, 1),
            utils.finite_difference(along_x, x, lower, upper, h, 2))


def _z_derivative(eq: EquilibriumSolution, x: np.ndarray, z: np.ndarray, h: float,
                  heights: np.ndarray, stopping: np.ndarray) -> np.ndarray:
    lower, upper = _z_piece(eq, x, z, heights, stopping)
    along_z = lambda shifted, mask: np.asarray(eq.surface.u(x[mask], shifted))
    return utils.finite_difference(along_z, z, lower, upper, h, 1)


def _generator(eq: EquilibriumSolution, x: np.ndarray, z: np.ndarray, h: float,
               stopping: np.ndarray) -> np.ndarray:
    params = eq.params
    first, second = _x_derivatives(eq, x, z, h, stopping)
    value = np.asarray(eq.surface.u(x, z))
    return 0.5 * params.sigma ** 2 * second + params.mu0 * first - params.r * value


def _check(name: str, violations: np.ndarray, tolerance: float) -> Tuple[ResidualCheck, int]:
    violations = np.asarray(violations, dtype=float)
    finite = violations[np.isfinite(violations)]
    worst = float(finite.max()) if finite.size else 0.0
    check = ResidualCheck(name, worst, tolerance, int(finite.size))
    _ease.info("{name}: max violation {worst:.3e} over {points} points (tolerance {tolerance:.0e})",
               name=name, worst=worst, points=check.points, tolerance=tolerance)
    return check, int(violations.size - finite.size)


def surface_residual(eq: EquilibriumSolution, x: np.ndarray, z: np.ndarray) -> np.ndarray:
    """
    Generator residual (sigma^2 / 2) u_xx + mu0 u_x - r u of u2.

    It vanishes in the continuation set and equals -r (z - b(x)) in the stopping set.

    Arguments:
        eq (EquilibriumSolution): The solved equilibrium.
        x (float | np.ndarray): Leader reserves in [0, a0].
        z (float | np.ndarray): Gaps, at least -x.

    Returns:
        residual (float | np.ndarray): The residual, NaN where the smooth piece is too short.

    Raises:
        DomainError (DomainError): If a point lies outside [0, a0] x [-x, inf).
    """
    reserve, gap = np.broadcast_arrays(np.atleast_1d(np.asarray(x, dtype=float)), np.atleast_1d(np.asarray(z, dtype=float)))
    if np.any(reserve < 0.0) or np.any(reserve > eq.a0):
        raise DomainError("x must lie in [0, a0]")

    stopping = gap >= np.asarray(eq.boundary.exact(reserve))
    residual = _generator(eq, reserve, gap, _step(eq), stopping)
    return float(residual[0]) if np.ndim(x) == 0 and np.ndim(z) == 0 else residual


@timed
def verify_variational(eq: EquilibriumSolution, grid_nx: int = VERIFY_GRID, grid_nz: int = VERIFY_GRID) -> ResidualReport:
    """
    Check every condition of the variational system on a grid over
    H intersected with [0, a0] x [-a0, a_hat + 1].

    Arguments:
        eq (EquilibriumSolution): The solved equilibrium.
        grid_nx (int): Grid points in x, at least 50.
        grid_nz (int): Grid points in z, at least 50.

    Returns:
        report (ResidualReport): Maximum violation per condition.

    Raises:
        DomainError (DomainError): If a grid count is below 50.
    """
    for name, count in (("grid_nx", grid_nx), ("grid_nz", grid_nz)):
        if not isinstance(count, (int, np.integer)) or count < VERIFY_MINIMUM_GRID:
            raise DomainError(f"{name} must be an integer >= {VERIFY_MINIMUM_GRID} (got {count!r})")

    params = eq.params
    h = _step(eq)
    xs = np.linspace(0.0, eq.a0, grid_nx)
    zs = np.linspace(-eq.a0, eq.a_hat + VERIFY_Z_MARGIN, grid_nz)
    grid_x, grid_z = np.meshgrid(xs, zs, indexing="ij")
    inside = grid_z >= -grid_x
    x, z = grid_x[inside], grid_z[inside]

    heights = np.asarray(eq.boundary.exact(x))
    stopping = z >= heights
    continuing = ~stopping

    checks, skipped = [], 0

    # generator in both sets
    residual = _generator(eq, x, z, h, stopping)
    check, missed = _check(CHECK_PDE_CONTINUATION, np.abs(residual[continuing]), TOLERANCE_PDE)
    checks.append(check)
    skipped += missed

    check, missed = _check(CHECK_PDE_STOPPING, np.abs(residual[stopping] + params.r * (z[stopping] - heights[stopping])), TOLERANCE_PDE)
    checks.append(check)
    skipped += missed

    # u_z >= 1, with equality on the stopping set
    slope = _z_derivative(eq, x, z, h, heights, stopping)
    gradient = np.where(stopping, np.abs(slope - 1.0), np.maximum(0.0, 1.0 - slope))
    check, missed = _check(CHECK_GRADIENT, gradient, TOLERANCE_GRADIENT)
    checks.append(check)
    skipped += missed

    # u_zx = 0 along the free boundary, from the continuation formula
    edge_x = xs[(xs > 0.0) & (xs < eq.a0)]
    edge_z = np.asarray(eq.boundary.exact(edge_x))

    def slope_in_z(shifted: np.ndarray, mask: np.ndarray) -> np.ndarray:
        level = edge_z[mask]
        along_z = lambda moved, inner: np.asarray(eq.surface.continuation(shifted[inner], moved))
        return utils.finite_difference(along_z, level, eq.alpha, eq.a_hat, h, 1)

    cross = utils.finite_difference(slope_in_z, edge_x, 0.0, eq.a0, h, 1)
    check, missed = _check(CHECK_SMOOTH_PASTING, np.abs(cross), TOLERANCE_SMOOTH_PASTING)
    checks.append(check)
    skipped += missed

    # u(0, z) = v_hat(z) and u(x, -x) = 0
    upper_z = zs[zs >= 0.0]
    dirichlet = np.concatenate([
        np.abs(np.asarray(eq.surface.u(np.zeros(upper_z.shape), upper_z)) - np.asarray(eq.monopoly.value(upper_z))),
        np.abs(np.asarray(eq.surface.u(xs, -xs)))
    ])
    check, missed = _check(CHECK_DIRICHLET, dirichlet, TOLERANCE_DIRICHLET)
    checks.append(check)
    skipped += missed

    # (u_z - u_x)(a0, z) = 0
    wall_z = zs[zs >= -eq.a0]
    wall_x = np.full(wall_z.shape, eq.a0)
    wall_heights = np.full(wall_z.shape, eq.alpha)
    wall_stopping = wall_z >= wall_heights
    wall_first, _ = _x_derivatives(eq, wall_x, wall_z, h, wall_stopping)
    wall_slope = _z_derivative(eq, wall_x, wall_z, h, wall_heights, wall_stopping)
    check, missed = _check(CHECK_REFLECTION, np.abs(wall_slope - wall_first), TOLERANCE_REFLECTION)
    checks.append(check)
    skipped += missed

    report = ResidualReport(checks, h, skipped)
    if report.passed:
        _ease.info("variational system verified on a {nx}x{nz} grid, {skipped} stencils skipped",
                   nx=grid_nx, nz=grid_nz, skipped=skipped)

    else:
        _ease.warn("variational system failed: {names}",
                   names=", ".join(check.name for check in checks if not check.passed))

    return report


__all__ = ["verify_variational", "surface_residual"]
