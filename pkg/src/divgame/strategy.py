# Licensed under the MIT License.
# divgame Copyright (C) 2024 divgame contributors.

"""
Pathwise equilibrium strategies on the time grid.

Both reserves are driven by the same Brownian path, so the gap Z = Y - X only moves
through the controls and every strategy is a running maximum over grid values.
"""

# std
import math

from typing import Callable, Optional
from dataclasses import dataclass

# site
import numpy as np

# internal
from .base import BaseBoundary
from .typeins import SamplePath, ControlledTrajectory, HazardTrack
from .constants import *
from .exceptions import *


@dataclass
class ConstantGap (BaseBoundary):
    """Follower rule paying whatever exceeds a fixed gap."""
    gap: float
    barrier: float

    def __post_init__(self):
        if not self.gap > 0:
            raise DomainError(f"gap must be positive (got {self.gap})")

    def height(self, x: np.ndarray) -> np.ndarray:
        reserve = np.asarray(x, dtype=float)
        return np.where(reserve < 0.0, np.inf, self.gap)


def first_default(reserve: np.ndarray, start: int = 0) -> Optional[int]:
    """First grid index from `start` on with a non-positive reserve, `None` if there is none."""
    hits = np.flatnonzero(reserve[start:] <= 0.0)
    return int(hits[0]) + start if hits.size else None


def reflect_leader(path: SamplePath, x: float, barrier: float, start: int = 0) -> np.ndarray:
    """
    Reflect the reserve started at x at `barrier` from grid index `start` on.

    Arguments:
        path (SamplePath): The sample.
        x (float): Initial reserve.
        barrier (float): Reflection level.
        start (int): First index at which dividends are paid.

    Returns:
        control (np.ndarray): Cumulative dividends, zero before `start`.
    """
    excess = np.maximum(path.free(x)[start:] - barrier, 0.0)
    control = np.zeros(path.n_steps + 1)
    control[start:] = np.maximum.accumulate(excess)
    return control


def respond_follower(path: SamplePath, x: float, y: float, leader: np.ndarray,
                     boundary: BaseBoundary, start: int = 0) -> np.ndarray:
    """
    Follower's payouts keeping the gap under the boundary.

    D_k = max over start <= j <= k of (y - x + L_j - b(X_j))^+, with X = X0 - L.

    Arguments:
        path (SamplePath): The sample.
        x (float): Leader's initial reserve.
        y (float): Follower's initial reserve.
        leader (np.ndarray): Leader's cumulative dividends.
        boundary (BaseBoundary): The follower's trigger.
        start (int): First index at which dividends are paid.

    Returns:
        control (np.ndarray): Cumulative dividends, zero before `start`.
    """
    reserve = path.free(x)[start:] - leader[start:]
    excess = np.maximum(y - x + leader[start:] - boundary.height(reserve), 0.0)
    control = np.zeros(path.n_steps + 1)
    control[start:] = np.maximum.accumulate(excess)
    return control


def _finish(path: SamplePath, x: float, y: float, leader: np.ndarray, follower: np.ndarray,
            leader_tag: Optional[int]) -> ControlledTrajectory:
    x_free, y_free = path.free(x), path.free(y)
    gamma_x = first_default(x_free - leader)
    gamma_y = first_default(y_free - follower)
    stops = [k for k in (gamma_x, gamma_y) if k is not None]
    if stops:
        end = min(stops)
        leader[end:] = leader[end]
        follower[end:] = follower[end]

    x_path, y_path = x_free - leader, y_free - follower
    return ControlledTrajectory(path.times, x_path, y_path, leader, follower,
                                first_default(x_path), first_default(y_path), leader_tag)


def build_controlled(path: SamplePath, boundary: BaseBoundary, barrier: Optional[float] = None) -> ControlledTrajectory:
    """
    Asymmetric equilibrium on one path: Player 1 leads, Player 2 follows.

    Arguments:
        path (SamplePath): The sample; requires y0 >= x0.
        boundary (BaseBoundary): Follower's trigger.
        barrier (float): Leader's barrier; the boundary's own barrier by default.

    Returns:
        trajectory (ControlledTrajectory): Controls are frozen after the first default.

    Raises:
        DomainError (DomainError): If y0 < x0.
    """
    if path.y0 < path.x0:
        raise DomainError(f"the follower must not be poorer than the leader (got x0={path.x0}, y0={path.y0})")

    barrier = boundary.barrier if barrier is None else barrier
    leader = reflect_leader(path, path.x0, barrier)
    follower = respond_follower(path, path.x0, path.y0, leader, boundary)
    return _finish(path, path.x0, path.y0, leader, follower, PLAYER_ONE)


def cumulative_hazard(path: SamplePath, intensity: Callable[[np.ndarray], np.ndarray], x: Optional[float] = None) -> HazardTrack:
    """
    Integrate an intensity along the uncontrolled reserve with the trapezoid rule.

    Arguments:
        path (SamplePath): The sample.
        intensity (Callable): Vectorised intensity of the reserve level.
        x (float): Initial reserve; the path's x0 by default.

    Returns:
        track (HazardTrack): I with I_0 = 0 and Gamma = 1 - e^{-I}.
    """
    reserve = np.maximum(path.free(path.x0 if x is None else x), 0.0)
    rate = np.asarray(intensity(reserve), dtype=float)
    integral = np.concatenate([[0.0], np.cumsum(0.5 * (rate[:-1] + rate[1:]) * path.dt)])
    return HazardTrack(integral, -np.expm1(-integral))


def randomized_time(track: HazardTrack, u: float) -> Optional[int]:
    """
    First grid index k with Gamma_k >= u.

    The comparison runs on I_k >= -log(1 - u), so Gamma rounding to 1 never fires early
    and u = 1 never fires at all.

    Arguments:
        track (HazardTrack): The hazard.
        u (float): A uniform draw in [0, 1].

    Returns:
        index (int | None): The index, `None` if the hazard never reaches u.
    """
    if not 0.0 <= u <= 1.0:
        raise DomainError(f"u must lie in [0, 1] (got {u})")

    if u >= 1.0:
        return None

    threshold = -math.log1p(-u)
    index = int(np.searchsorted(track.integral, threshold, side="left"))
    return index if index < track.integral.size else None


def symmetric_controls(path: SamplePath, x: float, u1: float, u2: float, eq, track: Optional[HazardTrack] = None) -> ControlledTrajectory:
    """
    Randomised symmetric equilibrium on one path, both firms starting at x.

    Each player draws a stopping time from the hazard of ell*. Whoever stops first, before
    the free reserve defaults, becomes the leader and reflects at a0 from then on; the other
    follows the free boundary. Equal times make both reflect.

    Arguments:
        path (SamplePath): The sample.
        x (float): Common initial reserve.
        u1 (float): Player 1's uniform.
        u2 (float): Player 2's uniform.
        eq (EquilibriumSolution): The solved equilibrium.
        track (HazardTrack): The hazard of ell* along the free reserve, computed if omitted.

    Returns:
        trajectory (ControlledTrajectory): `leader_tag` is 1, 2, 0 for a tie or None.
    """
    free = path.free(x)
    track = cumulative_hazard(path, eq.ell_star, x) if track is None else track
    never = path.n_steps + 1
    gamma0 = first_default(free)
    gamma0 = never if gamma0 is None else gamma0
    stop1, stop2 = (never if k is None else k for k in (randomized_time(track, u1), randomized_time(track, u2)))

    start = min(stop1, stop2)
    if start >= gamma0:
        zero = np.zeros(path.n_steps + 1)
        return _finish(path, x, x, zero, zero.copy(), None)

    reflected = reflect_leader(path, x, eq.a0, start)
    if stop1 == stop2:
        return _finish(path, x, x, reflected, reflected.copy(), BOTH_PLAYERS)

    response = respond_follower(path, x, x, reflected, eq.boundary, start)
    if stop1 < stop2:
        return _finish(path, x, x, reflected, response, PLAYER_ONE)

    return _finish(path, x, x, response, reflected, PLAYER_TWO)


__all__ = [
    "ConstantGap",
    "first_default",
    "reflect_leader",
    "respond_follower",
    "build_controlled",
    "cumulative_hazard",
    "randomized_time",
    "symmetric_controls"
]
