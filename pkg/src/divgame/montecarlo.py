# Licensed under the MIT License.
# divgame Copyright (C) 2024 divgame contributors.

"""
Seeded Monte Carlo of the controlled game.

Path i is drawn from a Philox generator keyed by (i << 64) | seed, so it does not depend
on which worker draws it or in which order. Samplers are module-level functions of one
path returning a fixed-length row; `sample_paths` maps them over contiguous chunks of
path indices and stacks the rows in index order.
"""

# std
import math

from typing import Any, Callable, Iterator, List, Optional, Sequence, Tuple
from dataclasses import dataclass, replace
from itertools import repeat
from concurrent.futures import ProcessPoolExecutor

# site
import numpy as np

# internal
from . import _ease
from .base import BaseStopRule
from .typeins import (
    ModelParams, SimConfig, SamplePath, ControlledTrajectory,
    PayoffEstimate, GameEstimate, DeviationRow, IndifferenceRow
)
from .dividend import monopoly_solution
from .equilibrium import EquilibriumSolution
from .strategy import ConstantGap, build_controlled, cumulative_hazard, first_default, randomized_time, symmetric_controls
from .decorators import timed
from .constants import *
from .exceptions import *

Sampler = Callable[..., Sequence[float]]


@dataclass(frozen=True)
class FixedTime (BaseStopRule):
    """Stop at a deterministic time, capped by the horizon."""
    time: float

    def __post_init__(self):
        if not self.time >= 0:
            raise DomainError(f"stopping time must be non-negative (got {self.time})")

    @property
    def name(self) -> str:
        return f"{STOP_RULE_TIME}:{self.time:g}"

    def index(self, path: SamplePath, free: np.ndarray) -> int:
        return min(int(round(self.time / path.dt)), path.n_steps)


@dataclass(frozen=True)
class FirstHitting (BaseStopRule):
    """Stop when the free reserve first reaches a level, or at the horizon."""
    level: float

    @property
    def name(self) -> str:
        return f"{STOP_RULE_HIT}:{self.level:g}"

    def index(self, path: SamplePath, free: np.ndarray) -> int:
        hits = np.flatnonzero(free >= self.level)
        return int(hits[0]) if hits.size else path.n_steps


def sample_path(config: SimConfig, index: int) -> SamplePath:
    """
    Draw path `index` of a configuration.

    Two uniforms come first, then n_steps standard normals scaled by sqrt(dt).

    Arguments:
        config (SimConfig): The simulation constants.
        index (int): Path index.

    Returns:
        path (SamplePath): The sample, B_0 = 0.
    """
    generator = np.random.Generator(np.random.Philox(key=(index << SEED_BITS) | config.seed))
    draws = generator.random(2)
    increments = generator.standard_normal(config.n_steps) * math.sqrt(config.dt)
    brownian = np.concatenate([[0.0], np.cumsum(increments)])
    return SamplePath(config.dt, config.n_steps, brownian, config.x0, config.y0, config.params,
                      (float(draws[0]), float(draws[1])), index)


def gen_paths(config: SimConfig) -> Iterator[SamplePath]:
    """Stream every path of a configuration in index order."""
    for index in range(config.n_paths):
        yield sample_path(config, index)


def _run_chunk(config: SimConfig, sampler: Sampler, args: Tuple[Any, ...], bounds: Tuple[int, int]) -> np.ndarray:
    start, stop = bounds
    return np.array([sampler(sample_path(config, index), *args) for index in range(start, stop)], dtype=float)


def sample_paths(config: SimConfig, sampler: Sampler, *args: Any) -> np.ndarray:
    """
    Apply a sampler to every path.

    Arguments:
        config (SimConfig): The simulation constants; `workers` picks serial or process-pool execution.
        sampler (Callable): Picklable function of (path, *args) returning a row of floats.
        args (Any): Extra sampler arguments, shipped to every worker.

    Returns:
        rows (np.ndarray): One row per path, in path order.
    """
    chunks = [(start, min(start + CHUNK_SIZE, config.n_paths)) for start in range(0, config.n_paths, CHUNK_SIZE)]
    if config.workers == 1:
        blocks = [_run_chunk(config, sampler, args, bounds) for bounds in chunks]

    else:
        with ProcessPoolExecutor(max_workers=config.workers) as executor:
            blocks = list(executor.map(_run_chunk, repeat(config), repeat(sampler), repeat(args), chunks))

    return np.concatenate(blocks, axis=0)


def _coupled(path: SamplePath, sampler: Sampler, *args: Any) -> np.ndarray:
    return np.concatenate([np.asarray(sampler(path, *args), dtype=float),
                           np.asarray(sampler(path.coarsen(), *args), dtype=float)])


def measure_bias_budget(config: SimConfig, sampler: Sampler, *args: Any, n_paths: Optional[int] = None) -> np.ndarray:
    """
    Estimate the time-discretisation bias of each sampler column.

    Runs the sampler on dt / 2 paths and on the same paths observed every dt. The budget is
    the shift |mean(dt) - mean(dt / 2)|, measured once and then held fixed.

    Arguments:
        config (SimConfig): The simulation constants at the production step.
        sampler (Callable): The sampler.
        args (Any): Extra sampler arguments.
        n_paths (int): Number of coupled paths; the configuration's by default.

    Returns:
        budget (np.ndarray): One non-negative budget per column.
    """
    fine = replace(config.refined(), horizon=config.n_steps * config.dt, n_paths=n_paths or config.n_paths)
    rows = sample_paths(fine, _coupled, sampler, *args)
    width = rows.shape[1] // 2
    shift = np.abs(rows[:, width:].mean(axis=0) - rows[:, :width].mean(axis=0))
    _ease.debug("bias budget from {n} coupled paths: {budget}", n=fine.n_paths, budget=shift)
    return shift


def truncation_budget(config: SimConfig, eq: EquilibriumSolution) -> float:
    """Bound on the discounted payoff left after the horizon, e^{-rT}(y0 + x0 + 2(mu_hat / r + a_hat))."""
    params = config.params
    return math.exp(-params.r * config.n_steps * config.dt) * (config.y0 + config.x0 + 2 * (params.mu_hat / params.r + eq.a_hat))


def _resolve_budget(config: SimConfig, sampler: Sampler, args: Tuple[Any, ...], bias_budget: Any,
                    budget_paths: int, width: int) -> np.ndarray:
    if bias_budget is None:
        if budget_paths <= 0:
            return np.zeros(width)

        return measure_bias_budget(config, sampler, *args, n_paths=min(budget_paths, config.n_paths))

    return np.broadcast_to(np.asarray(bias_budget, dtype=float), (width,)).copy()


def payoff_pair(traj: ControlledTrajectory, params: ModelParams) -> Tuple[float, float]:
    """
    Discounted dividends of both players up to the first default.

    The survivor of a strict first default also collects the monopoly value of its reserve
    at that time; simultaneous default ends the game for both.

    Arguments:
        traj (ControlledTrajectory): The controlled pair.
        params (ModelParams): Market constants.

    Returns:
        payoffs (Tuple[float, float]): J1 and J2.
    """
    end = traj.end
    discount = np.exp(-params.r * traj.times[:end + 1])
    payoff1 = float(np.sum(discount * np.diff(traj.l[:end + 1], prepend=0.0)))
    payoff2 = float(np.sum(discount * np.diff(traj.d[:end + 1], prepend=0.0)))

    monopoly = monopoly_solution(params)
    never = len(traj.times)
    gamma_x = never if traj.gamma_x is None else traj.gamma_x
    gamma_y = never if traj.gamma_y is None else traj.gamma_y
    if gamma_y < gamma_x:
        payoff1 += discount[gamma_y] * monopoly.value(max(traj.x[gamma_y], 0.0))

    elif gamma_x < gamma_y:
        payoff2 += discount[gamma_x] * monopoly.value(max(traj.y[gamma_x], 0.0))

    return payoff1, payoff2


def _asymmetric_sample(path: SamplePath, eq: EquilibriumSolution) -> List[float]:
    traj = build_controlled(path, eq.boundary)
    payoff1, payoff2 = payoff_pair(traj, eq.params)
    follower_first = traj.gamma_y is not None and (traj.gamma_x is None or traj.gamma_y < traj.gamma_x)
    simultaneous = traj.gamma_y is not None and traj.gamma_y == traj.gamma_x
    return [payoff1, payoff2, float(follower_first), float(simultaneous)]


def _closed_form(times: np.ndarray, free: np.ndarray, eq: EquilibriumSolution,
                 stop: int, other: int, gamma0: int) -> float:
    # payoff of the player stopping at `stop` while the other stops at `other`
    r = eq.params.r
    if other < min(stop, gamma0):
        return math.exp(-r * times[other]) * float(eq.v2_eval(eq.a0, free[other]))

    if stop < min(other, gamma0):
        return math.exp(-r * times[stop]) * float(eq.duopoly.value(free[stop]))

    return 0.0


def _symmetric_sample(path: SamplePath, eq: EquilibriumSolution) -> List[float]:
    x = path.x0
    free = path.free(x)
    track = cumulative_hazard(path, eq.ell_star, x)
    traj = symmetric_controls(path, x, path.draws[0], path.draws[1], eq, track)
    payoff1, payoff2 = payoff_pair(traj, eq.params)

    never = path.n_steps + 1
    gamma0 = first_default(free)
    gamma0 = never if gamma0 is None else gamma0
    stop1, stop2 = (never if k is None else k for k in (randomized_time(track, path.draws[0]), randomized_time(track, path.draws[1])))
    closed1 = _closed_form(path.times, free, eq, stop1, stop2, gamma0)
    closed2 = _closed_form(path.times, free, eq, stop2, stop1, gamma0)
    return [payoff1, payoff2, closed1, closed2]


def _deviation_sample(path: SamplePath, eq: EquilibriumSolution, role: str, trial: float) -> List[float]:
    reference = build_controlled(path, eq.boundary)
    if role == ROLE_LEADER:
        deviation = build_controlled(path, eq.boundary, barrier=trial)
        column = 0

    else:
        deviation = build_controlled(path, ConstantGap(trial, eq.a0))
        column = 1

    return [payoff_pair(deviation, eq.params)[column], payoff_pair(reference, eq.params)[column]]


def _indifference_sample(path: SamplePath, eq: EquilibriumSolution, rule: BaseStopRule) -> List[float]:
    r = eq.params.r
    free = path.free(path.x0)
    times = path.times
    track = cumulative_hazard(path, eq.ell_star, path.x0)
    gamma0 = first_default(free)
    gamma0 = path.n_steps + 1 if gamma0 is None else gamma0
    tau = rule.index(path, free)

    value = 0.0
    if tau < gamma0:
        value += math.exp(-r * times[tau]) * float(eq.duopoly.value(free[tau])) * (1.0 - track.gamma[tau])

    upto = min(tau, gamma0, path.n_steps)
    steps = np.diff(track.gamma[:upto + 1])
    active = np.flatnonzero(steps > 0)
    if active.size:
        ends = np.concatenate([active, active + 1])
        levels = np.maximum(free[ends], 0.0)
        payoff = np.exp(-r * times[ends]) * np.asarray(eq.v2_eval(np.full(levels.shape, eq.a0), levels))
        value += float(np.sum(0.5 * (payoff[:active.size] + payoff[active.size:]) * steps[active]))

    return [value]


@timed
def estimate_asymmetric(config: SimConfig, eq: EquilibriumSolution, bias_budget: Any = None,
                        budget_paths: int = DEFAULT_BUDGET_PATHS) -> GameEstimate:
    """
    Estimate both payoffs of the asymmetric equilibrium, Player 1 leading.

    Arguments:
        config (SimConfig): The simulation constants; requires y0 >= x0.
        eq (EquilibriumSolution): The solved equilibrium.
        bias_budget (float | Sequence[float]): Discretisation bias per player; measured if None.
        budget_paths (int): Paths used to measure the bias, 0 to skip.

    Returns:
        estimate (GameEstimate): References v0(x0) and v2(min(x0, a0), y0).

    Raises:
        DomainError (DomainError): If y0 < x0.
    """
    if config.y0 < config.x0:
        raise DomainError(f"the asymmetric game needs y0 >= x0 (got x0={config.x0}, y0={config.y0})")

    rows = sample_paths(config, _asymmetric_sample, eq)
    bias = _resolve_budget(config, _asymmetric_sample, (eq,), bias_budget, budget_paths, 4)
    truncation = truncation_budget(config, eq)
    reference1, reference2 = eq.equilibrium_payoffs(config.x0, config.y0)
    estimate = GameEstimate(
        GAME_ASYMMETRIC,
        PayoffEstimate.from_samples(rows[:, 0], truncation, float(bias[0])),
        PayoffEstimate.from_samples(rows[:, 1], truncation, float(bias[1])),
        reference1, reference2,
        follower_first=int(rows[:, 2].sum()),
        simultaneous=int(rows[:, 3].sum())
    )
    _ease.info("asymmetric game: J1={j1:.6f} (ref {ref1:.6f}), J2={j2:.6f} (ref {ref2:.6f})",
               j1=estimate.player1.mean, ref1=reference1, j2=estimate.player2.mean, ref2=reference2)
    return estimate


@timed
def estimate_symmetric(config: SimConfig, eq: EquilibriumSolution, bias_budget: Any = None,
                       budget_paths: int = DEFAULT_BUDGET_PATHS) -> GameEstimate:
    """
    Estimate both payoffs of the randomised symmetric equilibrium.

    Alongside the trajectory estimator, the closed-form representation through the
    stopping times is averaged on the same paths and the paired difference is reported.

    Arguments:
        config (SimConfig): The simulation constants; requires x0 == y0.
        eq (EquilibriumSolution): The solved equilibrium.
        bias_budget (float | Sequence[float]): Discretisation bias per column; measured if None.
        budget_paths (int): Paths used to measure the bias, 0 to skip.

    Returns:
        estimate (GameEstimate): Both references are v0(x0).

    Raises:
        DomainError (DomainError): If x0 != y0.
    """
    if config.x0 != config.y0:
        raise DomainError(f"the symmetric game needs x0 == y0 (got x0={config.x0}, y0={config.y0})")

    rows = sample_paths(config, _symmetric_sample, eq)
    bias = _resolve_budget(config, _symmetric_sample, (eq,), bias_budget, budget_paths, 4)
    truncation = truncation_budget(config, eq)
    reference = float(eq.duopoly.value(config.x0))
    estimate = GameEstimate(
        GAME_SYMMETRIC,
        PayoffEstimate.from_samples(rows[:, 0], truncation, float(bias[0])),
        PayoffEstimate.from_samples(rows[:, 1], truncation, float(bias[1])),
        reference, reference,
        closed_form1=PayoffEstimate.from_samples(rows[:, 2], truncation, float(bias[2])),
        closed_form2=PayoffEstimate.from_samples(rows[:, 3], truncation, float(bias[3])),
        agreement1=PayoffEstimate.from_samples(rows[:, 0] - rows[:, 2]),
        agreement2=PayoffEstimate.from_samples(rows[:, 1] - rows[:, 3])
    )
    _ease.info("symmetric game: J1={j1:.6f}, J2={j2:.6f}, closed form {c1:.6f} / {c2:.6f} (ref {ref:.6f})",
               j1=estimate.player1.mean, j2=estimate.player2.mean,
               c1=estimate.closed_form1.mean, c2=estimate.closed_form2.mean, ref=reference)
    return estimate


@timed
def deviation_scan(config: SimConfig, eq: EquilibriumSolution, role: str, trials: Sequence[float],
                   bias_budget: Any = None, budget_paths: int = DEFAULT_BUDGET_PATHS) -> List[DeviationRow]:
    """
    Unilateral deviations from the asymmetric equilibrium on common paths.

    Leader trials reflect at another barrier against the follower's equilibrium response;
    follower trials keep the gap under a constant level against the equilibrium leader.

    Arguments:
        config (SimConfig): The simulation constants; requires y0 >= x0.
        eq (EquilibriumSolution): The solved equilibrium.
        role (str): "leader" or "follower".
        trials (Sequence[float]): Barriers or gap levels, positive.
        bias_budget (float): Discretisation bias of the paired excess; measured per trial if None.
        budget_paths (int): Paths used to measure the bias, 0 to skip.

    Returns:
        rows (List[DeviationRow]): One row per trial, in order.

    Raises:
        DomainError (DomainError): If the role is unknown, a trial is not positive or y0 < x0.
    """
    if role not in (ROLE_LEADER, ROLE_FOLLOWER):
        raise DomainError(f"role must be {ROLE_LEADER!r} or {ROLE_FOLLOWER!r} (got {role!r})")

    if config.y0 < config.x0:
        raise DomainError(f"deviations need y0 >= x0 (got x0={config.x0}, y0={config.y0})")

    truncation = truncation_budget(config, eq)
    rows = []
    for trial in trials:
        if not trial > 0:
            raise DomainError(f"trial levels must be positive (got {trial})")

        samples = sample_paths(config, _deviation_sample, eq, role, float(trial))
        excess = samples[:, 0] - samples[:, 1]
        bias = float(_resolve_budget(config, _excess_sample, (eq, role, float(trial)), bias_budget, budget_paths, 1)[0])
        reference = float(eq.duopoly.barrier_value(config.x0, trial)) if role == ROLE_LEADER else math.nan
        row = DeviationRow(role, float(trial),
                           PayoffEstimate.from_samples(samples[:, 0], truncation, bias),
                           PayoffEstimate.from_samples(excess, truncation, bias),
                           reference)
        _ease.info("{role} trial {trial:.6f}: payoff {mean:.6f}, excess {excess:.3e} +- {se:.1e}",
                   role=role, trial=trial, mean=row.estimate.mean, excess=row.excess.mean, se=row.excess.std_err)
        rows.append(row)

    return rows


def _excess_sample(path: SamplePath, eq: EquilibriumSolution, role: str, trial: float) -> List[float]:
    deviated, reference = _deviation_sample(path, eq, role, trial)
    return [deviated - reference]


@timed
def indifference_check(config: SimConfig, eq: EquilibriumSolution, rules: Sequence[BaseStopRule],
                       bias_budget: Any = None, budget_paths: int = DEFAULT_BUDGET_PATHS) -> List[IndifferenceRow]:
    """
    Value of stopping by a given rule against an opponent playing the randomised strategy.

    E[e^{-r tau} v0(X0_tau)(1 - Gamma_tau) 1{tau < gamma0} + int_0^{tau ^ gamma0} e^{-r t} v2(a0, X0_t) dGamma_t]
    must equal v0(x0) for every rule.

    Arguments:
        config (SimConfig): The simulation constants; x0 is the common reserve.
        eq (EquilibriumSolution): The solved equilibrium.
        rules (Sequence[BaseStopRule]): The stopping rules.
        bias_budget (float): Discretisation bias; measured per rule if None.
        budget_paths (int): Paths used to measure the bias, 0 to skip.

    Returns:
        rows (List[IndifferenceRow]): One row per rule, in order.
    """
    truncation = truncation_budget(config, eq)
    reference = float(eq.duopoly.value(config.x0))
    rows = []
    for rule in rules:
        samples = sample_paths(config, _indifference_sample, eq, rule)
        bias = float(_resolve_budget(config, _indifference_sample, (eq, rule), bias_budget, budget_paths, 1)[0])
        row = IndifferenceRow(rule.name, PayoffEstimate.from_samples(samples[:, 0], truncation, bias), reference)
        _ease.info("indifference {rule}: {mean:.6f} (ref {ref:.6f})", rule=rule.name, mean=row.estimate.mean, ref=reference)
        rows.append(row)

    return rows


__all__ = [
    "FixedTime",
    "FirstHitting",
    "sample_path",
    "gen_paths",
    "sample_paths",
    "measure_bias_budget",
    "truncation_budget",
    "payoff_pair",
    "estimate_asymmetric",
    "estimate_symmetric",
    "deviation_scan",
    "indifference_check"
]
