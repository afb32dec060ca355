# Licensed under the MIT License.
# divgame Copyright (C) 2024 divgame contributors.

# std
import math

from typing import Tuple, List, Dict, Optional, Any
from dataclasses import dataclass, field, replace

# site
import numpy as np

# internal
from .constants import *
from .exceptions import *
from .utils import is_number, is_integer


@dataclass(frozen=True)
class ModelParams (object):
    """
    Market constants shared by every computation.

    Contains the duopoly drift, the monopoly drift, the volatility and the discount rate.
    """
    mu0: float = DEFAULT_MU0
    mu_hat: float = DEFAULT_MU_HAT
    sigma: float = DEFAULT_SIGMA
    r: float = DEFAULT_R

    def __post_init__(self):
        for name in ("mu0", "mu_hat", "sigma", "r"):
            value = getattr(self, name)
            if not is_number(value):
                raise ParameterInvalid(f"{name} must be a finite number (got {value!r})")

        if self.mu0 <= 0:
            raise ParameterInvalid(f"mu0 must be positive (got mu0={self.mu0})")

        if self.mu_hat <= self.mu0:
            raise ParameterInvalid(f"mu_hat must exceed mu0 (got mu_hat={self.mu_hat}, mu0={self.mu0})")

        if self.sigma <= 0:
            raise ParameterInvalid(f"sigma must be positive (got sigma={self.sigma})")

        if self.r <= 0:
            raise ParameterInvalid(f"r must be positive (got r={self.r})")

    def as_record(self) -> Dict[str, float]:
        return {"mu0": self.mu0, "mu_hat": self.mu_hat, "sigma": self.sigma, "r": self.r}


@dataclass(frozen=True)
class SimConfig (object):
    """
    Monte Carlo configuration.

    `workers` only changes how the path map is scheduled, never the result,
    so it takes no part in equality.
    """
    params: ModelParams = field(default_factory=ModelParams)
    x0: float = DEFAULT_X0
    y0: float = DEFAULT_Y0
    dt: float = DEFAULT_DT
    horizon: float = DEFAULT_HORIZON
    n_paths: int = DEFAULT_PATHS
    seed: int = DEFAULT_SEED
    workers: int = field(default=DEFAULT_WORKERS, compare=False)

    def __post_init__(self):
        if not isinstance(self.params, ModelParams):
            raise ParameterInvalid(f"params must be ModelParams (got {type(self.params).__name__})")

        for name in ("x0", "y0", "dt", "horizon"):
            value = getattr(self, name)
            if not is_number(value):
                raise ParameterInvalid(f"{name} must be a finite number (got {value!r})")

        if not self.dt > 0:
            raise ParameterInvalid(f"dt must be positive (got dt={self.dt})")

        if not self.horizon >= MINIMUM_HORIZON_STEPS * self.dt:
            raise ParameterInvalid(f"horizon must cover at least {MINIMUM_HORIZON_STEPS} steps (got horizon={self.horizon}, dt={self.dt})")

        if not is_integer(self.n_paths) or self.n_paths < 1:
            raise ParameterInvalid(f"n_paths must be a positive integer (got {self.n_paths!r})")

        if not is_integer(self.seed) or not 0 <= self.seed < 2 ** SEED_BITS:
            raise ParameterInvalid(f"seed must be an integer in [0, 2**{SEED_BITS}) (got {self.seed!r})")

        if not is_integer(self.workers) or self.workers < 1:
            raise ParameterInvalid(f"workers must be a positive integer (got {self.workers!r})")

        if self.x0 < 0 or self.y0 < 0:
            raise ParameterInvalid(f"initial reserves must be non-negative (got x0={self.x0}, y0={self.y0})")

    @property
    def n_steps(self) -> int:
        """Number of time steps on the horizon. | **Read only**"""
        return int(round(self.horizon / self.dt))

    def refined(self) -> "SimConfig":
        """The same configuration with half the time step."""
        return replace(self, dt=self.dt / 2)

    def as_record(self) -> Dict[str, Any]:
        record = self.params.as_record()
        record.update(x0=self.x0, y0=self.y0, dt=self.dt, horizon=self.horizon, n_paths=self.n_paths, seed=self.seed)
        return record


@dataclass
class SamplePath (object):
    """
    One Brownian sample on the time grid.

    Holds B at grid times (B_0 = 0), both initial reserves and the two uniform draws
    that drive the randomised first move of the symmetric game.
    """
    dt: float
    n_steps: int
    brownian: np.ndarray
    x0: float
    y0: float
    params: ModelParams
    draws: Tuple[float, float] = (1.0, 1.0)
    index: int = 0

    def __post_init__(self):
        if not self.dt > 0:
            raise ParameterInvalid(f"dt must be positive (got dt={self.dt})")

        self.brownian = np.asarray(self.brownian, dtype=float)
        if self.brownian.shape != (self.n_steps + 1,) or self.brownian[0] != 0.0:
            raise ParameterInvalid("brownian must hold n_steps + 1 values starting at 0")

    @property
    def times(self) -> np.ndarray:
        """Grid times. | **Read only**"""
        return np.arange(self.n_steps + 1) * self.dt

    def free(self, x: float) -> np.ndarray:
        """
        Uncontrolled reserve started at x.

        Arguments:
            x (float): Initial reserve.

        Returns:
            reserve (np.ndarray): x + mu0 t + sigma B on the grid.
        """
        return x + self.params.mu0 * self.times + self.params.sigma * self.brownian

    def coarsen(self) -> "SamplePath":
        """
        The same path observed on every other grid point.

        Raises:
            ParameterInvalid (ParameterInvalid): If the number of steps is odd.
        """
        if self.n_steps % 2:
            raise ParameterInvalid("only paths with an even number of steps can be coarsened")

        return SamplePath(self.dt * 2, self.n_steps // 2, self.brownian[::2].copy(),
                          self.x0, self.y0, self.params, self.draws, self.index)


@dataclass
class ControlledTrajectory (object):
    """
    One discretised realisation of the controlled pair.

    `l` is Player 1's cumulative dividend and `d` Player 2's; default indices are
    `None` when the reserve stays positive up to the horizon.
    """
    times: np.ndarray
    x: np.ndarray
    y: np.ndarray
    l: np.ndarray
    d: np.ndarray
    gamma_x: Optional[int] = None
    gamma_y: Optional[int] = None
    leader_tag: Optional[int] = None

    @property
    def end(self) -> int:
        """Last index that counts for payoffs. | **Read only**"""
        candidates = [k for k in (self.gamma_x, self.gamma_y) if k is not None]
        return min(candidates) if candidates else len(self.times) - 1

    @property
    def gap(self) -> np.ndarray:
        """Z = Y - X. | **Read only**"""
        return self.y - self.x


@dataclass
class HazardTrack (object):
    """Cumulative intensity along the uncontrolled reserve and the induced Gamma."""
    integral: np.ndarray
    gamma: np.ndarray


@dataclass
class PayoffEstimate (object):
    """
    Monte Carlo estimate of a discounted payoff.

    Reported intervals are mean +- k * std_err with k chosen by the caller.
    """
    mean: float
    std_err: float
    n: int
    truncation_budget: float = 0.0
    bias_budget: float = 0.0

    @classmethod
    def from_samples(cls, samples: np.ndarray, truncation_budget: float = 0.0, bias_budget: float = 0.0) -> "PayoffEstimate":
        samples = np.asarray(samples, dtype=float)
        n = samples.size
        std_err = float(samples.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0
        return cls(float(samples.mean()), std_err, n, truncation_budget, bias_budget)

    def tolerance(self, confidence: float = CONFIDENCE) -> float:
        return confidence * self.std_err + self.bias_budget + self.truncation_budget + ACCEPTANCE_FLOOR

    def within(self, reference: float, confidence: float = CONFIDENCE) -> bool:
        """
        Check consistency with a reference value.

        Arguments:
            reference (float): The exact value.
            confidence (float): Multiplier of the standard error.

        Returns:
            consistent (bool): `True` if the distance is inside the error budget.
        """
        return abs(self.mean - reference) <= self.tolerance(confidence)

    def as_record(self, prefix: str = "") -> Dict[str, float]:
        return {
            f"{prefix}mean": self.mean,
            f"{prefix}std_err": self.std_err,
            f"{prefix}n": self.n,
            f"{prefix}truncation_budget": self.truncation_budget,
            f"{prefix}bias_budget": self.bias_budget
        }


@dataclass
class GameEstimate (object):
    """
    Both players' estimates of one game together with their exact references.

    The closed-form fields are only filled for the symmetric game, where
    `agreement1` / `agreement2` estimate the paired trajectory minus closed-form difference.
    """
    game: str
    player1: PayoffEstimate
    player2: PayoffEstimate
    reference1: float
    reference2: float
    follower_first: int = 0
    simultaneous: int = 0
    closed_form1: Optional[PayoffEstimate] = None
    closed_form2: Optional[PayoffEstimate] = None
    agreement1: Optional[PayoffEstimate] = None
    agreement2: Optional[PayoffEstimate] = None

    def passed(self, confidence: float = CONFIDENCE) -> bool:
        checks = [
            self.player1.within(self.reference1, confidence),
            self.player2.within(self.reference2, confidence),
            self.follower_first == 0
        ]
        for agreement in (self.agreement1, self.agreement2):
            if agreement is not None:
                checks.append(abs(agreement.mean) <= confidence * agreement.std_err + ACCEPTANCE_FLOOR)

        return all(checks)


@dataclass
class DeviationRow (object):
    """
    One trial of a deviation scan.

    `excess` is the paired difference between the deviator's payoff and its equilibrium
    payoff on the same paths; the trial passes when it is not significantly positive.
    """
    role: str
    trial: float
    estimate: PayoffEstimate
    excess: PayoffEstimate
    reference: float = math.nan

    def passed(self, confidence: float = CONFIDENCE) -> bool:
        return self.excess.mean <= self.excess.tolerance(confidence)


@dataclass
class IndifferenceRow (object):
    """One stopping rule of the indifference check."""
    rule: str
    estimate: PayoffEstimate
    reference: float

    def passed(self, confidence: float = CONFIDENCE) -> bool:
        return self.estimate.within(self.reference, confidence)


@dataclass
class ResidualCheck (object):
    """Largest violation of one condition of the variational system."""
    name: str
    violation: float
    tolerance: float
    points: int

    @property
    def passed(self) -> bool:
        return self.points > 0 and self.violation <= self.tolerance


@dataclass
class ResidualReport (object):
    """Outcome of the variational verification."""
    checks: List[ResidualCheck]
    step: float
    skipped: int = 0

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def __getitem__(self, name: str) -> ResidualCheck:
        for check in self.checks:
            if check.name == name:
                return check

        raise KeyError(name)


@dataclass
class RunConfig (object):
    """
    A validated command line invocation.

    `options` carries the command-specific settings (grid sizes, trials, rules, ...).
    """
    command: str
    params: ModelParams
    sim: Optional[SimConfig] = None
    output_path: str = STDOUT_TARGET
    format: Optional[str] = None
    confidence: float = CONFIDENCE
    budget_paths: int = DEFAULT_BUDGET_PATHS
    options: Dict[str, Any] = field(default_factory=dict)



__all__ = [
    "ModelParams",
    "SimConfig",
    "SamplePath",
    "ControlledTrajectory",
    "HazardTrack",
    "PayoffEstimate",
    "GameEstimate",
    "DeviationRow",
    "IndifferenceRow",
    "ResidualCheck",
    "ResidualReport",
    "RunConfig"
]
