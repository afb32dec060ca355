# Licensed under the MIT License.
# divgame Copyright (C) 2024 divgame contributors.

"""
Command line interface.

    divgame <command> [flags]

Flags override values read from a JSON `--config` file. Artifacts go to `--out`
(standard output by default), log lines to standard error.
"""

# std
import re
import json
import argparse

from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

# site
import numpy as np
import logop

# internal
from . import _ease
from . import utils
from .base import BaseStopRule
from .stream import open_stream, write_records
from .typeins import ModelParams, SimConfig, RunConfig, GameEstimate
from .equilibrium import EquilibriumSolution, solve_equilibrium
from .verify import verify_variational
from .montecarlo import FixedTime, FirstHitting, estimate_asymmetric, estimate_symmetric, deviation_scan, indifference_check
from .decorators import timed
from .constants import *
from .exceptions import *


# flag destination -> config key
_MODEL_KEYS = ("mu0", "mu_hat", "sigma", "r")
_SIM_KEYS = ("x0", "y0", "dt", "horizon", "paths", "seed", "workers")
_RUN_KEYS = ("out", "format", "confidence", "budget_paths")

_COMMAND_KEYS = {
    COMMAND_SOLVE: (),
    COMMAND_BOUNDARY: ("points",),
    COMMAND_SURFACE: ("nx", "nz"),
    COMMAND_SIMULATE: ("game",),
    COMMAND_DEVIATE: ("role", "trials"),
    COMMAND_VERIFY: ("nx", "nz"),
    COMMAND_INDIFF: ("rules",)
}

_SIMULATING = (COMMAND_SIMULATE, COMMAND_DEVIATE, COMMAND_INDIFF)

_DEFAULT_FORMATS = {
    COMMAND_SOLVE: FORMAT_JSON,
    COMMAND_BOUNDARY: FORMAT_CSV,
    COMMAND_SURFACE: FORMAT_CSV,
    COMMAND_SIMULATE: FORMAT_JSON,
    COMMAND_DEVIATE: FORMAT_JSON,
    COMMAND_VERIFY: FORMAT_JSON,
    COMMAND_INDIFF: FORMAT_JSON
}

_EXIT_CODES = (
    (OutputUnwritable, EXIT_OUTPUT),
    (ParameterInvalid, EXIT_BAD_INPUT),
    (ConfigInvalid, EXIT_BAD_INPUT),
    (DomainError, EXIT_BAD_INPUT),
    (InvariantViolation, EXIT_FAIL),
    (BracketFailure, EXIT_FAIL)
)

_VALUE_PATTERN = re.compile(r"^(?:(?P<symbol>T|a0)(?:\+(?P<offset>[^+]+))?|(?P<number>[^+]+))$")


def build_parser() -> argparse.ArgumentParser:
    """The argument parser, one sub-command per operation."""
    common = argparse.ArgumentParser(add_help=False)
    model = common.add_argument_group("model")
    model.add_argument("--mu0", type=float, help=f"duopoly drift (default: {DEFAULT_MU0})")
    model.add_argument("--mu-hat", dest="mu_hat", type=float, help=f"monopoly drift (default: {DEFAULT_MU_HAT})")
    model.add_argument("--sigma", type=float, help=f"volatility (default: {DEFAULT_SIGMA})")
    model.add_argument("--r", type=float, help=f"discount rate (default: {DEFAULT_R})")

    sim = common.add_argument_group("simulation")
    sim.add_argument("--x0", type=float, help=f"Player 1's initial reserve (default: {DEFAULT_X0})")
    sim.add_argument("--y0", type=float, help=f"Player 2's initial reserve (default: {DEFAULT_Y0}, x0 for symmetric runs)")
    sim.add_argument("--dt", type=float, help=f"time step (default: {DEFAULT_DT})")
    sim.add_argument("--horizon", type=float, help=f"simulation horizon (default: {DEFAULT_HORIZON})")
    sim.add_argument("--paths", type=int, help=f"number of paths (default: {DEFAULT_PATHS})")
    sim.add_argument("--seed", type=int, help=f"random seed (default: {DEFAULT_SEED})")
    sim.add_argument("--workers", type=int, help=f"worker processes, no effect on results (default: {DEFAULT_WORKERS})")
    sim.add_argument("--confidence", type=float, help=f"standard errors allowed by acceptance checks (default: {CONFIDENCE})")
    sim.add_argument("--budget-paths", dest="budget_paths", type=int,
                     help=f"paths used to measure the time-step bias, 0 to skip (default: {DEFAULT_BUDGET_PATHS})")

    output = common.add_argument_group("output")
    output.add_argument("--out", help="output file, '-' for standard output (default: '-')")
    output.add_argument("--format", choices=(FORMAT_CSV, FORMAT_JSON), help="artifact format")
    output.add_argument("--config", help="JSON file with default values for any flag")
    output.add_argument("-v", "--verbose", action="count", default=0, help="log INFO, or DEBUG when repeated")

    parser = argparse.ArgumentParser(prog="divgame", description="Two-firm dividend game with default: equilibria and Monte Carlo checks.")
    commands = parser.add_subparsers(dest="command", required=True, metavar="command")

    commands.add_parser(COMMAND_SOLVE, parents=[common], help="solve the asymmetric equilibrium constants")

    boundary = commands.add_parser(COMMAND_BOUNDARY, parents=[common], help="tabulate the free boundary b")
    boundary.add_argument("--points", type=int, help=f"rows on [0, 1.5 a0] (default: {BOUNDARY_ROWS})")

    surface = commands.add_parser(COMMAND_SURFACE, parents=[common], help="tabulate the follower's value u2")
    surface.add_argument("--nx", type=int, help=f"grid points in x (default: {SURFACE_GRID})")
    surface.add_argument("--nz", type=int, help=f"grid points in z (default: {SURFACE_GRID})")

    simulate = commands.add_parser(COMMAND_SIMULATE, parents=[common], help="Monte Carlo estimate of an equilibrium")
    simulate.add_argument("--game", choices=(GAME_ASYMMETRIC, GAME_SYMMETRIC), help=f"which equilibrium (default: {GAME_ASYMMETRIC})")

    deviate = commands.add_parser(COMMAND_DEVIATE, parents=[common], help="Monte Carlo of unilateral deviations")
    deviate.add_argument("--role", choices=(ROLE_LEADER, ROLE_FOLLOWER), help=f"deviating player (default: {ROLE_LEADER})")
    deviate.add_argument("--trials", help="comma separated barriers or gaps; a0 / alpha based defaults")

    verify = commands.add_parser(COMMAND_VERIFY, parents=[common], help="finite-difference check of the variational system")
    verify.add_argument("--nx", type=int, help=f"grid points in x (default: {VERIFY_GRID})")
    verify.add_argument("--nz", type=int, help=f"grid points in z (default: {VERIFY_GRID})")

    indiff = commands.add_parser(COMMAND_INDIFF, parents=[common], help="indifference of the randomised strategy")
    indiff.add_argument("--rules", help="comma separated rules, e.g. 'time:0,time:T,hit:a0+0.2'")

    return parser


def load_config(path: Optional[str]) -> Dict[str, Any]:
    """
    Read a JSON configuration file.

    Raises:
        ConfigInvalid (ConfigInvalid): The file cannot be read or is not a JSON object.
    """
    if path is None:
        return {}

    try:
        with open(path, "r", encoding="utf-8") as file:
            content = json.load(file)

    except OSError as e:
        raise ConfigInvalid(f"cannot read config {path}: {e.strerror or e}") from e

    except json.JSONDecodeError as e:
        raise ConfigInvalid(f"config {path} is not valid JSON: {e}") from e

    if not isinstance(content, dict):
        raise ConfigInvalid(f"config {path} must hold a JSON object")

    return content


def resolve(args: argparse.Namespace) -> RunConfig:
    """
    Merge flags over the config file and validate the result.

    Arguments:
        args (argparse.Namespace): Parsed flags.

    Returns:
        config (RunConfig): The validated run.

    Raises:
        ConfigInvalid (ConfigInvalid): Unknown keys or malformed values.
        ParameterInvalid (ParameterInvalid): Constants violating their invariants.
    """
    command = args.command
    allowed = _MODEL_KEYS + _SIM_KEYS + _RUN_KEYS + _COMMAND_KEYS[command]
    values = load_config(args.config)
    unknown = sorted(set(values) - set(allowed))
    if unknown:
        raise ConfigInvalid(f"unknown config keys for {command}: {', '.join(unknown)}")

    for key in allowed:
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag

    params = ModelParams(**{key: values[key] for key in _MODEL_KEYS if key in values})

    sim = None
    if command in _SIMULATING:
        symmetric = command == COMMAND_INDIFF or values.get("game") == GAME_SYMMETRIC
        x0 = values.get("x0", DEFAULT_X0)
        y0 = values.get("y0", x0 if symmetric else DEFAULT_Y0)
        sim = SimConfig(params, x0, y0,
                        dt=values.get("dt", DEFAULT_DT),
                        horizon=values.get("horizon", DEFAULT_HORIZON),
                        n_paths=values.get("paths", DEFAULT_PATHS),
                        seed=values.get("seed", DEFAULT_SEED),
                        workers=values.get("workers", DEFAULT_WORKERS))

    format_ = values.get("format", _DEFAULT_FORMATS[command])
    if format_ not in (FORMAT_CSV, FORMAT_JSON):
        raise ConfigInvalid(f"unknown output format {format_!r}")

    confidence = values.get("confidence", CONFIDENCE)
    if not utils.is_number(confidence) or not confidence > 0:
        raise ConfigInvalid(f"confidence must be a positive number (got {confidence!r})")

    budget_paths = values.get("budget_paths", DEFAULT_BUDGET_PATHS)
    if not utils.is_integer(budget_paths) or budget_paths < 0:
        raise ConfigInvalid(f"budget_paths must be a non-negative integer (got {budget_paths!r})")

    options = {key: values[key] for key in _COMMAND_KEYS[command] if key in values}
    return RunConfig(command, params, sim, values.get("out", STDOUT_TARGET), format_, float(confidence), budget_paths, options)


def _count(options: Dict[str, Any], key: str, default: int, minimum: int) -> int:
    value = options.get(key, default)
    if not utils.is_integer(value) or value < minimum:
        raise ConfigInvalid(f"{key} must be an integer >= {minimum} (got {value!r})")

    return value


def _value(text: str, symbols: Dict[str, float]) -> float:
    match = _VALUE_PATTERN.match(text.strip())
    try:
        if match is None:
            raise ValueError(text)

        if match.group("number") is not None:
            return float(match.group("number"))

        offset = match.group("offset")
        return symbols[match.group("symbol")] + (float(offset) if offset is not None else 0.0)

    except ValueError as e:
        raise ConfigInvalid(f"cannot read value {text!r}") from e


def parse_rules(text: str, horizon: float, a0: float) -> List[BaseStopRule]:
    """
    Read stopping rules such as 'time:0,time:T,hit:a0+0.2'.

    `T` stands for the horizon and `a0` for the leader's barrier.

    Raises:
        ConfigInvalid (ConfigInvalid): A rule is malformed.
    """
    symbols = {"T": horizon, "a0": a0}
    rules = []
    for item in filter(None, (part.strip() for part in text.split(","))):
        kind, _, argument = item.partition(":")
        if kind == STOP_RULE_TIME:
            rules.append(FixedTime(_value(argument, symbols)))

        elif kind == STOP_RULE_HIT:
            rules.append(FirstHitting(_value(argument, symbols)))

        else:
            raise ConfigInvalid(f"unknown stopping rule {item!r}, expected {STOP_RULE_TIME}:<t> or {STOP_RULE_HIT}:<level>")

    if not rules:
        raise ConfigInvalid("at least one stopping rule is required")

    return rules


def parse_trials(text: Any) -> List[float]:
    if isinstance(text, (list, tuple)):
        items = list(text)

    else:
        items = [part for part in str(text).split(",") if part.strip()]

    try:
        trials = [float(item) for item in items]

    except (TypeError, ValueError) as e:
        raise ConfigInvalid(f"cannot read trials {text!r}") from e

    if not trials:
        raise ConfigInvalid("at least one trial is required")

    return trials


def default_trials(eq: EquilibriumSolution, role: str, x0: float) -> List[float]:
    """Leader barriers {0.5, 0.75, 1, 1.25, 1.5} a0, follower gaps {alpha / 2, alpha, b(x0), 2 b(x0)}."""
    if role == ROLE_LEADER:
        return [factor * eq.a0 for factor in (0.5, 0.75, 1.0, 1.25, 1.5)]

    height = float(eq.boundary_b(x0))
    return [eq.alpha / 2, eq.alpha, height, 2 * height]


def _budget(run: RunConfig) -> Optional[float]:
    # None asks the estimators to measure it
    return None if run.budget_paths > 0 else 0.0


def _game_record(run: RunConfig, estimate: GameEstimate) -> Dict[str, Any]:
    record = {"game": estimate.game}
    record.update(run.sim.as_record())
    record.update(reference1=estimate.reference1, reference2=estimate.reference2)
    record.update(estimate.player1.as_record("player1_"))
    record.update(estimate.player2.as_record("player2_"))
    for prefix, item in (("closed_form1_", estimate.closed_form1), ("closed_form2_", estimate.closed_form2),
                         ("agreement1_", estimate.agreement1), ("agreement2_", estimate.agreement2)):
        if item is not None:
            record.update(item.as_record(prefix))

    record.update(follower_first=estimate.follower_first, simultaneous=estimate.simultaneous,
                  passed=estimate.passed(run.confidence))
    return record


def run_solve(run: RunConfig) -> Tuple[Any, Optional[Sequence[str]], bool]:
    eq = solve_equilibrium(run.params)
    record = eq.summary()
    return record, None, record["passed"]


def run_boundary(run: RunConfig) -> Tuple[Any, Optional[Sequence[str]], bool]:
    points = _count(run.options, "points", BOUNDARY_ROWS, 2)
    eq = solve_equilibrium(run.params)
    xs = np.linspace(0.0, (1.0 + BOUNDARY_MARGIN) * eq.a0, points)
    heights = eq.boundary_b(xs)
    return [{"x": x, "b_x": b} for x, b in zip(xs, heights)], ("x", "b_x"), True


def run_surface(run: RunConfig) -> Tuple[Any, Optional[Sequence[str]], bool]:
    nx = _count(run.options, "nx", SURFACE_GRID, 2)
    nz = _count(run.options, "nz", SURFACE_GRID, 2)
    eq = solve_equilibrium(run.params)
    grid_x, grid_z = np.meshgrid(np.linspace(0.0, eq.a0, nx), np.linspace(-eq.a0, eq.a_hat + VERIFY_Z_MARGIN, nz), indexing="ij")
    inside = grid_z >= -grid_x
    x, z = grid_x[inside], grid_z[inside]
    values = eq.u2_eval(x, z)
    labels = eq.region(x, z)
    rows = [{"x": a, "z": b, "u2": u, "region": str(label)} for a, b, u, label in zip(x, z, values, labels)]
    return rows, ("x", "z", "u2", "region"), True


def run_simulate(run: RunConfig) -> Tuple[Any, Optional[Sequence[str]], bool]:
    eq = solve_equilibrium(run.params)
    game = run.options.get("game", GAME_ASYMMETRIC)
    if game == GAME_SYMMETRIC:
        estimate = estimate_symmetric(run.sim, eq, _budget(run), run.budget_paths)

    elif game == GAME_ASYMMETRIC:
        estimate = estimate_asymmetric(run.sim, eq, _budget(run), run.budget_paths)

    else:
        raise ConfigInvalid(f"game must be {GAME_ASYMMETRIC!r} or {GAME_SYMMETRIC!r} (got {game!r})")

    record = _game_record(run, estimate)
    return record, None, record["passed"]


def run_deviate(run: RunConfig) -> Tuple[Any, Optional[Sequence[str]], bool]:
    eq = solve_equilibrium(run.params)
    role = run.options.get("role", ROLE_LEADER)
    if role not in (ROLE_LEADER, ROLE_FOLLOWER):
        raise ConfigInvalid(f"role must be {ROLE_LEADER!r} or {ROLE_FOLLOWER!r} (got {role!r})")

    trials = parse_trials(run.options["trials"]) if "trials" in run.options else default_trials(eq, role, run.sim.x0)
    rows = []
    for row in deviation_scan(run.sim, eq, role, trials, _budget(run), run.budget_paths):
        record = {"role": row.role, "trial": row.trial, "reference": row.reference}
        record.update(row.estimate.as_record())
        record.update(row.excess.as_record("excess_"))
        record["passed"] = row.passed(run.confidence)
        rows.append(record)

    passed = all(row["passed"] for row in rows)
    if run.format == FORMAT_CSV:
        return rows, None, passed

    record = {"passed": passed}
    record.update(run.sim.as_record())
    record["rows"] = rows
    return record, None, passed


def run_verify(run: RunConfig) -> Tuple[Any, Optional[Sequence[str]], bool]:
    nx = _count(run.options, "nx", VERIFY_GRID, VERIFY_MINIMUM_GRID)
    nz = _count(run.options, "nz", VERIFY_GRID, VERIFY_MINIMUM_GRID)
    eq = solve_equilibrium(run.params)
    report = verify_variational(eq, nx, nz)
    if run.format == FORMAT_CSV:
        rows = [{"name": check.name, "violation": check.violation, "tolerance": check.tolerance,
                 "points": check.points, "passed": check.passed} for check in report.checks]
        return rows, None, report.passed

    record = {"passed": report.passed, "step": report.step, "skipped": report.skipped}
    for check in report.checks:
        record.update({
            f"{check.name}_violation": check.violation,
            f"{check.name}_tolerance": check.tolerance,
            f"{check.name}_points": check.points,
            f"{check.name}_passed": check.passed
        })

    return record, None, report.passed


def run_indiff(run: RunConfig) -> Tuple[Any, Optional[Sequence[str]], bool]:
    eq = solve_equilibrium(run.params)
    horizon = run.sim.n_steps * run.sim.dt
    text = run.options.get("rules", f"{STOP_RULE_TIME}:0,{STOP_RULE_TIME}:T,{STOP_RULE_HIT}:a0+{INDIFFERENCE_HIT_OFFSET}")
    rules = parse_rules(str(text), horizon, eq.a0)
    rows = []
    for row in indifference_check(run.sim, eq, rules, _budget(run), run.budget_paths):
        record = {"rule": row.rule, "reference": row.reference}
        record.update(row.estimate.as_record())
        record["passed"] = row.passed(run.confidence)
        rows.append(record)

    passed = all(row["passed"] for row in rows)
    if run.format == FORMAT_CSV:
        return rows, None, passed

    record = {"passed": passed}
    record.update(run.sim.as_record())
    record["rows"] = rows
    return record, None, passed


_COMMANDS: Dict[str, Callable[[RunConfig], Tuple[Any, Optional[Sequence[str]], bool]]] = {
    COMMAND_SOLVE: run_solve,
    COMMAND_BOUNDARY: run_boundary,
    COMMAND_SURFACE: run_surface,
    COMMAND_SIMULATE: run_simulate,
    COMMAND_DEVIATE: run_deviate,
    COMMAND_VERIFY: run_verify,
    COMMAND_INDIFF: run_indiff
}


def execute(run: RunConfig) -> int:
    """
    Run a validated command and write its artifact.

    Returns:
        code (int): 0 when the acceptance checks pass, 1 otherwise.
    """
    records, columns, passed = timed(_COMMANDS[run.command], label=run.command)(run)
    write_records(open_stream(run.output_path), records, run.format, columns)
    return EXIT_PASS if passed else EXIT_FAIL


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Entry point of the `divgame` command.

    Arguments:
        argv (Sequence[str]): Arguments without the program name; `sys.argv[1:]` by default.

    Returns:
        code (int): 0 pass, 1 acceptance failure, 2 bad input, 3 output failure.
    """
    args = build_parser().parse_args(argv)
    if args.verbose:
        utils.set_log_level(logop.constants.DEBUG if args.verbose > 1 else logop.constants.INFO)

    try:
        run = resolve(args)
        code = execute(run)

    except DivgameBaseException as e:
        for kind, code in _EXIT_CODES:
            if isinstance(e, kind):
                break

        else:
            code = EXIT_FAIL

        _ease.error("{kind}: {error}", kind=type(e).__name__, error=e)
        return code

    if code != EXIT_PASS:
        _ease.warn("{command}: acceptance checks failed", command=run.command)

    return code


__all__ = ["build_parser", "load_config", "resolve", "parse_rules", "parse_trials", "default_trials", "execute", "main"]
