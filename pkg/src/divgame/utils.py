# Licensed under the MIT License.
# divgame Copyright (C) 2024 divgame contributors.

# std
import io
import csv
import json
import math

from typing import Union, Callable, Iterable, Sequence, Dict, List, Any, Optional

# site
import numpy as np
import logop

# internal
from . import _state
from .constants import *
from .exceptions import *


def set_default_logging(logging_object: logop.Logging, force: bool = False) -> None:
    """
    Set the default logging object.

    Arguments:
        logging_object (logop.Logging): The logging object to set as default.
        force (bool): Whether to replace an existing default logging object.

    Raises:
        TypeError (TypeError): If the logging_object parameter is not an instance of logop.BaseLogging.
    """
    if not isinstance(logging_object, logop.BaseLogging):
        raise TypeError("The logging object must be an instance of logop.BaseLogging.")

    with _state.lock:
        if _state._default_logging is None or force:
            _state._default_logging = logging_object


def get_default_logging() -> logop.Logging:
    """
    Returns the default logging object.

    If it does not exist yet, it is created at WARN level with a single stream on standard error,
    so that artifacts written to standard output stay machine readable.

    Returns:
        logging (logop.Logging): The default logging object.
    """
    # deferred, stream imports utils
    from .stream import LogOutputStream

    with _state.lock:
        if _state._default_logging is None:
            new_logging = logop.Logging(logop.constants.WARN, LOG_FORMAT, stdout=False)
            new_logging.add_stream(LogOutputStream())
            set_default_logging(new_logging)

        return _state._default_logging


def set_log_level(level: Union[str, int]) -> None:
    """
    Set the level of the default logging object.

    Arguments:
        level (str | int): A logop level or level alias.
    """
    get_default_logging().set_level(level)


def is_number(value: Any) -> bool:
    """Whether the value is a finite real number; `bool` does not count."""
    return isinstance(value, (int, float, np.integer, np.floating)) and not isinstance(value, (bool, np.bool_)) and math.isfinite(value)


def is_integer(value: Any) -> bool:
    """Whether the value is an integer; `bool` does not count."""
    return isinstance(value, (int, np.integer)) and not isinstance(value, (bool, np.bool_))


def bisect(func: Callable[[np.ndarray], np.ndarray], target: Union[float, np.ndarray],
           lower: Union[float, np.ndarray], upper: Union[float, np.ndarray], *,
           increasing: bool = True, tol: float = ROOT_TOLERANCE) -> Union[float, np.ndarray]:
    """
    Solve func(x) = target for a monotone func, elementwise.

    All brackets are halved together, so one call serves a whole array of targets.

    Arguments:
        func (Callable): Vectorised monotone function.
        target (float | np.ndarray): Right-hand sides.
        lower (float | np.ndarray): Lower ends of the brackets.
        upper (float | np.ndarray): Upper ends of the brackets.
        increasing (bool): Whether func increases on the brackets.
        tol (float): Width at which a bracket counts as solved.

    Returns:
        root (float | np.ndarray): The roots, a float for scalar input.

    Raises:
        BracketFailure (BracketFailure): If a target is not enclosed by its bracket.
    """
    target = np.asarray(target, dtype=float)
    lo = np.array(np.broadcast_to(lower, target.shape), dtype=float)
    hi = np.array(np.broadcast_to(upper, target.shape), dtype=float)
    sign = 1.0 if increasing else -1.0

    slack = 1e-9 * np.maximum(1.0, np.abs(target))
    if np.any(sign * (func(lo) - target) > slack) or np.any(sign * (func(hi) - target) < -slack):
        raise BracketFailure("the target is not enclosed by the bracket")

    for _ in range(ROOT_MAXIMUM_ITERATIONS):
        if np.all(hi - lo <= tol):
            break

        mid = 0.5 * (lo + hi)
        above = sign * (func(mid) - target) >= 0
        hi = np.where(above, mid, hi)
        lo = np.where(above, lo, mid)

    root = 0.5 * (lo + hi)
    return float(root) if root.ndim == 0 else root


_CENTRAL = {
    1: ((-2, -1, 1, 2), (1.0, -8.0, 8.0, -1.0)),
    2: ((-2, -1, 0, 1, 2), (-1.0, 16.0, -30.0, 16.0, -1.0))
}

_FORWARD = {
    1: ((0, 1, 2, 3, 4), (-25.0, 48.0, -36.0, 16.0, -3.0)),
    2: ((0, 1, 2, 3, 4, 5), (45.0, -154.0, 214.0, -156.0, 61.0, -10.0))
}


def finite_difference(func: Callable[[np.ndarray, np.ndarray], np.ndarray], v: np.ndarray,
                      lower: np.ndarray, upper: np.ndarray, h: float, order: int) -> np.ndarray:
    """
    Fourth-order finite difference that never leaves [lower, upper].

    The central stencil is used where it fits, a one-sided stencil towards the
    roomier side otherwise; points where nothing fits come back as NaN.

    Arguments:
        func (Callable): func(shifted, mask) evaluates the function at the shifted
            coordinates of the points selected by the boolean mask.
        v (np.ndarray): Coordinates along the differentiated axis.
        lower (np.ndarray): Lower end of the smooth piece of each point.
        upper (np.ndarray): Upper end of the smooth piece of each point.
        h (float): Step.
        order (int): 1 or 2.

    Returns:
        derivative (np.ndarray): The derivative, NaN where no stencil fits.
    """
    v = np.asarray(v, dtype=float)
    lower = np.broadcast_to(lower, v.shape)
    upper = np.broadcast_to(upper, v.shape)
    reach = len(_FORWARD[order][0]) - 1

    central = (v - 2 * h >= lower) & (v + 2 * h <= upper)
    forward = ~central & (v + reach * h <= upper)
    backward = ~central & ~forward & (v - reach * h >= lower)

    offsets, weights = _FORWARD[order]
    backward_weights = tuple(-w for w in weights) if order == 1 else weights
    plans = (
        (central, _CENTRAL[order][0], _CENTRAL[order][1]),
        (forward, offsets, weights),
        (backward, tuple(-k for k in offsets), backward_weights)
    )

    result = np.full(v.shape, np.nan)
    for mask, shifts, coefficients in plans:
        if not mask.any():
            continue

        total = np.zeros(int(mask.sum()))
        for shift, coefficient in zip(shifts, coefficients):
            if coefficient != 0.0:
                total += coefficient * func(v[mask] + shift * h, mask)

        result[mask] = total / (12.0 * h ** order)

    return result


def _plain(value: Any) -> Any:
    if isinstance(value, (bool, np.bool_)):
        return bool(value)

    if isinstance(value, (int, np.integer)):
        return int(value)

    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None

    if isinstance(value, dict):
        return {key: _plain(item) for key, item in value.items()}

    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]

    return value


def format_value(value: Any) -> str:
    """
    Render one CSV cell.

    Arguments:
        value (Any): The cell value.

    Returns:
        cell (str): Floats with 12 significant digits, booleans as true/false, None as empty.
    """
    value = _plain(value)
    if value is None:
        return ""

    if isinstance(value, bool):
        return "true" if value else "false"

    if isinstance(value, float):
        return CSV_FLOAT_SPEC.format(value)

    return str(value)


def format_csv(rows: Iterable[Dict[str, Any]], columns: Optional[Sequence[str]] = None) -> str:
    """
    Render records as CSV with a header row.

    Arguments:
        rows (Iterable[Dict[str, Any]]): The records.
        columns (Sequence[str]): Column order; the keys of the first record by default.

    Returns:
        content (str): The CSV text.
    """
    rows = list(rows)
    if columns is None:
        columns = list(rows[0].keys()) if rows else []

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(row.get(column)) for column in columns])

    return buffer.getvalue()


def format_json(record: Union[Dict[str, Any], List[Dict[str, Any]]]) -> str:
    """
    Render a record as deterministic JSON.

    Arguments:
        record (dict | list): Flat record or list of records; non-finite floats become null.

    Returns:
        content (str): The JSON text with a trailing newline.
    """
    return json.dumps(_plain(record), indent=JSON_INDENT) + "\n"


__all__ = [
    "set_default_logging",
    "get_default_logging",
    "set_log_level",
    "is_number",
    "is_integer",
    "bisect",
    "finite_difference",
    "format_value",
    "format_csv",
    "format_json"
]
