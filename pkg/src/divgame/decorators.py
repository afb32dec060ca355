# Licensed under the MIT License.
# divgame Copyright (C) 2024 divgame contributors.

# std
import time
import functools
import traceback

from typing import Callable, Optional

# site
import logop

# internal
from . import _ease
from .constants import *
from .exceptions import DivgameBaseException


def timed(callable_: Callable = None, *, label: Optional[str] = None, level: str = logop.constants.DEBUG_ALIAS) -> Callable:
    """
    Decorator for timing long computations.

    Logs the elapsed wall time on return and the traceback when the call raises.
    Arguments and results are never logged; they are arrays and solutions.

    Arguments:
        callable (Callable): The function to be decorated.
        label (str): Name used in the log lines; the function name by default.
        level (str): Level alias of the timing line.

    Returns:
        decorator (Callable): The decorated function or the decorator waiting for the decorated function.
    """
    def decorate(function: Callable) -> Callable:
        name = label or function.__name__

        @functools.wraps(function)
        def shell(*args, **kwargs):
            start = time.perf_counter()
            try:
                result = function(*args, **kwargs)

            except DivgameBaseException as e:
                # ! reported by the caller, no traceback
                _ease.ease.logging.call(logop.constants.DEBUG_ALIAS, "{name} raised {kind}: {error}",
                                        log_mark=LOG_MARK, name=name, kind=type(e).__name__, error=e)
                raise

            except Exception:
                _ease.ease.logging.call(logop.constants.ERROR_ALIAS, "{name} failed after {elapsed:.3f}s\n{trace}",
                                        log_mark=LOG_MARK, name=name, elapsed=time.perf_counter() - start,
                                        trace=traceback.format_exc().rstrip())
                raise

            _ease.ease.logging.call(level, "{name} finished in {elapsed:.3f}s",
                                    log_mark=LOG_MARK, name=name, elapsed=time.perf_counter() - start)
            return result

        return shell

    if callable_ is None:
        return decorate

    return decorate(callable_)


__all__ = ["timed"]
