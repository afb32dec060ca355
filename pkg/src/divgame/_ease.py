# Licensed under the MIT License.
# divgame Copyright (C) 2024 divgame contributors.

# std
from typing import AnyStr

# site
import logop
from typex import Singleton

# internal
from . import utils
from .constants import *


class _Ease (Singleton):
    @property
    def logging(self) -> logop.Logging:
        return utils.get_default_logging()


ease = _Ease()


def _call(level_alias: str, message: str, back_count: int, *args: AnyStr, **kwargs: AnyStr) -> None:
    ease.logging.call(level_alias, message, *args, log_mark=LOG_MARK, back_count=back_count + 2, **kwargs)


def debug(message: str = "", *args: AnyStr, back_count: int = 0, **kwargs: AnyStr) -> None:
    """
    Log a DEBUG message on the package logger.

    Arguments:
        message (str): Format template, filled from args and kwargs.
        back_count (int): Extra frames to skip when locating the caller.
    """
    _call(logop.constants.DEBUG_ALIAS, message, back_count, *args, **kwargs)


def info(message: str = "", *args: AnyStr, back_count: int = 0, **kwargs: AnyStr) -> None:
    """Log an INFO message on the package logger."""
    _call(logop.constants.INFO_ALIAS, message, back_count, *args, **kwargs)


def warn(message: str = "", *args: AnyStr, back_count: int = 0, **kwargs: AnyStr) -> None:
    """Log a WARN message on the package logger."""
    _call(logop.constants.WARN_ALIAS, message, back_count, *args, **kwargs)


def error(message: str = "", *args: AnyStr, back_count: int = 0, **kwargs: AnyStr) -> None:
    """Log an ERROR message on the package logger."""
    _call(logop.constants.ERROR_ALIAS, message, back_count, *args, **kwargs)


# ! __all__ leaves out `ease`, as in logop.
__all__ = ["debug", "info", "warn", "error"]
