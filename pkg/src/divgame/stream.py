# Licensed under the MIT License.
# divgame Copyright (C) 2024 divgame contributors.

# std
import os
import sys
import threading

from typing import Any, Dict, List, Optional, Sequence, Union

# site
import logop

# internal
from . import utils
from .base import BaseOutputStream
from .constants import *
from .exceptions import *


class LogOutputStream (logop.StandardOutputStream):
    def __init__(self, name: str = LOG_MARK) -> None:
        """
        Create a log stream on standard error.

        Unlike logop's file stream it looks up `sys.stderr` on every call,
        so it keeps working when the interpreter swaps the stream (test capture).

        Arguments:
            name (str): The name of this output stream.
        """
        super().__init__(name)

    def direct(self, value: str, *args: Any, **kwargs: Any) -> None:
        sys.stderr.write(value.format(*args, **kwargs))

    def call(self, log_format: str, log_unit: logop.typeins.LogUnit) -> None:
        content = logop.utils.format_log_message(log_format, log_unit)
        sys.stderr.write(content)
        sys.stderr.write(CHAR_LF)
        sys.stderr.flush()



class StandardOutputStream (BaseOutputStream):
    name = STANDARD
    target = STDOUT_TARGET

    def __init__(self, name: str = None) -> None:
        """
        Create an artifact stream on standard output.

        Arguments:
            name (str): The name of this output stream.
        """
        self._lock = threading.RLock()
        if isinstance(name, str):
            self.name = name

    @property
    def type(self) -> str:
        """The type of this output stream. | **Read only**"""
        return STANDARD

    def write(self, content: str) -> None:
        """
        Write the rendered artifact.

        Arguments:
            content (str): CSV or JSON text.
        """
        with self._lock:
            sys.stdout.write(content)
            sys.stdout.flush()



class FileOutputStream (StandardOutputStream):
    def __init__(self, target: str, name: str = None) -> None:
        """
        Create an artifact stream on a file.

        The file is replaced, never appended to, so reruns produce identical files.
        Missing parent directories are an error, not created.

        Arguments:
            target (str): The file path.
            name (str): The name of this output stream.

        Raises:
            TypeError (TypeError): The target must be a string or a path.
        """
        super().__init__(name)
        if not isinstance(target, (str, os.PathLike)):
            raise TypeError("The target must be a string or a path.")

        self.target = os.fspath(target)

    @property
    def type(self) -> str:
        return FILE

    def write(self, content: str) -> None:
        """
        Write the rendered artifact.

        Arguments:
            content (str): CSV or JSON text.

        Raises:
            OutputUnwritable (OutputUnwritable): The file cannot be opened or written.
        """
        with self._lock:
            try:
                with open(self.target, "w", encoding="utf-8", newline="") as file:
                    file.write(content)

            except OSError as e:
                raise OutputUnwritable(f"cannot write {self.target}: {e.strerror or e}") from e



def open_stream(target: Optional[str] = None) -> BaseOutputStream:
    """
    Returns the artifact stream for a target.

    Arguments:
        target (str): File path, or None / "-" for standard output.

    Returns:
        stream (BaseOutputStream): The output stream.
    """
    if target is None or target == STDOUT_TARGET:
        return StandardOutputStream()

    return FileOutputStream(target)


def write_records(stream: BaseOutputStream, records: Union[Dict[str, Any], List[Dict[str, Any]]],
                  format_: str, columns: Optional[Sequence[str]] = None) -> None:
    """
    Render records and hand them to a stream.

    Arguments:
        stream (BaseOutputStream): Destination.
        records (dict | list): One flat record or a list of them.
        format_ (str): "csv" or "json".
        columns (Sequence[str]): CSV column order.

    Raises:
        ConfigInvalid (ConfigInvalid): The format is unknown.
    """
    if format_ == FORMAT_JSON:
        stream.write(utils.format_json(records))

    elif format_ == FORMAT_CSV:
        rows = [records] if isinstance(records, dict) else records
        stream.write(utils.format_csv(rows, columns))

    else:
        raise ConfigInvalid(f"unknown output format {format_!r}")



__all__ = [
    "LogOutputStream",
    "StandardOutputStream",
    "FileOutputStream",
    "open_stream",
    "write_records"
]
