# Licensed under the MIT License.
# divgame Copyright (C) 2024 divgame contributors.

class DivgameBaseException (Exception):
    """Divgame base exception."""

class ParameterInvalid (DivgameBaseException):
    """The model or simulation constants violate their invariants."""

class DomainError (DivgameBaseException, ValueError):
    """The argument lies outside the domain of the operation."""

class ConfigInvalid (DivgameBaseException):
    """The run configuration is incomplete or malformed."""

class BracketFailure (DivgameBaseException):
    """The root bracket does not change sign."""

class InvariantViolation (DivgameBaseException):
    """A mathematical invariant failed at run time."""

class OutputUnwritable (DivgameBaseException):
    """The output target cannot be written."""


__all__ = [x for x in dir() if not x.startswith("_")]
