# Licensed under the MIT License.
# divgame Copyright (C) 2024 divgame contributors.

# std
from abc import ABC, abstractmethod
from typing import *

# site
import numpy as np

# internal
from .typeins import SamplePath
from .constants import *


class BaseBoundary: ...
class BaseStopRule: ...
class BaseOutputStream: ...


class BaseBoundary (ABC):
    """
    The follower's payout trigger.

    The follower pays whatever pushes the gap Z = Y - X above `height(X)`,
    while the leader reflects its own reserve at `barrier`.
    """
    barrier: float

    @abstractmethod
    def height(self, x: np.ndarray) -> np.ndarray: ...



class BaseStopRule (ABC):
    """
    A stopping rule of the uncontrolled reserve.

    Its main job is to turn one sample path into the grid index at which the waiting player stops.
    """
    name: str

    @abstractmethod
    def index(self, path: SamplePath, free: np.ndarray) -> int: ...



class BaseOutputStream (ABC):
    """
    The artifact output stream.

    Its main job is to deliver rendered CSV or JSON text to its target.
    """
    name: str
    type: str
    target: str

    @abstractmethod
    def write(self, content: str) -> None: ...



__all__ = ["BaseBoundary", "BaseStopRule", "BaseOutputStream"]
