# Licensed under the MIT License.
# divgame Copyright (C) 2024 divgame contributors.

# std
from typing import Optional
from threading import RLock

# site
import logop

lock = RLock()

_default_logging: Optional[logop.Logging] = None


__all__ = []
