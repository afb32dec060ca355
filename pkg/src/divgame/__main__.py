# Licensed under the MIT License.
# divgame Copyright (C) 2024 divgame contributors.

# std
import sys

# internal
from .cli import main


sys.exit(main())
