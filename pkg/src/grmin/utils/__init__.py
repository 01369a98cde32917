# SPDX-FileCopyrightText: 2025 grmin contributors
# SPDX-License-Identifier: MIT

"""Utility modules for grmin: consoles, progress bars and worker sweeps.

File formats live in :mod:`grmin.utils.codefile`, which depends on the core
modules and is therefore not imported here.
"""

from .console import create_console, get_console, get_error_console, set_console
from .progress import SweepProgress
from .sweep import map_tasks, partition_range

__all__ = [
    "create_console",
    "get_console",
    "get_error_console",
    "set_console",
    "SweepProgress",
    "map_tasks",
    "partition_range",
]
