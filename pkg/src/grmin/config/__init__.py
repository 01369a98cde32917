# SPDX-FileCopyrightText: 2025 grmin contributors
# SPDX-License-Identifier: MIT

"""Configuration module for grmin."""

from .constants import (
    DEFAULT_CODEWORD_BUDGET,
    DEFAULT_RING_TABLE_CAP,
    GRCODE_MAGIC,
    MAX_REPORTED_WITNESSES,
    ExitCodes,
)
from .settings import BudgetSettings, RingSpec, SweepSettings, load_budgets

__all__ = [
    "BudgetSettings",
    "DEFAULT_CODEWORD_BUDGET",
    "DEFAULT_RING_TABLE_CAP",
    "ExitCodes",
    "GRCODE_MAGIC",
    "MAX_REPORTED_WITNESSES",
    "RingSpec",
    "SweepSettings",
    "load_budgets",
]
