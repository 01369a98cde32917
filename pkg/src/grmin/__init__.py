# SPDX-FileCopyrightText: 2025 grmin contributors
# SPDX-License-Identifier: MIT

"""grmin - minimal linear codes over Galois rings GR(p^n, ell).

This package builds Galois-ring arithmetic tables, checks minimality of
linear codes by brute force and by the orthogonal-module criterion, and
constructs minimal codes from generator multisets and q^n-ary functions.
"""

from importlib.metadata import PackageNotFoundError

# Dynamic version detection using hatch-vcs
from importlib.metadata import version as _get_version

from .config.settings import BudgetSettings, SweepSettings
from .core.bounds import bound_report, k2_exact
from .core.codes import GeneratorMultiset, build_code, is_minimal_code_criterion
from .core.constructions import build_cf, lambda0
from .core.functions import FunctionTable, canonical_f
from .core.ring import RingContext, make_ring

try:
    __version__ = _get_version("grmin")
except PackageNotFoundError:  # pragma: no cover
    __version__ = "0.0.0+unknown"
__author__ = "grmin contributors"
__license__ = "MIT"

__all__ = [
    "BudgetSettings",
    "SweepSettings",
    "RingContext",
    "make_ring",
    "GeneratorMultiset",
    "build_code",
    "is_minimal_code_criterion",
    "FunctionTable",
    "canonical_f",
    "lambda0",
    "build_cf",
    "bound_report",
    "k2_exact",
    "__version__",
]


def get_version() -> str:
    """Get the current grmin version."""
    return __version__


def get_package_info() -> dict[str, str]:
    """Get package information."""
    return {
        "name": "grmin",
        "version": __version__,
        "author": __author__,
        "license": __license__,
        "description": "Minimal linear codes over Galois rings",
        "families": "lambda0, thm43, thm46, poly",
        "methods": "criterion, bruteforce",
    }
