# SPDX-FileCopyrightText: 2025 grmin contributors
# SPDX-License-Identifier: MIT

"""Core algebra: rings, modules, codes, constructions and bounds."""

from .bounds import bound_report, exhaustive_k2_search, k2_exact, length_lower_bound
from .codes import (
    GeneratorMultiset,
    LinearCode,
    MinimalityReport,
    build_code,
    is_minimal_code_bruteforce,
    is_minimal_code_criterion,
)
from .constructions import build_cf, classify_codeword_vector, lambda0, minimality_witness
from .functions import FunctionTable, MonomialPoly, canonical_f, check_conditions
from .linalg import RingMatrix, RingVector, mccoy_rank
from .ring import RingContext, RingElement, make_ring

__all__ = [
    "RingContext",
    "RingElement",
    "make_ring",
    "RingVector",
    "RingMatrix",
    "mccoy_rank",
    "GeneratorMultiset",
    "LinearCode",
    "MinimalityReport",
    "build_code",
    "is_minimal_code_bruteforce",
    "is_minimal_code_criterion",
    "FunctionTable",
    "MonomialPoly",
    "canonical_f",
    "check_conditions",
    "lambda0",
    "build_cf",
    "classify_codeword_vector",
    "minimality_witness",
    "length_lower_bound",
    "k2_exact",
    "bound_report",
    "exhaustive_k2_search",
]
