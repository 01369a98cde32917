# SPDX-FileCopyrightText: 2025 grmin contributors
# SPDX-License-Identifier: MIT

"""Constants and default values for grmin."""

# Enumeration budgets (all configurable through BudgetSettings / GRMIN_BUDGET)
DEFAULT_CODEWORD_BUDGET = 2**16  # |C| for the brute-force codeword oracle
DEFAULT_CODEWORD_LENGTH_CAP = 64  # k for the brute-force codeword oracle
DEFAULT_DUAL_BUDGET = 2**24  # q^{nk} for dual enumeration
DEFAULT_ORTHOGONAL_BUDGET = 2**20  # q^{nm} for brute-force orthogonal modules
DEFAULT_WITNESS_BUDGET = 2**20  # candidate points examined by a witness search
DEFAULT_SEARCH_BUDGET = 2**22  # candidate column sets in the k2 search
DEFAULT_RING_TABLE_CAP = 1024  # largest |R| for which operation tables are built

# Reporting
MAX_REPORTED_WITNESSES = 16
MESSAGE_CHUNK_CELLS = 2**22  # messages x columns encoded per numpy batch
FUNCTION_TABLE_CAP = 2**22  # largest |R|^m tabulated by a FunctionTable

# File formats
GRCODE_MAGIC = "GRCODE 1"
RING_DESCRIPTOR_PREFIX = "GR"
FUNCTION_TABLE_FORMAT = "grmin-function/1"

# Environment
BUDGET_ENV_VAR = "GRMIN_BUDGET"

# Construction families understood by canonical_f / check_conditions
FUNCTION_FAMILIES = ("thm43", "thm46", "poly")
CONDITION_FAMILIES = ("thm43", "thm43_no_cond2", "thm46", "poly")
DOMAIN_MODES = ("all_nonzero", "root_words_only")


# Error codes
class ExitCodes:
    """Exit codes for CLI operations."""

    SUCCESS = 0
    VERDICT_FALSE = 1
    USAGE_ERROR = 2


# Logging configuration
LOG_FORMAT_VERBOSE = "<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | <cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>"
LOG_FORMAT_DEFAULT = "<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | <level>{message}</level>"
LOG_FORMAT_QUIET = "<level>{message}</level>"
