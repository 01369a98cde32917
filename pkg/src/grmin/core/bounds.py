# SPDX-FileCopyrightText: 2025 grmin contributors
# SPDX-License-Identifier: MIT

"""Length bounds for minimal codes and the exhaustive search for k(2).

Lower bounds are exact ``Fraction`` values: q^{n-m} is fractional once m > n.
"""

from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Callable, NamedTuple, Optional

import numpy as np
from loguru import logger
from pydantic import BaseModel, Field

from ..config.settings import BudgetSettings, SweepSettings
from ..utils.sweep import map_tasks
from .codes import GeneratorMultiset, is_minimal_codeword_criterion
from .constructions import lambda0_length
from .linalg import RingVector, all_vectors, encode_messages, mccoy_rank, root_word_mask
from .ring import RingContext


class BoundsError(Exception):
    """Exception raised for invalid bound requests or exhausted searches."""

    pass


class LowerBound(NamedTuple):
    """Length lower bound for minimal [k, m] codes: k > value, or k >= value."""

    value: Fraction
    strict: bool
    case: str

    @property
    def ceiling(self) -> int:
        """Smallest integer length allowed by the bound."""
        if self.strict:
            return int(self.value // 1) + 1
        return -int(-self.value // 1)

    def satisfied_by(self, length: int) -> bool:
        return length > self.value if self.strict else length >= self.value

    def __str__(self) -> str:
        return f"k {'>' if self.strict else '>='} {self.value}"


def length_lower_bound(ctx: RingContext, m: int) -> LowerBound:
    """Lower bound on the length of a minimal code of dimension m over ctx.

    Raises:
        BoundsError: If m < 2
    """
    if m < 2:
        raise BoundsError(f"Length bounds need m >= 2, got {m}")
    q, n = ctx.q, ctx.n
    if m >= 3:
        return LowerBound(Fraction((m - 1) * q**n) + Fraction(q) ** (n - m), True, "m>=3")
    if n >= 3:
        return LowerBound(Fraction(q**n + q ** (n - 2) + 1), True, "m=2,n>=3")
    if n == 2:
        return LowerBound(Fraction(q**2 + 2), False, "m=2,n=2")
    return LowerBound(Fraction(q + 1), False, "m=2,n=1")


def k2_exact(ctx: RingContext) -> int:
    """Shortest length of a minimal two-dimensional code: q^n + q^{n-1}."""
    return ctx.q**ctx.n + ctx.q ** (ctx.n - 1)


class BoundReport(BaseModel):
    """Two-sided length report for minimal codes of a given dimension."""

    ring: str = Field(description="Ring descriptor line")
    p: int
    n: int
    ell: int
    m: int = Field(ge=2)
    lower: str = Field(description="Exact lower bound as a fraction string")
    strict: bool
    case: str
    ceiling: int = Field(description="Smallest length allowed by the lower bound")
    lambda0_length: int
    k2_exact: Optional[int] = None
    length: Optional[int] = Field(default=None, description="Length of a checked code")
    consistent: bool = Field(description="Every reported length satisfies the lower bound")
    witnesses: list[str] = Field(default_factory=list, description="Written GRCODE files")


def bound_report(ctx: RingContext, m: int, length: Optional[int] = None) -> BoundReport:
    """Lower bound, the pairwise construction's length and k(2) for dimension m.

    Args:
        ctx: Ring
        m: Code dimension (>= 2)
        length: Length of a concrete minimal code to test against the bound

    Raises:
        BoundsError: If m < 2
    """
    bound = length_lower_bound(ctx, m)
    upper = lambda0_length(ctx, m)
    consistent = bound.satisfied_by(upper)
    if length is not None:
        consistent = consistent and bound.satisfied_by(length)
    if not consistent:
        logger.warning(f"Length bound {bound} violated for m={m} over {ctx.descriptor()}")
    return BoundReport(
        ring=ctx.descriptor(),
        p=ctx.p,
        n=ctx.n,
        ell=ctx.ell,
        m=m,
        lower=str(bound.value),
        strict=bound.strict,
        case=bound.case,
        ceiling=bound.ceiling,
        lambda0_length=upper,
        k2_exact=k2_exact(ctx) if m == 2 else None,
        length=length,
        consistent=consistent,
    )


# Exhaustive k(2) search


class K2SearchResult:
    """Outcome of the smallest-length search for minimal two-dimensional codes."""

    def __init__(
        self,
        k: Optional[int],
        generators: Optional[GeneratorMultiset],
        k_max: int,
        searched: int,
    ):
        """Initialize search result.

        Args:
            k: Smallest length with a minimal code, None if none up to k_max
            generators: Lexicographically first minimal column set of length k
            k_max: Largest length examined
            searched: Column sets examined
        """
        self.k = k
        self.generators = generators
        self.k_max = k_max
        self.searched = searched

    @property
    def found(self) -> bool:
        return self.k is not None

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "k_max": self.k_max,
            "searched": self.searched,
            "found": self.found,
        }

    def __repr__(self) -> str:
        if self.found:
            return f"K2SearchResult(k={self.k}, searched={self.searched})"
        return f"K2SearchResult(none <= {self.k_max}, searched={self.searched})"


def normalized_column_types(ctx: RingContext) -> np.ndarray:
    """Root words of R^2 whose first unit coordinate is 1, lexicographically.

    These are (1, x) for every x and (d, 1) for every non-unit d: q^n + q^{n-1}
    columns, one per class of root words under unit scaling.
    """
    X = all_vectors(ctx, 2)
    first_unit = ctx.unit_mask[X[:, 0]]
    keep = (first_unit & (X[:, 0] == ctx.one)) | (~first_unit & (X[:, 1] == ctx.one))
    return X[keep]


def _is_minimal_rootword_set(
    ctx: RingContext, G: np.ndarray, messages: np.ndarray, roots: np.ndarray
) -> bool:
    """Criterion check of a code whose columns are all root words.

    A root message is minimal iff some column is orthogonal to it, since every
    column has nonzero residue. Non-root messages use the size criterion.
    """
    W = encode_messages(ctx, messages, G)
    zero = W == 0
    if not zero[roots].any(axis=1).all():
        return False
    generators = GeneratorMultiset(ctx, G.T)
    for v in messages[~roots]:
        if not is_minimal_codeword_criterion(RingVector(ctx, v), generators):
            return False
    return True


def k2_prefix_search(
    ctx: RingContext, types: np.ndarray, k: int, head: int
) -> tuple[int, Optional[tuple[int, ...]]]:
    """Scan the k-sets of column types whose smallest member is ``head``.

    Returns:
        Number of sets examined and the first minimal set (type positions), if any
    """
    messages = all_vectors(ctx, 2, 1)
    roots = root_word_mask(ctx, messages)
    searched = 0
    for tail in combinations(range(head + 1, len(types)), k - 1):
        chosen = (head, *tail)
        searched += 1
        G = np.ascontiguousarray(types[list(chosen)].T)
        if int(np.linalg.matrix_rank(ctx.field(ctx.residue_table[G]))) < 2:
            continue
        if _is_minimal_rootword_set(ctx, G, messages, roots):
            return searched, chosen
    return searched, None


def exhaustive_k2_search(
    ctx: RingContext,
    k_max: int,
    budgets: Optional[BudgetSettings] = None,
    sweep: Optional[SweepSettings] = None,
    progress: Optional[Callable[[int], None]] = None,
) -> K2SearchResult:
    """Find the smallest k <= k_max admitting a minimal [k, 2] code.

    Candidates are sets of normalized root-word columns. Each length is
    partitioned by its smallest column type across workers; the reported
    witness is the lexicographically first minimal set of that length.

    Raises:
        BoundsError: If k_max < 2 or the search budget runs out first
    """
    if k_max < 2:
        raise BoundsError(f"k_max must be >= 2, got {k_max}")
    budgets = budgets or BudgetSettings()
    sweep = sweep or SweepSettings()
    types = normalized_column_types(ctx)
    logger.info(
        f"Searching minimal [k,2] codes over {ctx.descriptor()} for k <= {k_max} "
        f"({len(types)} column types)"
    )

    searched = 0
    for k in range(2, min(k_max, len(types)) + 1):
        level = comb(len(types), k)
        if searched + level > budgets.search_budget:
            raise BoundsError(
                f"Search budget {budgets.search_budget} exhausted before length {k}"
            )
        tasks = [(ctx, types, k, head) for head in range(len(types) - k + 1)]
        on_done = (lambda result: progress(result[0])) if progress else None
        results = map_tasks(k2_prefix_search, tasks, sweep.threads, on_done)
        searched += sum(count for count, _ in results)
        hits = [chosen for _, chosen in results if chosen is not None]
        if hits:
            best = min(hits)
            generators = GeneratorMultiset(ctx, types[list(best)])
            logger.success(f"Minimal [{k},2] code found after {searched} column sets")
            if mccoy_rank(generators.matrix) != 2:
                raise BoundsError("Search witness does not have rank 2")
            return K2SearchResult(k, generators, k_max, searched)
        logger.debug(f"No minimal [{k},2] code ({level} sets)")

    logger.info(f"No minimal two-dimensional code of length <= {k_max}")
    return K2SearchResult(None, None, k_max, searched)
