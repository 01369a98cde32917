# SPDX-FileCopyrightText: 2025 grmin contributors
# SPDX-License-Identifier: MIT

"""Linear codes C(Lambda) over GR(p^n, ell) and their minimality checks.

A code is given by an ordered multiset of k generator columns in R^m; the
codeword of a message v is ``(v . alpha_1, ..., v . alpha_k)``. Two independent
minimality checks are provided: a brute-force support-containment oracle and
the orthogonal-module criterion (c(v) is minimal iff the columns annihilated by
v generate all of v^perp).
"""

import time
from enum import Enum
from typing import Any, Callable, Iterable, Optional, Sequence, Union

import numpy as np
from loguru import logger
from pydantic import BaseModel, Field, model_validator

from ..config.constants import MESSAGE_CHUNK_CELLS
from ..config.settings import BudgetSettings, SweepSettings
from ..utils.sweep import map_tasks, partition_range
from .linalg import (
    BudgetExceededError,
    DimensionMismatchError,
    RingMatrix,
    RingVector,
    StandardForm,
    SubmoduleBuilder,
    all_vectors,
    batch_dot,
    encode_messages,
    mccoy_rank,
    root_word_mask,
    vector_indices,
    vectors_from_indices,
)
from .ring import ElementLike, RingContext, RingMismatchError


class CodeError(Exception):
    """Base exception for code operations."""

    pass


class NotFullDimensionError(CodeError):
    """Raised when the generator columns have McCoy rank below m."""

    pass


class CriterionScopeError(CodeError):
    """Raised when a criterion sweep is requested outside its valid range."""

    pass


class CriterionScope(str, Enum):
    """Message vectors visited by a criterion sweep."""

    ROOT_WORDS_ONLY = "root_words_only"
    ALL_NONZERO = "all_nonzero"


class GeneratorMultiset:
    """Ordered multiset Lambda of k columns alpha_i in R^m."""

    __slots__ = ("ctx", "values")

    def __init__(self, ctx: RingContext, values: Any) -> None:
        """Wrap generator columns.

        Args:
            ctx: Ring of the entries
            values: k x m array of element indices, one column alpha_i per row
        """
        array = np.array(values, dtype=np.int64)
        if array.ndim != 2 or array.shape[0] == 0 or array.shape[1] == 0:
            raise DimensionMismatchError(
                "Generator columns must form a non-empty k x m index array"
            )
        if array.min() < 0 or array.max() >= ctx.size:
            raise CodeError("Generator entry outside the ring")
        array.flags.writeable = False
        self.ctx = ctx
        self.values = array

    @classmethod
    def of(
        cls, ctx: RingContext, columns: Sequence[Iterable[ElementLike]]
    ) -> "GeneratorMultiset":
        """Build from columns given as ints, coefficient sequences or elements."""
        return cls(ctx, [[ctx.element_index(x) for x in col] for col in columns])

    @classmethod
    def from_vectors(
        cls, ctx: RingContext, columns: Sequence[RingVector]
    ) -> "GeneratorMultiset":
        for col in columns:
            if col.ctx != ctx:
                raise RingMismatchError("Generator column over a different ring")
        return cls(ctx, np.stack([col.values for col in columns]))

    @property
    def k(self) -> int:
        return int(self.values.shape[0])

    @property
    def m(self) -> int:
        return int(self.values.shape[1])

    @property
    def columns(self) -> list[RingVector]:
        return [RingVector(self.ctx, col) for col in self.values]

    @property
    def matrix(self) -> RingMatrix:
        """Generator matrix G_Lambda (m x k), columns alpha_i."""
        return RingMatrix(self.ctx, self.values.T)

    def mccoy_rank(self) -> int:
        return mccoy_rank(self.matrix)

    def __len__(self) -> int:
        return self.k

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GeneratorMultiset):
            return NotImplemented
        return self.ctx == other.ctx and np.array_equal(self.values, other.values)

    def __repr__(self) -> str:
        return f"GeneratorMultiset(m={self.m}, k={self.k}, {self.ctx.descriptor()})"


class Codeword:
    """Codeword c(v) together with the message v that produced it."""

    def __init__(self, coords: RingVector, message: RingVector) -> None:
        """Initialize a codeword.

        Args:
            coords: The k codeword coordinates
            message: The length-m message vector
        """
        self.coords = coords
        self.message = message

    @property
    def support(self) -> frozenset[int]:
        return frozenset(int(i) for i in np.flatnonzero(self.coords.values))

    def is_zero(self) -> bool:
        return self.coords.is_zero()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Codeword):
            return NotImplemented
        return self.coords == other.coords

    def __repr__(self) -> str:
        return f"Codeword({self.coords}, message={self.message})"

    def __str__(self) -> str:
        return str(self.coords)


class LinearCode:
    """The code C(Lambda) = {v G_Lambda : v in R^m}."""

    def __init__(self, generators: GeneratorMultiset) -> None:
        self.generators = generators
        self.ctx = generators.ctx
        self.G = np.ascontiguousarray(generators.values.T)
        self.G.flags.writeable = False

    @property
    def m(self) -> int:
        return self.generators.m

    @property
    def k(self) -> int:
        return self.generators.k

    @property
    def size(self) -> int:
        """|C| = q^{nm} for a full-dimension code."""
        return int(self.ctx.q ** (self.ctx.n * self.m))

    @property
    def message_count(self) -> int:
        return int(self.ctx.size**self.m)

    def encode(self, message: Union[RingVector, Sequence[ElementLike]]) -> Codeword:
        """Codeword of one message vector."""
        if not isinstance(message, RingVector):
            message = RingVector.of(self.ctx, message)
        if message.ctx != self.ctx:
            raise RingMismatchError("Message over a different ring")
        if message.m != self.m:
            raise DimensionMismatchError(
                f"Message length {message.m} != code dimension {self.m}"
            )
        coords = encode_messages(self.ctx, message.values[None, :], self.G)[0]
        return Codeword(RingVector(self.ctx, coords), message)

    def codewords(self, start: int = 0, stop: Optional[int] = None) -> np.ndarray:
        """Codewords of messages with index in [start, stop), one per row."""
        messages = all_vectors(self.ctx, self.m, start, stop)
        return encode_messages(self.ctx, messages, self.G)

    def __repr__(self) -> str:
        return f"LinearCode([{self.k},{self.m}] over {self.ctx.descriptor()})"


class Witness(BaseModel):
    """A failing message vector and the reason it fails."""

    v: list[Union[int, list[int]]] = Field(description="Message vector")
    reason: str = Field(description="Why c(v) is not minimal")


class MinimalityReport(BaseModel):
    """Outcome of a minimality check over a whole code."""

    verdict: bool = Field(description="True iff every checked codeword is minimal")
    method: str = Field(description="bruteforce or criterion")
    checked: int = Field(ge=0, description="Number of message vectors examined")
    witnesses: list[Witness] = Field(default_factory=list)
    elapsed_ms: float = Field(ge=0.0, description="Wall-clock time")

    @model_validator(mode="after")
    def validate_verdict(self) -> "MinimalityReport":
        """A report is negative exactly when it carries witnesses."""
        if self.verdict == bool(self.witnesses):
            raise ValueError("verdict must be false exactly when witnesses exist")
        return self


class DualReport:
    """Result of a brute-force dual computation."""

    def __init__(
        self,
        size: int,
        size_exponent: int,
        standard_form: StandardForm,
        frobenius_holds: bool,
        double_dual_holds: Optional[bool] = None,
    ):
        """Initialize dual report.

        Args:
            size: |C^perp|
            size_exponent: log_q |C^perp|
            standard_form: Generator rows of C^perp in standard form
            frobenius_holds: Whether |C| |C^perp| = q^{nk}
            double_dual_holds: Whether (C^perp)^perp = C, None when not verified
        """
        self.size = size
        self.size_exponent = size_exponent
        self.standard_form = standard_form
        self.frobenius_holds = frobenius_holds
        self.double_dual_holds = double_dual_holds

    def __str__(self) -> str:
        return (
            f"DualReport(size={self.size}, frobenius={self.frobenius_holds}, "
            f"double_dual={self.double_dual_holds})"
        )


def message_repr(ctx: RingContext, values: Any) -> list[Union[int, list[int]]]:
    """JSON-friendly form of a vector: ints for ell = 1, coefficient lists otherwise."""
    coeffs = ctx.coeff_table[np.asarray(values, dtype=np.int64)]
    if ctx.ell == 1:
        return [int(c[0]) for c in coeffs]
    return [[int(x) for x in c] for c in coeffs]


def build_code(generators: GeneratorMultiset) -> LinearCode:
    """Validate the generators and return the code they define.

    Raises:
        NotFullDimensionError: If the McCoy rank of G_Lambda is below m
    """
    rank = generators.mccoy_rank()
    if rank < generators.m:
        raise NotFullDimensionError(
            f"Generator matrix has McCoy rank {rank} < m={generators.m}"
        )
    code = LinearCode(generators)
    logger.debug(f"Built {code!r}")
    return code


def covers(a: Codeword, b: Codeword) -> bool:
    """True iff Supp(b) is contained in Supp(a)."""
    if a.coords.m != b.coords.m:
        raise DimensionMismatchError("Codewords of different lengths")
    return b.support <= a.support


# Brute-force oracle


def _check_codeword_budget(code: LinearCode, budgets: BudgetSettings) -> None:
    if code.size > budgets.codeword_budget:
        raise BudgetExceededError(
            f"|C| = {code.size} exceeds the codeword budget {budgets.codeword_budget}"
        )
    cap = min(budgets.codeword_length_cap, 64)
    if code.k > cap:
        raise BudgetExceededError(f"Code length {code.k} exceeds the cap {cap}")


def _support_masks(W: np.ndarray) -> np.ndarray:
    nonzero = (W != 0).astype(np.uint64)
    shifts = np.arange(W.shape[1], dtype=np.uint64)
    return np.bitwise_or.reduce(nonzero << shifts, axis=1)


def _multiple_indices(ctx: RingContext, message: np.ndarray) -> np.ndarray:
    # Encoding is injective, so a.c(v) = c(a.v) is compared through messages
    scalars = np.arange(1, ctx.size, dtype=np.int64)
    return vector_indices(ctx, ctx.mul_table[scalars[:, None], message[None, :]])


def _non_multiple_cover(
    ctx: RingContext, masks: np.ndarray, message: np.ndarray, index: int
) -> Optional[int]:
    mask = masks[index]
    covered = np.flatnonzero(((masks & ~mask) == 0) & (masks != 0))
    outside = np.setdiff1d(covered, _multiple_indices(ctx, message))
    return int(outside[0]) if outside.size else None


def is_minimal_codeword_bruteforce(
    code: LinearCode, c: Codeword, budgets: Optional[BudgetSettings] = None
) -> bool:
    """Literal definition: every nonzero codeword covered by c is some a.c, a != 0.

    Raises:
        CodeError: If c is the zero codeword
        BudgetExceededError: If |C| or k exceeds the configured caps
    """
    budgets = budgets or BudgetSettings()
    _check_codeword_budget(code, budgets)
    if c.is_zero():
        raise CodeError("The zero codeword has no minimality status")
    masks = _support_masks(code.codewords())
    return _non_multiple_cover(code.ctx, masks, c.message.values, c.message.index) is None


def is_minimal_code_bruteforce(
    code: LinearCode, budgets: Optional[BudgetSettings] = None
) -> MinimalityReport:
    """Run the brute-force oracle on every nonzero codeword.

    Raises:
        BudgetExceededError: If |C| or k exceeds the configured caps
    """
    budgets = budgets or BudgetSettings()
    _check_codeword_budget(code, budgets)
    ctx = code.ctx
    started = time.perf_counter()
    logger.info(f"Brute-force minimality check of {code!r} ({code.size} codewords)")

    messages = all_vectors(ctx, code.m)
    masks = _support_masks(encode_messages(ctx, messages, code.G))
    witnesses: list[Witness] = []
    checked = 0
    for index in range(1, code.message_count):
        checked += 1
        cover = _non_multiple_cover(ctx, masks, messages[index], index)
        if cover is None:
            continue
        if len(witnesses) < budgets.max_witnesses:
            witnesses.append(
                Witness(
                    v=message_repr(ctx, messages[index]),
                    reason=(
                        "covers c("
                        + ",".join(ctx.format_index(int(x)) for x in messages[cover])
                        + "), which is not a scalar multiple"
                    ),
                )
            )
        else:
            break

    report = MinimalityReport(
        verdict=not witnesses,
        method="bruteforce",
        checked=checked,
        witnesses=witnesses,
        elapsed_ms=(time.perf_counter() - started) * 1000.0,
    )
    _log_verdict(code, report)
    return report


# Orthogonal-module criterion


def orthogonal_size_exponent(ctx: RingContext, v: np.ndarray) -> int:
    """log_q |O(v)| = n(m-1) + r with r the least entry valuation of v."""
    r = int(ctx.valuation_table[v].min())
    return ctx.n * (len(v) - 1) + r


def _annihilated_columns(generators: GeneratorMultiset, v: RingVector) -> np.ndarray:
    if v.ctx != generators.ctx:
        raise RingMismatchError("Message over a different ring")
    if v.m != generators.m:
        raise DimensionMismatchError(
            f"Message length {v.m} != generator length {generators.m}"
        )
    return generators.values[batch_dot(v.ctx, generators.values, v.values) == 0]


def O_and_M(
    v: RingVector, generators: GeneratorMultiset
) -> tuple[int, StandardForm]:
    """Size of O(v) and the standard form of M(v, Lambda).

    Raises:
        CodeError: If v is the zero vector
    """
    if v.is_zero():
        raise CodeError("O(v) is only considered for nonzero v")
    columns = _annihilated_columns(generators, v)
    builder = SubmoduleBuilder(v.ctx, v.m)
    for col in columns:
        builder.add(col)
    o_size = int(v.ctx.q ** orthogonal_size_exponent(v.ctx, v.values))
    return o_size, builder.standard_form()


def _size_test(
    ctx: RingContext, columns: np.ndarray, v: np.ndarray
) -> tuple[bool, int, int]:
    target = orthogonal_size_exponent(ctx, v)
    builder = SubmoduleBuilder(ctx, len(v))
    if columns.shape[0]:
        columns = np.unique(columns, axis=0)
    reached = builder.add_until(columns, target)
    return reached, builder.size_exponent, target


def is_minimal_codeword_criterion(v: RingVector, generators: GeneratorMultiset) -> bool:
    """c(v) is minimal iff |M(v, Lambda)| = |O(v)|.

    Raises:
        CodeError: If v is the zero vector
    """
    if v.is_zero():
        raise CodeError("The zero message has no minimality status")
    columns = _annihilated_columns(generators, v)
    return _size_test(v.ctx, columns, v.values)[0]


def _residue_codes(ctx: RingContext, columns: np.ndarray) -> np.ndarray:
    residues = ctx.residue_table[columns]
    m = columns.shape[1]
    weights = np.array([ctx.q ** (m - 1 - i) for i in range(m)], dtype=np.int64)
    return residues @ weights


def _residue_rank(ctx: RingContext, codes: np.ndarray, m: int) -> int:
    distinct = np.unique(codes)
    distinct = distinct[distinct != 0]
    if distinct.size == 0:
        return 0
    weights = np.array([ctx.q ** (m - 1 - i) for i in range(m)], dtype=np.int64)
    digits = (distinct[:, None] // weights[None, :]) % ctx.q
    return int(np.linalg.matrix_rank(ctx.field(digits)))


def criterion_chunk(
    ctx: RingContext,
    G: np.ndarray,
    start: int,
    stop: int,
    scope: str,
    cross_check: bool,
    max_witnesses: int,
) -> tuple[int, list[tuple[int, str]]]:
    """Check the messages with index in [start, stop).

    Root-word messages use the free-rank test (the annihilated columns reduce to
    a rank m-1 set); the others compare |M(v)| with |O(v)|.

    Returns:
        Number of messages checked and the first failing ``(index, reason)``
        pairs in index order
    """
    m = G.shape[0]
    V = all_vectors(ctx, m, start, stop)
    W = encode_messages(ctx, V, G)
    roots = root_word_mask(ctx, V)
    if CriterionScope(scope) is CriterionScope.ROOT_WORDS_ONLY:
        selected = np.flatnonzero(roots)
    else:
        selected = np.flatnonzero(np.any(V != 0, axis=1))
    columns = np.ascontiguousarray(G.T)
    codes = _residue_codes(ctx, columns)

    failures: list[tuple[int, str]] = []
    for b in selected:
        zero_cols = np.flatnonzero(W[b] == 0)
        if roots[b]:
            rank = _residue_rank(ctx, codes[zero_cols], m)
            minimal = rank == m - 1
            reason = f"annihilated columns have residue rank {rank} < {m - 1}"
            if cross_check:
                by_size, e, t = _size_test(ctx, columns[zero_cols], V[b])
                if by_size != minimal:
                    raise CodeError(
                        f"Rank and size criteria disagree at message index {start + b}"
                    )
        else:
            minimal, e, t = _size_test(ctx, columns[zero_cols], V[b])
            reason = f"|M(v)| = q^{e} < |O(v)| = q^{t}"
        if not minimal and len(failures) < max_witnesses:
            failures.append((start + int(b), reason))
    return int(selected.size), failures


def is_minimal_code_criterion(
    code: LinearCode,
    scope: Union[CriterionScope, str] = CriterionScope.ALL_NONZERO,
    sweep: Optional[SweepSettings] = None,
    budgets: Optional[BudgetSettings] = None,
    progress: Optional[Callable[[int], None]] = None,
) -> MinimalityReport:
    """Sweep the orthogonal-module criterion over the selected messages.

    Args:
        code: Code to check
        scope: ``all_nonzero`` or ``root_words_only`` (valid for m >= 2)
        sweep: Worker count and cross-check flag
        budgets: Supplies the witness report cap
        progress: Callback receiving the number of messages finished per chunk

    Returns:
        MinimalityReport with the lexicographically first failing messages

    Raises:
        CriterionScopeError: If scope is root_words_only and m = 1
        CodeError: If cross-checking finds the two criteria disagreeing
    """
    scope = CriterionScope(scope)
    sweep = sweep or SweepSettings()
    budgets = budgets or BudgetSettings()
    if scope is CriterionScope.ROOT_WORDS_ONLY and code.m < 2:
        raise CriterionScopeError(
            "Checking root words only needs m >= 2; use onedim_minimal for m = 1"
        )
    ctx = code.ctx
    started = time.perf_counter()
    logger.info(
        f"Criterion sweep of {code!r} over {scope.value} "
        f"({code.message_count - 1} nonzero messages, {sweep.threads} workers)"
    )

    chunk = max(1, MESSAGE_CHUNK_CELLS // max(code.k, 1))
    if sweep.threads > 1:
        chunk = min(chunk, max(1, code.message_count // (4 * sweep.threads)))
    tasks = [
        (ctx, code.G, lo, hi, scope.value, sweep.cross_check, budgets.max_witnesses)
        for lo, hi in partition_range(1, code.message_count, chunk)
    ]
    on_done = (lambda result: progress(result[0])) if progress else None
    results = map_tasks(criterion_chunk, tasks, sweep.threads, on_done)

    checked = sum(count for count, _ in results)
    failures = [item for _, chunk_failures in results for item in chunk_failures]
    failures = sorted(failures)[: budgets.max_witnesses]
    messages = vectors_from_indices(ctx, np.array([i for i, _ in failures]), code.m)
    witnesses = [
        Witness(v=message_repr(ctx, messages[j]), reason=reason)
        for j, (_, reason) in enumerate(failures)
    ]

    report = MinimalityReport(
        verdict=not witnesses,
        method="criterion",
        checked=checked,
        witnesses=witnesses,
        elapsed_ms=(time.perf_counter() - started) * 1000.0,
    )
    _log_verdict(code, report)
    return report


def _log_verdict(code: LinearCode, report: MinimalityReport) -> None:
    if report.verdict:
        logger.success(
            f"{code!r} is minimal ({report.method}, {report.checked} messages, "
            f"{report.elapsed_ms:.0f} ms)"
        )
    else:
        logger.error(
            f"{code!r} is not minimal ({report.method}); "
            f"first witness {report.witnesses[0].v}"
        )


# One-dimensional codes, purification and duals


def onedim_minimal(v: RingVector) -> bool:
    """<v> is minimal iff every proper nonzero ideal p^r R has a generator among v's entries.

    Raises:
        CodeError: If v is the zero vector
    """
    if v.is_zero():
        raise CodeError("The zero vector spans the zero code")
    present = set(int(r) for r in v.ctx.valuation_table[v.values])
    return all(r in present for r in range(1, v.ctx.n))


def purify(generators: GeneratorMultiset) -> GeneratorMultiset:
    """Drop every column that is a zero-divisor multiple (not a root word).

    Raises:
        CodeError: If m < 2
        NotFullDimensionError: If the remaining columns have McCoy rank below m
    """
    if generators.m < 2:
        raise CodeError("Purification is defined for m >= 2")
    keep = root_word_mask(generators.ctx, generators.values)
    dropped = int(np.count_nonzero(~keep))
    if not keep.any():
        raise NotFullDimensionError("No root-word columns remain")
    purified = GeneratorMultiset(generators.ctx, generators.values[keep])
    rank = purified.mccoy_rank()
    if rank < generators.m:
        raise NotFullDimensionError(
            f"Purified generators have McCoy rank {rank} < m={generators.m}"
        )
    logger.debug(f"Purification removed {dropped} of {generators.k} columns")
    return purified


def _count_solutions(
    ctx: RingContext, H: np.ndarray, k: int, collect: bool
) -> tuple[int, list[np.ndarray]]:
    total = ctx.size**k
    if H.shape[0] == 0:
        if collect:
            return total, [np.arange(total, dtype=np.int64)]
        return total, []
    count = 0
    found: list[np.ndarray] = []
    for lo, hi in partition_range(0, total, max(1, MESSAGE_CHUNK_CELLS // k)):
        X = all_vectors(ctx, k, lo, hi)
        keep = np.ones(X.shape[0], dtype=bool)
        for row in H:
            keep &= batch_dot(ctx, X, row) == 0
        count += int(np.count_nonzero(keep))
        if collect:
            found.append(np.flatnonzero(keep) + lo)
    return count, found


def dual_bruteforce(
    code: LinearCode, budgets: Optional[BudgetSettings] = None, verify: bool = True
) -> DualReport:
    """Enumerate C^perp inside R^k and check Frobenius duality.

    Args:
        code: Code whose dual is computed
        budgets: Supplies the dual enumeration cap on |R|^k
        verify: Also enumerate (C^perp)^perp and compare with C

    Raises:
        BudgetExceededError: If |R|^k exceeds the dual budget
    """
    budgets = budgets or BudgetSettings()
    ctx, k = code.ctx, code.k
    total = ctx.size**k
    if total > budgets.dual_budget:
        raise BudgetExceededError(
            f"Dual enumeration of {total} vectors exceeds budget {budgets.dual_budget}"
        )
    logger.info(f"Enumerating the dual of {code!r} in {total} vectors")

    size, found = _count_solutions(ctx, code.G, k, collect=True)
    exponent = 0
    while ctx.q**exponent < size:
        exponent += 1

    builder = SubmoduleBuilder(ctx, k)
    for indices in found:
        if builder.add_until(vectors_from_indices(ctx, indices, k), exponent):
            break
    standard_form = builder.standard_form()
    frobenius = size * code.size == ctx.q ** (ctx.n * k)

    double_dual: Optional[bool] = None
    if verify:
        H = standard_form.matrix.values
        double_size, _ = _count_solutions(ctx, H, k, collect=False)
        contained = all(
            not np.any(batch_dot(ctx, code.G, h)) for h in H
        )
        double_dual = double_size == code.size and contained

    report = DualReport(size, exponent, standard_form, frobenius, double_dual)
    logger.debug(str(report))
    return report
