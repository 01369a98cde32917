# SPDX-FileCopyrightText: 2025 grmin contributors
# SPDX-License-Identifier: MIT

"""Free-module linear algebra over GR(p^n, ell).

Vectors and matrices hold element indices (see :mod:`grmin.core.ring`) in numpy
arrays. Residue-field questions (McCoy rank, independence) are delegated to
galois; submodule sizes and membership use a valuation-pivot echelon form.
"""

from enum import Enum
from typing import Any, Iterable, Iterator, Optional, Sequence

import numpy as np
from loguru import logger

from ..config.settings import BudgetSettings
from .ring import ElementLike, RingContext, RingElement, RingMismatchError


class LinalgError(Exception):
    """Base exception for module computations."""

    pass


class DimensionMismatchError(LinalgError):
    """Raised when vector or matrix shapes disagree."""

    pass


class NotARootWordError(LinalgError):
    """Raised when an operation requires a root word."""

    pass


class BudgetExceededError(LinalgError):
    """Raised when an exhaustive enumeration exceeds its configured cap."""

    pass


class SubmoduleRelation(str, Enum):
    """Inclusion relation between two submodules."""

    EQUAL = "equal"
    A_IN_B = "A_in_B"
    B_IN_A = "B_in_A"
    INCOMPARABLE = "incomparable"


def _as_index_array(values: Any) -> np.ndarray:
    array = np.array(values, dtype=np.int64)
    array.flags.writeable = False
    return array


class RingVector:
    """Element of GR(p^n, ell)^m stored as an index array."""

    __slots__ = ("ctx", "values")

    def __init__(self, ctx: RingContext, values: Any) -> None:
        """Wrap raw element indices.

        Args:
            ctx: Ring of the entries
            values: One-dimensional sequence of element indices
        """
        array = _as_index_array(values)
        if array.ndim != 1 or array.size == 0:
            raise DimensionMismatchError("A vector needs a non-empty 1-D index array")
        if array.min() < 0 or array.max() >= ctx.size:
            raise LinalgError("Vector entry outside the ring")
        self.ctx = ctx
        self.values = array

    @classmethod
    def of(cls, ctx: RingContext, items: Iterable[ElementLike]) -> "RingVector":
        """Build a vector from ints, coefficient sequences or elements."""
        return cls(ctx, [ctx.element_index(item) for item in items])

    @classmethod
    def zeros(cls, ctx: RingContext, m: int) -> "RingVector":
        return cls(ctx, np.zeros(m, dtype=np.int64))

    @classmethod
    def unit_vector(cls, ctx: RingContext, m: int, i: int) -> "RingVector":
        values = np.zeros(m, dtype=np.int64)
        values[i] = ctx.one
        return cls(ctx, values)

    @property
    def m(self) -> int:
        return int(self.values.size)

    @property
    def entries(self) -> list[RingElement]:
        return [RingElement(self.ctx, int(v)) for v in self.values]

    @property
    def index(self) -> int:
        """Lexicographic index of the vector in R^m."""
        return int(vector_indices(self.ctx, self.values[None, :])[0])

    def __len__(self) -> int:
        return self.m

    def __iter__(self) -> Iterator[RingElement]:
        return iter(self.entries)

    def __getitem__(self, i: int) -> RingElement:
        return RingElement(self.ctx, int(self.values[i]))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RingVector):
            return NotImplemented
        return self.ctx == other.ctx and np.array_equal(self.values, other.values)

    def __hash__(self) -> int:
        return hash((self.ctx.key, self.values.tobytes()))

    def __repr__(self) -> str:
        return f"RingVector({self})"

    def __str__(self) -> str:
        return "(" + ",".join(str(e) for e in self.entries) + ")"

    def _check(self, other: "RingVector") -> None:
        if self.ctx != other.ctx:
            raise RingMismatchError("Vectors over different rings")
        if self.m != other.m:
            raise DimensionMismatchError(f"Lengths differ: {self.m} != {other.m}")

    def __add__(self, other: "RingVector") -> "RingVector":
        self._check(other)
        return RingVector(self.ctx, self.ctx.add_table[self.values, other.values])

    def __sub__(self, other: "RingVector") -> "RingVector":
        self._check(other)
        neg = self.ctx.neg_table[other.values]
        return RingVector(self.ctx, self.ctx.add_table[self.values, neg])

    def __neg__(self) -> "RingVector":
        return RingVector(self.ctx, self.ctx.neg_table[self.values])

    def scale(self, a: ElementLike) -> "RingVector":
        """Scalar multiple ``a * self``."""
        return RingVector(
            self.ctx, self.ctx.mul_table[self.ctx.element_index(a), self.values]
        )

    def dot(self, other: "RingVector") -> RingElement:
        return inner_product(self, other)

    def is_zero(self) -> bool:
        return not bool(np.any(self.values))

    def residues(self) -> np.ndarray:
        return self.ctx.residue_table[self.values]


class RingMatrix:
    """Rectangular matrix over GR(p^n, ell); rows are RingVectors."""

    __slots__ = ("ctx", "values")

    def __init__(self, ctx: RingContext, values: Any, ncols: Optional[int] = None):
        """Wrap a 2-D array of element indices.

        Args:
            ctx: Ring of the entries
            values: Two-dimensional array of element indices
            ncols: Column count, needed when ``values`` has no rows
        """
        array = np.array(values, dtype=np.int64)
        if array.size == 0 and array.ndim != 2:
            if ncols is None:
                raise DimensionMismatchError("Empty matrix needs an explicit width")
            array = array.reshape(0, ncols)
        if array.ndim != 2:
            raise DimensionMismatchError("A matrix needs a 2-D index array")
        array.flags.writeable = False
        self.ctx = ctx
        self.values = array

    @classmethod
    def of(
        cls, ctx: RingContext, rows: Sequence[Iterable[ElementLike]]
    ) -> "RingMatrix":
        """Build a matrix from rows of ints, coefficient sequences or elements."""
        return cls(ctx, [[ctx.element_index(x) for x in row] for row in rows])

    @classmethod
    def from_rows(
        cls, ctx: RingContext, rows: Sequence[RingVector], ncols: Optional[int] = None
    ) -> "RingMatrix":
        if not rows:
            return cls(ctx, np.zeros((0, ncols or 0), dtype=np.int64), ncols=ncols)
        lengths = {row.m for row in rows}
        if len(lengths) != 1:
            raise DimensionMismatchError(f"Rows of different lengths: {lengths}")
        return cls(ctx, np.stack([row.values for row in rows]))

    @property
    def shape(self) -> tuple[int, int]:
        return (int(self.values.shape[0]), int(self.values.shape[1]))

    @property
    def rows(self) -> list[RingVector]:
        return [RingVector(self.ctx, row) for row in self.values]

    @property
    def columns(self) -> list[RingVector]:
        return [RingVector(self.ctx, col) for col in self.values.T]

    def transpose(self) -> "RingMatrix":
        return RingMatrix(self.ctx, self.values.T, ncols=self.shape[0])

    def __len__(self) -> int:
        return self.shape[0]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RingMatrix):
            return NotImplemented
        return self.ctx == other.ctx and np.array_equal(self.values, other.values)

    def __repr__(self) -> str:
        return f"RingMatrix({self})"

    def __str__(self) -> str:
        return "[" + ", ".join(str(row) for row in self.rows) + "]"


class StandardForm:
    """Row standard form: pivot entries are exact powers p^s."""

    def __init__(
        self,
        matrix: RingMatrix,
        pivot_cols: tuple[int, ...],
        pivot_vals: tuple[int, ...],
    ):
        """Initialize standard form.

        Args:
            matrix: Pivot rows ordered by pivot column
            pivot_cols: Strictly increasing pivot column per row
            pivot_vals: Valuation s_i of each pivot entry
        """
        self.matrix = matrix
        self.pivot_cols = pivot_cols
        self.pivot_vals = pivot_vals

    @property
    def size_exponent(self) -> int:
        """log_q of the spanned submodule size."""
        return sum(self.matrix.ctx.n - s for s in self.pivot_vals)

    @property
    def size(self) -> int:
        return int(self.matrix.ctx.q**self.size_exponent)

    def __str__(self) -> str:
        return f"StandardForm(pivots={self.pivot_cols}, s={self.pivot_vals}, size={self.size})"


class SubmoduleBuilder:
    """Incremental valuation-pivot echelon form of a submodule of R^m.

    Each pivot row is normalized so that its pivot entry equals p^s. Whenever
    a row with s > 0 becomes a pivot, its annihilated multiple p^(n-s) * row is
    inserted too, so that size and membership can be read off the pivots.
    """

    def __init__(self, ctx: RingContext, m: int) -> None:
        self.ctx = ctx
        self.m = m
        self._pivots: dict[int, tuple[np.ndarray, int]] = {}
        self.size_exponent = 0

    @property
    def size(self) -> int:
        return int(self.ctx.q**self.size_exponent)

    def _eliminate(self, x: np.ndarray, c: int, row: np.ndarray, s: int) -> np.ndarray:
        ctx = self.ctx
        sx = int(ctx.valuation_table[x[c]])
        factor = ctx.mul_table[ctx.p_powers[sx - s], ctx.unit_part_table[x[c]]]
        return ctx.add_table[x, ctx.neg_table[ctx.mul_table[factor, row]]]

    def add(self, vector: Any) -> bool:
        """Insert a vector; return True if the span grew."""
        ctx = self.ctx
        values = vector.values if isinstance(vector, RingVector) else vector
        x0 = np.array(values, dtype=np.int64)
        if x0.shape != (self.m,):
            raise DimensionMismatchError(f"Expected length {self.m}, got {x0.shape}")
        before = self.size_exponent
        stack = [x0]
        while stack:
            x = stack.pop()
            while True:
                nonzero = np.flatnonzero(x)
                if nonzero.size == 0:
                    break
                c = int(nonzero[0])
                sx = int(ctx.valuation_table[x[c]])
                pivot = self._pivots.get(c)
                if pivot is not None and sx >= pivot[1]:
                    x = self._eliminate(x, c, pivot[0], pivot[1])
                    continue
                unit_inverse = ctx.inv_table[ctx.unit_part_table[x[c]]]
                row = ctx.mul_table[unit_inverse, x]
                self._pivots[c] = (row, sx)
                self.size_exponent += ctx.n - sx
                if pivot is not None:
                    self.size_exponent -= ctx.n - pivot[1]
                    stack.append(pivot[0])
                if sx > 0:
                    stack.append(ctx.mul_table[ctx.p_powers[ctx.n - sx], row])
                break
        return self.size_exponent > before

    def add_until(self, vectors: Iterable[Any], target_exponent: int) -> bool:
        """Insert vectors until the span reaches q^target_exponent elements."""
        if self.size_exponent >= target_exponent:
            return True
        for vector in vectors:
            self.add(vector)
            if self.size_exponent >= target_exponent:
                return True
        return False

    def contains(self, vector: Any) -> bool:
        """Membership test by reduction against the pivots."""
        values = vector.values if isinstance(vector, RingVector) else vector
        x = np.array(values, dtype=np.int64)
        while True:
            nonzero = np.flatnonzero(x)
            if nonzero.size == 0:
                return True
            c = int(nonzero[0])
            pivot = self._pivots.get(c)
            if pivot is None or self.ctx.valuation_table[x[c]] < pivot[1]:
                return False
            x = self._eliminate(x, c, pivot[0], pivot[1])

    def standard_form(self) -> StandardForm:
        cols = tuple(sorted(self._pivots))
        rows = [self._pivots[c][0] for c in cols]
        matrix = (
            RingMatrix(self.ctx, np.stack(rows))
            if rows
            else RingMatrix(self.ctx, np.zeros((0, self.m)), ncols=self.m)
        )
        return StandardForm(matrix, cols, tuple(self._pivots[c][1] for c in cols))


# Vectorised helpers


def all_vectors(ctx: RingContext, m: int, start: int = 0, stop: Optional[int] = None) -> np.ndarray:
    """Vectors of R^m with lexicographic index in [start, stop), one per row."""
    total = ctx.size**m
    stop = total if stop is None else min(stop, total)
    indices = np.arange(start, stop, dtype=np.int64)
    return vectors_from_indices(ctx, indices, m)


def vectors_from_indices(ctx: RingContext, indices: np.ndarray, m: int) -> np.ndarray:
    powers = np.array([ctx.size ** (m - 1 - i) for i in range(m)], dtype=np.int64)
    return (np.asarray(indices, dtype=np.int64)[:, None] // powers[None, :]) % ctx.size


def vector_indices(ctx: RingContext, X: np.ndarray) -> np.ndarray:
    """Lexicographic indices of the rows of X."""
    m = X.shape[1]
    powers = np.array([ctx.size ** (m - 1 - i) for i in range(m)], dtype=np.int64)
    return np.asarray(X, dtype=np.int64) @ powers


def batch_dot(ctx: RingContext, X: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Inner products of every row of X with w."""
    acc = ctx.mul_table[X[:, 0], w[0]]
    for i in range(1, X.shape[1]):
        acc = ctx.add_table[acc, ctx.mul_table[X[:, i], w[i]]]
    return acc


def encode_messages(ctx: RingContext, V: np.ndarray, G: np.ndarray) -> np.ndarray:
    """Codewords V @ G for messages V (B x m) and generator rows G (m x k)."""
    acc = ctx.mul_table[V[:, 0, None], G[0][None, :]]
    for i in range(1, G.shape[0]):
        acc = ctx.add_table[acc, ctx.mul_table[V[:, i, None], G[i][None, :]]]
    return acc


def residue_matrix(ctx: RingContext, X: np.ndarray) -> Any:
    """Reduction modulo p of an index array, as a galois FieldArray."""
    return ctx.field(ctx.residue_table[np.asarray(X, dtype=np.int64)])


def independent_rows(ctx: RingContext, X: np.ndarray) -> list[int]:
    """Indices of the first maximal set of rows independent modulo p.

    Rows are taken greedily in order: the pivot columns of the row-reduced
    transpose are exactly the rows that extend the span of their predecessors.
    """
    if X.shape[0] == 0:
        return []
    reduced = residue_matrix(ctx, X).T.row_reduce()
    nonzero_rows = np.any(reduced != 0, axis=1)
    pivots = (reduced[nonzero_rows] != 0).argmax(axis=1)
    return [int(p) for p in np.asarray(pivots)]


# Vector and submodule operations


def inner_product(v: RingVector, w: RingVector) -> RingElement:
    """Exact sum of coordinate products."""
    v._check(w)
    return RingElement(v.ctx, int(batch_dot(v.ctx, v.values[None, :], w.values)[0]))


def hamming_weight(v: RingVector) -> int:
    return int(np.count_nonzero(v.values))


def unit_weight(v: RingVector) -> int:
    """Number of unit coordinates, the Hamming weight of the reduction mod p."""
    return int(np.count_nonzero(v.ctx.unit_mask[v.values]))


def is_root_word(v: RingVector) -> bool:
    """True iff some coordinate is a unit."""
    return bool(np.any(v.ctx.unit_mask[v.values]))


def root_word_mask(ctx: RingContext, X: np.ndarray) -> np.ndarray:
    return np.any(ctx.unit_mask[X], axis=1)


def count_root_words(ctx: RingContext, m: int) -> int:
    """Number of root words in R^m: q^{nm} - q^{m(n-1)}."""
    return ctx.q ** (ctx.n * m) - ctx.q ** (m * (ctx.n - 1))


def mccoy_rank(G: RingMatrix) -> int:
    """McCoy rank, computed as the rank of the reduction modulo p."""
    if G.values.size == 0:
        return 0
    return int(np.linalg.matrix_rank(residue_matrix(G.ctx, G.values)))


def row_standard_form(G: RingMatrix) -> StandardForm:
    """Valuation-pivot standard form spanning the same submodule as G's rows."""
    builder = SubmoduleBuilder(G.ctx, G.shape[1])
    for row in G.values:
        builder.add(row)
    return builder.standard_form()


def submodule_compare(A: RingMatrix, B: RingMatrix) -> SubmoduleRelation:
    """Compare the row spans of A and B by two-sided membership."""
    if A.ctx != B.ctx:
        raise RingMismatchError("Matrices over different rings")
    if A.shape[1] != B.shape[1]:
        raise DimensionMismatchError(
            f"Ambient lengths differ: {A.shape[1]} != {B.shape[1]}"
        )
    span_a = SubmoduleBuilder(A.ctx, A.shape[1])
    span_b = SubmoduleBuilder(B.ctx, B.shape[1])
    for row in A.values:
        span_a.add(row)
    for row in B.values:
        span_b.add(row)
    a_in_b = all(span_b.contains(row) for row in A.values)
    b_in_a = all(span_a.contains(row) for row in B.values)
    if a_in_b and b_in_a:
        return SubmoduleRelation.EQUAL
    if a_in_b:
        return SubmoduleRelation.A_IN_B
    if b_in_a:
        return SubmoduleRelation.B_IN_A
    return SubmoduleRelation.INCOMPARABLE


def first_unit_position(v: RingVector) -> int:
    units = np.flatnonzero(v.ctx.unit_mask[v.values])
    if units.size == 0:
        raise NotARootWordError(f"{v} has no unit coordinate")
    return int(units[0])


def orthogonal_basis_rootword(v: RingVector) -> RingMatrix:
    """Basis of v^perp for a root word: (-v_j u^{-1} at the pivot, 1 at j).

    The pivot is the first unit coordinate u of v.

    Raises:
        NotARootWordError: If v has no unit coordinate
    """
    ctx = v.ctx
    pivot = first_unit_position(v)
    u_inv = ctx.inv_table[v.values[pivot]]
    rows = []
    for j in range(v.m):
        if j == pivot:
            continue
        row = np.zeros(v.m, dtype=np.int64)
        row[j] = ctx.one
        row[pivot] = ctx.neg_table[ctx.mul_table[v.values[j], u_inv]]
        rows.append(row)
    if not rows:
        return RingMatrix(ctx, np.zeros((0, v.m)), ncols=v.m)
    return RingMatrix(ctx, np.stack(rows))


def split_nonroot(v: RingVector) -> tuple[int, RingVector]:
    """Write a nonzero non-root vector as p^r * w with w a root word.

    Raises:
        LinalgError: If v is zero or already a root word
    """
    ctx = v.ctx
    if v.is_zero():
        raise LinalgError("The zero vector has no root-word factorization")
    r = int(ctx.valuation_table[v.values].min())
    if r == 0:
        raise LinalgError(f"{v} is a root word")
    return r, RingVector(ctx, ctx.divide_by_p_power(v.values, r))


def orthogonal_genset_nonroot(v: RingVector, variant: str = "pure") -> RingMatrix:
    """Generating set of v^perp for v = p^r w, w a root word, 1 <= r <= n-1.

    ``variant="pure"`` returns the rows (-w_j u^{-1} at the pivot, 1 at j) plus
    (p^{n-r} u^{-1} at the pivot). ``variant="unit_shift"`` shifts every row by
    p^{n-r} u^{-1} at the pivot and uses a unit u'' with residue other than 1 in
    the last generator.

    Raises:
        LinalgError: If v is zero, a root word, or the variant is unavailable
    """
    ctx = v.ctx
    r, w = split_nonroot(v)
    pivot = first_unit_position(w)
    u_inv = int(ctx.inv_table[w.values[pivot]])
    shift = int(ctx.mul_table[ctx.p_powers[ctx.n - r], u_inv])
    others = [j for j in range(v.m) if j != pivot]

    rows = []
    if variant == "pure":
        for j in others:
            row = np.zeros(v.m, dtype=np.int64)
            row[j] = ctx.one
            row[pivot] = ctx.neg_table[ctx.mul_table[w.values[j], u_inv]]
            rows.append(row)
        last = np.zeros(v.m, dtype=np.int64)
        last[pivot] = shift
        rows.append(last)
    elif variant == "unit_shift":
        candidates = np.flatnonzero(ctx.unit_mask & (ctx.residue_table != 1))
        if candidates.size == 0:
            raise LinalgError("unit_shift needs a unit with residue other than 1 (q > 2)")
        u2 = int(candidates[0])
        for j in others:
            row = np.zeros(v.m, dtype=np.int64)
            row[j] = ctx.one
            term = ctx.mul_table[w.values[j], u_inv]
            row[pivot] = ctx.add_table[shift, ctx.neg_table[term]]
            rows.append(row)
        last = np.zeros(v.m, dtype=np.int64)
        if others:
            j2 = others[0]
            term = ctx.mul_table[ctx.mul_table[w.values[j2], u_inv], u2]
            last[pivot] = ctx.add_table[shift, ctx.neg_table[term]]
            last[j2] = u2
        else:
            last[pivot] = shift
        rows.append(last)
    else:
        raise LinalgError(f"Unknown generating-set variant: {variant}")
    return RingMatrix(ctx, np.stack(rows))


def orthogonal_bruteforce(
    v: RingVector, budgets: Optional[BudgetSettings] = None
) -> RingMatrix:
    """All x in R^m with v . x = 0, in lexicographic order.

    Raises:
        BudgetExceededError: If |R|^m exceeds the orthogonal budget
    """
    budget = (budgets or BudgetSettings()).orthogonal_budget
    ctx = v.ctx
    total = ctx.size**v.m
    if total > budget:
        raise BudgetExceededError(
            f"Orthogonal enumeration of {total} vectors exceeds budget {budget}"
        )
    logger.debug(f"Enumerating {total} vectors orthogonal to {v}")
    X = all_vectors(ctx, v.m)
    return RingMatrix(ctx, X[batch_dot(ctx, X, v.values) == 0])


def span_bruteforce(G: RingMatrix, budget: int) -> np.ndarray:
    """Sorted lexicographic indices of every vector in the row span of G.

    Raises:
        BudgetExceededError: If |R|^rows exceeds ``budget``
    """
    ctx = G.ctx
    rows, m = G.shape
    if rows == 0:
        return np.zeros(1, dtype=np.int64)
    total = ctx.size**rows
    if total > budget:
        raise BudgetExceededError(
            f"Span enumeration of {total} combinations exceeds budget {budget}"
        )
    combos = all_vectors(ctx, rows)
    return np.unique(vector_indices(ctx, encode_messages(ctx, combos, G.values)))
