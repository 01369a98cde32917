# SPDX-FileCopyrightText: 2025 grmin contributors
# SPDX-License-Identifier: MIT

"""Generator multisets of minimal codes and per-codeword minimality witnesses.

``lambda0`` builds the pairwise construction valid for every m >= 2; ``build_cf``
turns a function table into the (m+1)-dimensional code C_f with columns
``alpha_x = (f(x), x)``. For a root word y = (first, rest) of R^{m+1},
``minimality_witness`` looks for domain points x with ``first f(x) + rest . x = 0``
whose columns alpha_x are independent modulo p. m such columns make the
zero-coordinate module of c(y) have size |R|^m, which certifies c(y) minimal.
"""

from enum import Enum
from itertools import combinations
from typing import Optional

import numpy as np
from loguru import logger

from ..config.settings import BudgetSettings
from .codes import GeneratorMultiset, NotFullDimensionError
from .functions import FunctionTable, MonomialPoly
from .lemmas import (
    LemmaError,
    LemmaPostconditionError,
    fullweight_basis_nonroot,
    lemma19_basis,
    lemma20_basis,
    lemma25_ortho_basis,
    lemma26_scaled,
)
from .linalg import (
    DimensionMismatchError,
    LinalgError,
    NotARootWordError,
    RingMatrix,
    RingVector,
    all_vectors,
    batch_dot,
    first_unit_position,
    independent_rows,
    is_root_word,
    mccoy_rank,
    split_nonroot,
    vector_indices,
    vectors_from_indices,
)
from .ring import RingContext, RingElement, RingMismatchError

WITNESS_STRATEGIES = ("recipe", "search")


class RootWordTag(str, Enum):
    """The five kinds of root words (first, rest) of R^{m+1}."""

    T1_UNIT_ZERO = "T1_unit_zero"
    T2_UNIT_ROOT = "T2_unit_root"
    T3_UNIT_NONROOT = "T3_unit_nonroot"
    T4_ZERO_ROOT = "T4_zero_root"
    T5_ZD_ROOT = "T5_zd_root"


class RootWordType:
    """Tag of a root word together with its two parts."""

    def __init__(self, tag: RootWordTag, first: RingElement, rest: RingVector):
        self.tag = tag
        self.first = first
        self.rest = rest

    def __repr__(self) -> str:
        return f"RootWordType({self.tag.value}, {self.first}, {self.rest})"


class WitnessResult:
    """Outcome of a minimality witness search for one root word of C_f."""

    def __init__(
        self,
        tag: RootWordTag,
        success: bool,
        betas: Optional[RingMatrix],
        source: str,
        examined: int,
        reason: str = "",
    ):
        """Initialize witness result.

        Args:
            tag: Kind of the root word
            success: Whether a certifying family was found
            betas: The m domain points found (rows), None on failure
            source: ``recipe``, ``low_weight`` or ``domain``; ``none`` on failure
            examined: Candidate domain points examined
            reason: Failure explanation
        """
        self.tag = tag
        self.success = success
        self.betas = betas
        self.source = source
        self.examined = examined
        self.reason = reason

    def __bool__(self) -> bool:
        return self.success

    def __repr__(self) -> str:
        state = "found" if self.success else f"failed: {self.reason}"
        return f"WitnessResult({self.tag.value}, {self.source}, {state})"


def lambda0(ctx: RingContext, m: int) -> GeneratorMultiset:
    """Columns e_i; e_i + u e_j (units u); e_i + d e_j and d e_i + e_j (zero divisors d).

    Pairs run over i < j and scalars in lexicographic order, the four blocks in
    that order. The length is m + m(m-1)/2 (q^n + q^{n-1} - 2).

    Raises:
        DimensionMismatchError: If m < 2
    """
    if m < 2:
        raise DimensionMismatchError(f"The pairwise construction needs m >= 2, got {m}")
    units = np.flatnonzero(ctx.unit_mask)
    zero_divisors = np.flatnonzero(~ctx.unit_mask)[1:]
    pairs = list(combinations(range(m), 2))

    columns = [ctx.one * np.eye(m, dtype=np.int64)[i] for i in range(m)]
    for scalars, scalar_first in ((units, False), (zero_divisors, False), (zero_divisors, True)):
        for i, j in pairs:
            for s in scalars:
                col = np.zeros(m, dtype=np.int64)
                col[i], col[j] = (s, ctx.one) if scalar_first else (ctx.one, s)
                columns.append(col)

    generators = GeneratorMultiset(ctx, np.stack(columns))
    logger.debug(f"Pairwise construction over {ctx.descriptor()}, m={m}: k={generators.k}")
    return generators


def lambda0_length(ctx: RingContext, m: int) -> int:
    return m + m * (m - 1) // 2 * (ctx.q**ctx.n + ctx.q ** (ctx.n - 1) - 2)


def build_cf(f: FunctionTable) -> GeneratorMultiset:
    """Columns alpha_x = (f(x), x) over the domain of f in lexicographic x order.

    Raises:
        NotFullDimensionError: If the columns have McCoy rank below m + 1
    """
    X = vectors_from_indices(f.ctx, f.domain_indices, f.m)
    columns = np.concatenate([f.values[f.domain_indices][:, None], X], axis=1)
    generators = GeneratorMultiset(f.ctx, columns)
    rank = generators.mccoy_rank()
    if rank < f.m + 1:
        raise NotFullDimensionError(f"C_f columns have McCoy rank {rank} < {f.m + 1}")
    logger.debug(f"C_f for family {f.family}, m={f.m}: length {generators.k}")
    return generators


def classify_codeword_vector(first: RingElement, rest: RingVector) -> RootWordType:
    """Tag a root word (first, rest) of R^{m+1} with its kind.

    Raises:
        NotARootWordError: If neither first nor any entry of rest is a unit
    """
    if first.ctx != rest.ctx:
        raise RingMismatchError("Parts of a codeword vector over different rings")
    rest_root = is_root_word(rest)
    if first.is_unit():
        if rest.is_zero():
            tag = RootWordTag.T1_UNIT_ZERO
        elif rest_root:
            tag = RootWordTag.T2_UNIT_ROOT
        else:
            tag = RootWordTag.T3_UNIT_NONROOT
    elif not rest_root:
        raise NotARootWordError(f"({first}, {rest}) is not a root word")
    elif first.is_zero():
        tag = RootWordTag.T4_ZERO_ROOT
    else:
        tag = RootWordTag.T5_ZD_ROOT
    return RootWordType(tag, first, rest)


def root_words(ctx: RingContext, m: int) -> np.ndarray:
    """All root words of R^m in lexicographic order, one per row."""
    X = all_vectors(ctx, m)
    return X[np.any(ctx.unit_mask[X], axis=1)]


# Recipe points


class _Orthogonal:
    """Rows beta_l = e_l - y_l y_pivot^{-1} e_pivot of O(y) for a root word y."""

    def __init__(self, ctx: RingContext, y: np.ndarray) -> None:
        self.ctx = ctx
        self.y = y
        self.pivot = first_unit_position(RingVector(ctx, y))
        self.pivot_inv = int(ctx.inv_table[y[self.pivot]])
        self.rows: dict[int, np.ndarray] = {}
        for l in range(len(y)):
            if l == self.pivot:
                continue
            row = np.zeros(len(y), dtype=np.int64)
            row[l] = ctx.one
            row[self.pivot] = ctx.neg_table[ctx.mul_table[y[l], self.pivot_inv]]
            self.rows[l] = row

    def block(self) -> np.ndarray:
        if not self.rows:
            return np.zeros((0, len(self.y)), dtype=np.int64)
        return np.stack(list(self.rows.values()))

    def combine(self, positions: list[int], scales: Optional[dict[int, int]] = None) -> np.ndarray:
        """Sum of the rows at positions, each multiplied by its scale (default 1)."""
        ctx = self.ctx
        total = np.zeros(len(self.y), dtype=np.int64)
        for l in positions:
            scale = (scales or {}).get(l, ctx.one)
            total = ctx.add_table[total, ctx.mul_table[scale, self.rows[l]]]
        return total

    def shifted(
        self, head: int, positions: list[int], scales: Optional[dict[int, int]] = None
    ) -> np.ndarray:
        """``head e_pivot + combine(positions, scales)``."""
        x = self.combine(positions, scales)
        x[self.pivot] = self.ctx.add_table[x[self.pivot], head]
        return x


def _polynomial_term(f: FunctionTable, pivot: int) -> Optional[tuple[int, list[int], int]]:
    """Coefficient, support and first exponent-one variable of the first term avoiding pivot."""
    if f.family != "poly" or "poly" not in f.params:
        return None
    poly = MonomialPoly.parse(str(f.params["poly"]), f.ctx, f.m)
    for term in poly.terms:
        support = sorted(term.support)
        if not support or pivot in support:
            continue
        linear = [j for j in support if term.exponents[j] == 1]
        if linear:
            return term.coefficient, support, linear[0]
    return None


def _unit_first_points(f: FunctionTable, a: int, v: np.ndarray) -> list[np.ndarray]:
    """Points with f(x) = w . x, w = -a^{-1} v, for a unit first coordinate a."""
    ctx = f.ctx
    w = ctx.mul_table[ctx.neg_table[ctx.inv_table[a]], v]
    w_vec = RingVector(ctx, w)
    if is_root_word(w_vec):
        points = [lemma20_basis(w_vec).values]
        y, r = w, 0
    else:
        r, y_vec = split_nonroot(w_vec)
        y = y_vec.values
        points = []
        if ctx.q > 3 or np.count_nonzero(w == 0) < 2:
            points.append(fullweight_basis_nonroot(w_vec).values)

    ortho = _Orthogonal(ctx, y)
    others = list(ortho.rows)
    if others:
        points.append(ortho.block())
        if r == 0:
            points.append(ortho.shifted(ortho.pivot_inv, others))
        else:
            p_r = int(ctx.p_powers[r])
            points.append(ortho.shifted(ctx.one, others, {l: p_r for l in others}))

    term = _polynomial_term(f, ortho.pivot)
    if term is not None:
        coefficient, support, linear = term
        # The chosen monomial evaluates to p^r and f(x) = coefficient p^r = w . x.
        scales = {linear: int(ctx.p_powers[r])} if r else None
        head = int(ctx.mul_table[coefficient, ortho.pivot_inv])
        points.append(ortho.shifted(head, support, scales))
    return points


def _nonunit_first_points(f: FunctionTable, a: int, v: np.ndarray) -> list[np.ndarray]:
    """Points with a f(x) + v . x = 0 for a root word v and a non-unit a."""
    ctx = f.ctx
    v_vec = RingVector(ctx, v)
    ortho = _Orthogonal(ctx, v)
    others = list(ortho.rows)
    points = [lemma25_ortho_basis(v_vec).values]
    if a == 0:
        if others:
            points.append(ortho.combine(others))
    else:
        r = int(ctx.valuation_table[a])
        points.append(lemma26_scaled(v_vec, r).values)
        head = int(ctx.mul_table[ctx.p_powers[r], ortho.pivot_inv])
        points.append(ortho.shifted(head, others))

    term = _polynomial_term(f, ortho.pivot)
    if term is not None:
        coefficient, support, _ = term
        # The monomial evaluates to 1, so c v_pivot = -a coefficient.
        head = int(ctx.mul_table[ctx.neg_table[ctx.mul_table[a, coefficient]], ortho.pivot_inv])
        points.append(ortho.shifted(head, support))
    return points


def _recipe_candidates(f: FunctionTable, kind: RootWordType) -> np.ndarray:
    """Points suggested by the constructions of the known families, with unit multiples."""
    ctx, m = f.ctx, f.m
    a, v = kind.first.index, kind.rest.values
    if kind.tag is RootWordTag.T1_UNIT_ZERO:
        points = [ctx.one * np.eye(m, dtype=np.int64)]
        if ctx.q > 3:
            points.append(lemma19_basis(ctx, m).values)
    else:
        try:
            if kind.first.is_unit():
                points = _unit_first_points(f, a, v)
            else:
                points = _nonunit_first_points(f, a, v)
        except (LemmaError, LinalgError) as e:
            if isinstance(e, LemmaPostconditionError):
                raise
            logger.debug(f"No recipe points for {kind!r}: {e}")
            return np.zeros((0, m), dtype=np.int64)

    block = np.concatenate([np.atleast_2d(p) for p in points], axis=0).astype(np.int64)
    units = np.flatnonzero(ctx.unit_mask)
    multiples = ctx.mul_table[units[:, None, None], block[None, :, :]].reshape(-1, m)
    return np.concatenate([block, multiples], axis=0)


def _select(
    f: FunctionTable, kind: RootWordType, X: np.ndarray
) -> tuple[Optional[np.ndarray], int]:
    """First m usable domain points among the rows of X with columns independent mod p.

    Returns the chosen points (None if fewer than m) and the number of domain
    points examined.
    """
    ctx, m = f.ctx, f.m
    if X.shape[0] == 0:
        return None, 0
    idx = vector_indices(ctx, X)
    in_domain = f.domain_mask[idx]
    X, idx = X[in_domain], idx[in_domain]
    examined = int(X.shape[0])
    if examined == 0:
        return None, 0
    fx = f.values[idx]
    lhs = ctx.add_table[ctx.mul_table[kind.first.index, fx], batch_dot(ctx, X, kind.rest.values)]
    usable = lhs == 0
    X, fx = X[usable], fx[usable]
    if X.shape[0] < m:
        return None, examined
    chosen = independent_rows(ctx, np.concatenate([fx[:, None], X], axis=1))
    if len(chosen) < m:
        return None, examined
    return X[chosen[:m]], examined


def minimality_witness(
    f: FunctionTable,
    first: RingElement,
    rest: RingVector,
    strategy: str = "recipe",
    budgets: Optional[BudgetSettings] = None,
) -> WitnessResult:
    """Find m domain points certifying that c(first, rest) is minimal in C_f.

    Candidates are tried in stages: the recipe points of the known families and
    their unit multiples (``strategy="recipe"`` only), then the domain points of
    weight at most 2, then the whole domain up to the witness budget. A stage
    succeeds with m points x satisfying ``first f(x) + rest . x = 0`` whose
    columns (f(x), x) are independent modulo p. For a unit ``first`` those
    points then form a basis of R^m.

    Args:
        f: Function table defining C_f
        first: First coordinate of the message
        rest: Remaining m coordinates of the message
        strategy: ``recipe`` or ``search``
        budgets: Caps; the domain scan stops at ``witness_budget`` points

    Raises:
        NotARootWordError: If (first, rest) is not a root word
        DimensionMismatchError: If rest does not have length m
        ValueError: On an unknown strategy
    """
    if strategy not in WITNESS_STRATEGIES:
        raise ValueError(f"Unknown witness strategy: {strategy}")
    budgets = budgets or BudgetSettings()
    if rest.m != f.m:
        raise DimensionMismatchError(f"rest has length {rest.m}, expected m={f.m}")
    kind = classify_codeword_vector(first, rest)
    ctx, m = f.ctx, f.m

    domain = f.domain_indices
    if domain.size > budgets.witness_budget:
        logger.warning(
            f"Domain scan limited to {budgets.witness_budget} of {domain.size} points"
        )
        domain = domain[: budgets.witness_budget]
    X = vectors_from_indices(ctx, domain, m)

    stages: list[tuple[str, np.ndarray]] = []
    if strategy == "recipe":
        stages.append(("recipe", _recipe_candidates(f, kind)))
    stages.append(("low_weight", X[np.count_nonzero(X, axis=1) <= 2]))
    stages.append(("domain", X))

    examined = 0
    for source, candidates in stages:
        betas, seen = _select(f, kind, candidates)
        examined += seen
        if betas is None:
            continue
        if first.is_unit() and mccoy_rank(RingMatrix(ctx, betas)) != m:
            raise LemmaPostconditionError(f"Witness points for {kind!r} are not a basis of R^m")
        logger.debug(f"Witness for {kind!r} from {source} after {examined} points")
        return WitnessResult(kind.tag, True, RingMatrix(ctx, betas), source, examined)

    logger.debug(f"No witness for {kind!r} after {examined} points")
    return WitnessResult(
        kind.tag,
        False,
        None,
        "none",
        examined,
        "fewer than m usable points with independent columns",
    )


__all__ = [
    "WITNESS_STRATEGIES",
    "RootWordTag",
    "RootWordType",
    "WitnessResult",
    "build_cf",
    "classify_codeword_vector",
    "lambda0",
    "lambda0_length",
    "minimality_witness",
    "root_words",
]
