# SPDX-FileCopyrightText: 2025 grmin contributors
# SPDX-License-Identifier: MIT

"""Explicit bases of R^m and of orthogonal modules used by the C_f witnesses.

Every constructor checks its defining identities after building the rows and
raises :class:`LemmaPostconditionError` if one fails, so callers can rely on the
returned rows without re-deriving them.
"""

from typing import Optional

import numpy as np
from loguru import logger

from .linalg import (
    RingMatrix,
    RingVector,
    batch_dot,
    first_unit_position,
    is_root_word,
    mccoy_rank,
    orthogonal_basis_rootword,
)
from .ring import ElementLike, RingContext, RingElement


class LemmaError(Exception):
    """Base exception for basis constructions."""

    pass


class LemmaPreconditionError(LemmaError):
    """Raised when a construction is called outside its hypotheses."""

    pass


class LemmaPostconditionError(LemmaError):
    """Raised when constructed rows fail their defining identities."""

    pass


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise LemmaPostconditionError(message)


def _weights(rows: np.ndarray) -> np.ndarray:
    return np.count_nonzero(rows, axis=1)


def _check_dots(
    ctx: RingContext, rows: np.ndarray, v: np.ndarray, expected: np.ndarray, name: str
) -> None:
    dots = batch_dot(ctx, rows, v)
    _require(
        bool(np.array_equal(dots, expected)),
        f"{name}: inner products {dots.tolist()} differ from {np.asarray(expected).tolist()}",
    )


def lemma19_parameter(ctx: RingContext, m: int) -> RingElement:
    """Smallest Teichmuller element a with a not congruent to 0, 1 or m modulo p.

    Raises:
        LemmaPreconditionError: If q <= 3
    """
    if ctx.q <= 3:
        raise LemmaPreconditionError(f"Full-weight unit basis needs q > 3, got q={ctx.q}")
    excluded = {0, int(ctx.residue_table[ctx.one]), int(ctx.residue_table[ctx.from_int(m)])}
    for t in np.sort(ctx.teichmuller):
        if int(ctx.residue_table[t]) not in excluded:
            return RingElement(ctx, int(t))
    raise LemmaPreconditionError("No admissible parameter found")  # pragma: no cover


def lemma19_basis(
    ctx: RingContext, m: int, a: Optional[ElementLike] = None
) -> RingMatrix:
    """Rows of a I_m - A (A all-ones): m full-weight rows with unit entries.

    The determinant is a^{m-1}(a - m), a unit whenever a is not congruent to 0
    or m modulo p; a not congruent to 1 keeps the diagonal entries units.

    Args:
        ctx: Ring
        m: Dimension (>= 1)
        a: Parameter; the smallest admissible Teichmuller element when omitted

    Raises:
        LemmaPreconditionError: If q <= 3 or a is congruent to 0, 1 or m mod p
    """
    if ctx.q <= 3:
        raise LemmaPreconditionError(f"Full-weight unit basis needs q > 3, got q={ctx.q}")
    if m < 1:
        raise LemmaPreconditionError(f"m must be >= 1, got {m}")
    element = lemma19_parameter(ctx, m) if a is None else ctx.element(a)
    residue = element.residue
    forbidden = (
        (0, "0"),
        (ctx.residue_table[ctx.one], "1"),
        (ctx.residue_table[ctx.from_int(m)], "m"),
    )
    for bad, label in forbidden:
        if residue == int(bad):
            raise LemmaPreconditionError(f"a = {element} is congruent to {label} modulo p")

    minus_one = int(ctx.neg_table[ctx.one])
    rows = np.full((m, m), minus_one, dtype=np.int64)
    np.fill_diagonal(rows, ctx.add_table[element.index, minus_one])

    _require(bool(ctx.unit_mask[rows].all()), "lemma19: every entry must be a unit")
    _require(mccoy_rank(RingMatrix(ctx, rows)) == m, "lemma19: rows must form a basis")
    return RingMatrix(ctx, rows)


def lemma20_basis(v: RingVector) -> RingMatrix:
    """Basis {beta_i} of R^m with v . beta_i = 1 and 1 <= w(beta_i) <= 2.

    beta_{i'} = v_{i'}^{-1} e_{i'} at the first unit coordinate i', and
    beta_j = e_j + v_{i'}^{-1}(1 - v_j) e_{i'} for the other positions.

    Raises:
        LemmaPreconditionError: If v is not a root word
    """
    ctx = v.ctx
    if not is_root_word(v):
        raise LemmaPreconditionError(f"{v} is not a root word")
    pivot = first_unit_position(v)
    u_inv = int(ctx.inv_table[v.values[pivot]])
    rows = np.zeros((v.m, v.m), dtype=np.int64)
    for j in range(v.m):
        if j == pivot:
            rows[j, pivot] = u_inv
            continue
        rows[j, j] = ctx.one
        one_minus = ctx.add_table[ctx.one, ctx.neg_table[v.values[j]]]
        rows[j, pivot] = ctx.mul_table[u_inv, one_minus]

    _check_dots(ctx, rows, v.values, np.full(v.m, ctx.one), "lemma20")
    weights = _weights(rows)
    _require(bool(((weights >= 1) & (weights <= 2)).all()), "lemma20: weights must lie in [1, 2]")
    _require(mccoy_rank(RingMatrix(ctx, rows)) == v.m, "lemma20: rows must form a basis")
    return RingMatrix(ctx, rows)


def _reproducing_rows(ctx: RingContext, sub: np.ndarray) -> np.ndarray:
    """Full-weight rows on a vector with no zero and no unit entries, row i . sub = sub_i."""
    size = len(sub)
    valuations = ctx.valuation_table[sub]
    rows = np.zeros((size, size), dtype=np.int64)
    for i in range(size):
        pr = int(ctx.p_powers[valuations[i]])
        row = np.full(size, pr, dtype=np.int64)
        row[i] = ctx.one
        dot = int(batch_dot(ctx, row[None, :], sub)[0])
        u = int(ctx.unit_part_table[dot])
        scale = ctx.mul_table[ctx.inv_table[u], ctx.unit_part_table[sub[i]]]
        rows[i] = ctx.mul_table[scale, row]
    return rows


def fullweight_basis_nonroot(v: RingVector) -> RingMatrix:
    """Full-weight basis {beta_i} of R^m with v . beta_i = v_i for every i.

    v must be nonzero with every entry in <p>. The rows are built on the nonzero
    positions of v by rescaled ``e_i + p^{r_i} sum_{j != i} e_j`` rows; zero
    positions are filled according to how many zero coordinates v has:

    * none: the rescaled rows alone;
    * exactly one: nonzero rows carry v_i there, and the row of the zero
      position pairs two entries that cancel in v . gamma, with p^{n-r_k}
      padding elsewhere and 1 at the zero position;
    * two or more (needs q > 3): nonzero rows carry v_i on every zero position,
      and the zero-position rows are p^{n-1} on the nonzero positions over the
      full-weight unit basis on the zero positions.

    Rows of zero positions hold at least two unit entries whenever v has a zero
    coordinate and, for the single-zero case, at least two nonzero coordinates.

    Raises:
        LemmaPreconditionError: If v is zero or a root word, or two or more
            zeros occur with q <= 3
    """
    ctx = v.ctx
    if v.is_zero() or is_root_word(v):
        raise LemmaPreconditionError(f"{v} must be nonzero and not a root word")
    m = v.m
    zero_pos = np.flatnonzero(v.values == 0)
    nz_pos = np.flatnonzero(v.values != 0)
    if zero_pos.size >= 2 and ctx.q <= 3:
        raise LemmaPreconditionError(
            f"Two or more zero coordinates need q > 3, got q={ctx.q}"
        )

    rows = np.zeros((m, m), dtype=np.int64)
    sub_rows = _reproducing_rows(ctx, v.values[nz_pos])
    for a, i in enumerate(nz_pos):
        rows[i, nz_pos] = sub_rows[a]
        rows[i, zero_pos] = v.values[i]

    valuations = ctx.valuation_table[v.values]
    units = ctx.unit_part_table[v.values]
    if zero_pos.size == 1:
        z = int(zero_pos[0])
        gamma = np.zeros(m, dtype=np.int64)
        gamma[z] = ctx.one
        for k in nz_pos:
            gamma[k] = ctx.p_powers[ctx.n - valuations[k]]
        if nz_pos.size >= 2:
            nz_vals = valuations[nz_pos]
            if np.all(nz_vals == nz_vals[0]):
                i, j = int(nz_pos[0]), int(nz_pos[1])
                shift = 0
            else:
                i = int(nz_pos[np.argmax(nz_vals)])
                j = int(nz_pos[np.argmin(nz_vals)])
                shift = int(valuations[i] - valuations[j])
            gamma[i] = ctx.one
            ratio = ctx.mul_table[ctx.inv_table[units[j]], units[i]]
            gamma[j] = ctx.neg_table[ctx.mul_table[ratio, ctx.p_powers[shift]]]
        rows[z] = gamma
    elif zero_pos.size >= 2:
        block = lemma19_basis(ctx, int(zero_pos.size)).values
        pad = int(ctx.p_powers[ctx.n - 1])
        for a, z in enumerate(zero_pos):
            rows[z, nz_pos] = pad
            rows[z, zero_pos] = block[a]

    _check_dots(ctx, rows, v.values, v.values, "fullweight")
    _require(bool((rows != 0).all()), "fullweight: every row must have full weight")
    _require(mccoy_rank(RingMatrix(ctx, rows)) == m, "fullweight: rows must form a basis")
    if zero_pos.size >= 2 or (zero_pos.size == 1 and nz_pos.size >= 2):
        unit_counts = np.count_nonzero(ctx.unit_mask[rows[zero_pos]], axis=1)
        _require(bool((unit_counts >= 2).all()), "fullweight: zero-position rows need two units")
    logger.debug(f"Full-weight basis for {v} with {zero_pos.size} zero coordinates")
    return RingMatrix(ctx, rows)


def lemma25_ortho_basis(v: RingVector) -> RingMatrix:
    """Basis of O(v) for a root word v with every row of weight 1 or 2.

    Raises:
        LemmaPreconditionError: If v is not a root word
    """
    if not is_root_word(v):
        raise LemmaPreconditionError(f"{v} is not a root word")
    basis = orthogonal_basis_rootword(v)
    if basis.shape[0]:
        weights = _weights(basis.values)
        _require(
            bool(((weights >= 1) & (weights <= 2)).all()),
            "ortho basis: weights must lie in [1, 2]",
        )
        _check_dots(v.ctx, basis.values, v.values, np.zeros(basis.shape[0]), "ortho basis")
    return basis


def lemma26_scaled(v: RingVector, r: int) -> RingMatrix:
    """Rows in O(p^{n-r} v) with v . beta_i = p^r and weights 1 or 2.

    With u the first unit coordinate of v at position i', the row of i' is
    p^r u^{-1} e_{i'} and the row of j != i' is (p^r u^{-1} - v_j u^{-1}) e_{i'} + e_j.

    Raises:
        LemmaPreconditionError: If v is not a root word or r is outside [1, n-1]
    """
    ctx = v.ctx
    if not is_root_word(v):
        raise LemmaPreconditionError(f"{v} is not a root word")
    if not 1 <= r <= ctx.n - 1:
        raise LemmaPreconditionError(f"r must lie in [1, {ctx.n - 1}], got {r}")
    pivot = first_unit_position(v)
    u_inv = int(ctx.inv_table[v.values[pivot]])
    head = int(ctx.mul_table[ctx.p_powers[r], u_inv])
    rows = np.zeros((v.m, v.m), dtype=np.int64)
    for j in range(v.m):
        if j == pivot:
            rows[j, pivot] = head
            continue
        rows[j, j] = ctx.one
        rows[j, pivot] = ctx.add_table[head, ctx.neg_table[ctx.mul_table[v.values[j], u_inv]]]

    _check_dots(ctx, rows, v.values, np.full(v.m, ctx.p_powers[r]), "scaled")
    scaled = ctx.mul_table[ctx.p_powers[ctx.n - r], v.values]
    _check_dots(ctx, rows, scaled, np.zeros(v.m), "scaled annihilation")
    weights = _weights(rows)
    _require(bool(((weights >= 1) & (weights <= 2)).all()), "scaled: weights must lie in [1, 2]")
    return RingMatrix(ctx, rows)
