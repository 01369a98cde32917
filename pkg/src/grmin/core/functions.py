# SPDX-FileCopyrightText: 2025 grmin contributors
# SPDX-License-Identifier: MIT

"""Functions f: R^m -> R feeding the C_f construction, and their condition checks.

A :class:`FunctionTable` stores f as a dense table over all of R^m, indexed by
the lexicographic vector index; entries outside the declared domain are zero
and never read. Named families are rebuilt from their rule, explicit tables
carry their values.
"""

import re
from typing import Any, NamedTuple, Optional, Union

import numpy as np
from loguru import logger
from pydantic import BaseModel, Field

from ..config.constants import (
    CONDITION_FAMILIES,
    DOMAIN_MODES,
    FUNCTION_TABLE_CAP,
    FUNCTION_TABLE_FORMAT,
)
from .linalg import all_vectors, root_word_mask, vector_indices
from .ring import RingContext, RingError


class FunctionTableError(Exception):
    """Base exception for function tables."""

    pass


class ParameterGuardError(FunctionTableError):
    """Raised when a canonical family is requested outside its parameter range."""

    pass


class PolynomialSyntaxError(FunctionTableError):
    """Raised when a monomial polynomial cannot be parsed or is invalid."""

    pass


class Monomial(NamedTuple):
    """One term a * prod x_j^{b_j} with a unit coefficient (element index)."""

    coefficient: int
    exponents: tuple[int, ...]

    @property
    def support(self) -> frozenset[int]:
        """Zero-based positions with a nonzero exponent."""
        return frozenset(j for j, b in enumerate(self.exponents) if b)


_VARIABLE = re.compile(r"^x(\d+)(?:\^(\d+))?$")


class MonomialPoly:
    """Sum of unit-coefficient monomials in x1, ..., xm."""

    def __init__(self, ctx: RingContext, terms: list[Monomial]) -> None:
        """Initialize a polynomial.

        Args:
            ctx: Ring of the coefficients
            terms: Monomials, all with exponent vectors of the same length

        Raises:
            PolynomialSyntaxError: If there are no terms, lengths differ or a
                coefficient is not a unit
        """
        if not terms:
            raise PolynomialSyntaxError("A polynomial needs at least one term")
        lengths = {len(term.exponents) for term in terms}
        if len(lengths) != 1:
            raise PolynomialSyntaxError("Monomials of different arity")
        for term in terms:
            if not ctx.unit_mask[term.coefficient]:
                raise PolynomialSyntaxError(
                    f"Coefficient {ctx.format_index(term.coefficient)} is not a unit"
                )
        self.ctx = ctx
        self.terms = terms

    @property
    def m(self) -> int:
        return len(self.terms[0].exponents)

    @property
    def t(self) -> int:
        return len(self.terms)

    @property
    def supports(self) -> list[frozenset[int]]:
        return [term.support for term in self.terms]

    @property
    def variables_used(self) -> int:
        """One more than the largest variable position occurring in some term."""
        used = [max(s) for s in self.supports if s]
        return max(used) + 1 if used else 0

    @classmethod
    def parse(cls, text: str, ctx: RingContext, m: Optional[int] = None) -> "MonomialPoly":
        """Parse ``u*x1*x2*x3 + x4*x5^2*x6``.

        Coefficients are element literals (``3`` or ``(1,1)``) multiplied into
        the term; a term without one has coefficient 1. Repeated variables add
        their exponents.

        Args:
            text: Polynomial text
            ctx: Ring of the coefficients
            m: Arity; defaults to the largest variable index used

        Raises:
            PolynomialSyntaxError: On malformed text, variables beyond m or
                non-unit coefficients
        """
        raw_terms = [term.strip() for term in text.split("+")]
        if not text.strip() or any(not term for term in raw_terms):
            raise PolynomialSyntaxError(f"Empty term in polynomial: {text!r}")

        parsed: list[tuple[int, dict[int, int]]] = []
        for raw in raw_terms:
            coefficient = ctx.one
            powers: dict[int, int] = {}
            for factor in (f.strip() for f in raw.split("*")):
                match = _VARIABLE.match(factor)
                if match:
                    var = int(match.group(1))
                    exp = int(match.group(2)) if match.group(2) else 1
                    if var < 1 or exp < 1:
                        raise PolynomialSyntaxError(f"Invalid factor {factor!r}")
                    powers[var - 1] = powers.get(var - 1, 0) + exp
                    continue
                try:
                    value = ctx.parse_element(factor)
                except RingError as e:
                    raise PolynomialSyntaxError(f"Invalid factor {factor!r}") from e
                coefficient = int(ctx.mul_table[coefficient, value.index])
            parsed.append((coefficient, powers))

        highest = max((max(p) + 1 for _, p in parsed if p), default=0)
        arity = highest if m is None else m
        if highest > arity:
            raise PolynomialSyntaxError(f"Variable x{highest} exceeds m={arity}")
        if arity < 1:
            raise PolynomialSyntaxError("Polynomial uses no variables")
        terms = [
            Monomial(c, tuple(p.get(j, 0) for j in range(arity))) for c, p in parsed
        ]
        return cls(ctx, terms)

    def evaluate(self, X: np.ndarray) -> np.ndarray:
        """Values at the rows of X (element indices)."""
        ctx = self.ctx
        total = np.zeros(X.shape[0], dtype=np.int64)
        for term in self.terms:
            acc = np.full(X.shape[0], term.coefficient, dtype=np.int64)
            for j, b in enumerate(term.exponents):
                if b:
                    acc = ctx.mul_table[acc, ctx.power(X[:, j], b)]
            total = ctx.add_table[total, acc]
        return total

    def __str__(self) -> str:
        parts = []
        for term in self.terms:
            factors = []
            if term.coefficient != self.ctx.one:
                literal = self.ctx.format_index(term.coefficient)
                factors.append(literal if self.ctx.ell == 1 else f"({literal})")
            for j, b in enumerate(term.exponents):
                if b == 1:
                    factors.append(f"x{j + 1}")
                elif b > 1:
                    factors.append(f"x{j + 1}^{b}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"MonomialPoly({self})"


class FunctionTable:
    """Total map f on a domain of R^m stored as a dense value table."""

    def __init__(
        self,
        ctx: RingContext,
        m: int,
        values: Any,
        family: str = "explicit",
        params: Optional[dict[str, Any]] = None,
        domain_mode: str = "all_nonzero",
    ) -> None:
        """Initialize a function table.

        Args:
            ctx: Ring of the values
            m: Arity
            values: |R|^m element indices, one per vector in lexicographic order
            family: ``thm43``, ``thm46``, ``poly`` or ``explicit``
            params: Rule parameters (``{"poly": text}`` for polynomials)
            domain_mode: ``all_nonzero`` or ``root_words_only``

        Raises:
            FunctionTableError: On shape, range or mode errors
        """
        if domain_mode not in DOMAIN_MODES:
            raise FunctionTableError(f"Unknown domain mode: {domain_mode}")
        if m < 1:
            raise FunctionTableError(f"m must be >= 1, got {m}")
        array = np.array(values, dtype=np.int64)
        expected = ctx.size**m
        if array.shape != (expected,):
            raise FunctionTableError(
                f"Expected {expected} values for m={m}, got shape {array.shape}"
            )
        if array.min() < 0 or array.max() >= ctx.size:
            raise FunctionTableError("Function value outside the ring")
        self.ctx = ctx
        self.m = m
        self.family = family
        self.params = dict(params or {})
        self.domain_mode = domain_mode
        self.domain_mask = _domain_mask(ctx, m, domain_mode)
        self.domain_mask.flags.writeable = False
        array[~self.domain_mask] = 0
        array.flags.writeable = False
        self.values = array

    @classmethod
    def explicit(
        cls, ctx: RingContext, m: int, values: Any, domain_mode: str = "all_nonzero"
    ) -> "FunctionTable":
        return cls(ctx, m, values, "explicit", None, domain_mode)

    @property
    def domain_indices(self) -> np.ndarray:
        return np.flatnonzero(self.domain_mask)

    @property
    def domain_size(self) -> int:
        return int(np.count_nonzero(self.domain_mask))

    def evaluate(self, X: np.ndarray) -> np.ndarray:
        """Values at the rows of X."""
        return self.values[vector_indices(self.ctx, X)]

    def __call__(self, x: Any) -> int:
        """Value (element index) at one vector given as indices or a RingVector."""
        values = getattr(x, "values", x)
        return int(self.evaluate(np.asarray(values, dtype=np.int64)[None, :])[0])

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready description; values are listed for explicit tables only."""
        data: dict[str, Any] = {
            "format": FUNCTION_TABLE_FORMAT,
            "family": self.family,
            "m": self.m,
            "ring": self.ctx.descriptor(),
            "params": self.params,
            "domain": self.domain_mode,
        }
        if self.family == "explicit":
            data["values"] = [self.ctx.format_index(int(v)) for v in self.values]
        return data

    @classmethod
    def from_dict(cls, ctx: RingContext, data: dict[str, Any]) -> "FunctionTable":
        """Rebuild a table from :meth:`to_dict` output over the ring ``ctx``.

        Raises:
            FunctionTableError: If the data is incomplete or inconsistent
        """
        if data.get("format") != FUNCTION_TABLE_FORMAT:
            raise FunctionTableError(f"Unsupported function format: {data.get('format')}")
        try:
            family = str(data["family"])
            m = int(data["m"])
            domain = str(data.get("domain", "all_nonzero"))
            params = dict(data.get("params", {}))
        except (KeyError, TypeError, ValueError) as e:
            raise FunctionTableError(f"Incomplete function description: {e}") from e

        if family == "explicit":
            literals = data.get("values")
            if not isinstance(literals, list):
                raise FunctionTableError("Explicit function without a value list")
            try:
                values = [ctx.parse_element(str(v)).index for v in literals]
            except RingError as e:
                raise FunctionTableError(f"Invalid function value: {e}") from e
            return cls.explicit(ctx, m, values, domain)
        poly = None
        if family == "poly":
            poly = MonomialPoly.parse(str(params.get("poly", "")), ctx, m)
        return canonical_f(ctx, family, m, poly=poly, domain_mode=domain)

    def __repr__(self) -> str:
        return (
            f"FunctionTable({self.family}, m={self.m}, {self.domain_mode}, "
            f"{self.ctx.descriptor()})"
        )


def _domain_mask(ctx: RingContext, m: int, domain_mode: str) -> np.ndarray:
    total = ctx.size**m
    if domain_mode == "root_words_only":
        return root_word_mask(ctx, all_vectors(ctx, m))
    mask = np.ones(total, dtype=bool)
    mask[0] = False
    return mask


class _Strata:
    """Weight, unit count and single-unit valuation data for every vector of R^m."""

    def __init__(self, ctx: RingContext, m: int) -> None:
        X = all_vectors(ctx, m)
        units = ctx.unit_mask[X]
        valuations = ctx.valuation_table[X]
        self.X = X
        self.weight = np.count_nonzero(X, axis=1)
        self.units = np.count_nonzero(units, axis=1)
        low = np.where(units, ctx.n + 1, valuations).min(axis=1)
        high = np.where(units, -1, valuations).max(axis=1)
        full = self.weight == m
        self.single_unit = full & (self.units == 1)
        # one unit and every other component p^r u_j with one shared r
        self.uniform = self.single_unit & (low == high)
        self.mixed = self.single_unit & (low != high)
        self.r = np.where(self.uniform, low, 0)
        self.full_multi_unit = full & (self.units >= 2)
        self.low_weight = (self.weight >= 1) & (self.weight <= 2)


def _check_table_size(ctx: RingContext, m: int) -> None:
    if ctx.size**m > FUNCTION_TABLE_CAP:
        raise FunctionTableError(
            f"|R|^m = {ctx.size**m} exceeds the function table cap {FUNCTION_TABLE_CAP}"
        )


def canonical_f(
    ctx: RingContext,
    family: str,
    m: int,
    poly: Optional[MonomialPoly] = None,
    domain_mode: str = "all_nonzero",
) -> FunctionTable:
    """Canonical member of a construction family.

    * ``thm43`` (q > 3, m >= 3): 1 on weights 1 and 2; 0 on full-weight vectors
      with two or more units; p^r on full-weight vectors with exactly one unit
      whose other components all have valuation r; 0 elsewhere.
    * ``thm46`` (m > 3): 0 on weights 1 and 2; p^r on the same single-unit
      stratum; 1 where w(x) >= m-1 and at least m-1 components are units; 0
      elsewhere.
    * ``poly``: the given monomial polynomial.

    Raises:
        ParameterGuardError: If the family's parameter range is violated
        FunctionTableError: If the family is unknown or the table too large
    """
    _check_table_size(ctx, m)
    if family == "poly":
        if poly is None:
            raise ParameterGuardError("The poly family needs a polynomial")
        if poly.ctx != ctx:
            raise ParameterGuardError("Polynomial over a different ring")
        if poly.variables_used > m:
            raise ParameterGuardError(
                f"Polynomial uses {poly.variables_used} variables, more than m={m}"
            )
        if poly.m != m:
            poly = MonomialPoly(
                ctx,
                [
                    Monomial(t.coefficient, (t.exponents + (0,) * m)[:m])
                    for t in poly.terms
                ],
            )
        values = poly.evaluate(all_vectors(ctx, m))
        table = FunctionTable(ctx, m, values, "poly", {"poly": str(poly)}, domain_mode)
        logger.debug(f"Built {table!r} for f = {poly}")
        return table

    if family == "thm43":
        if ctx.q <= 3 or m < 3:
            raise ParameterGuardError(f"thm43 needs q > 3 and m >= 3, got q={ctx.q}, m={m}")
    elif family == "thm46":
        if m <= 3:
            raise ParameterGuardError(f"thm46 needs m > 3, got m={m}")
    else:
        raise FunctionTableError(f"Unknown function family: {family}")

    strata = _Strata(ctx, m)
    values = np.zeros(ctx.size**m, dtype=np.int64)
    p_power = ctx.p_powers[strata.r]
    if family == "thm43":
        values[strata.low_weight] = ctx.one
        values[strata.uniform] = p_power[strata.uniform]
    else:
        values[(strata.weight >= m - 1) & (strata.units >= m - 1)] = ctx.one
        values[strata.uniform] = p_power[strata.uniform]
    table = FunctionTable(ctx, m, values, family, {}, domain_mode)
    logger.debug(f"Built {table!r}")
    return table


class ConditionResult(BaseModel):
    """Outcome of one condition over the whole domain."""

    name: str
    description: str
    passed: bool
    checked: int = Field(ge=0, description="Domain points the condition applies to")
    counterexample: Optional[list[Union[int, list[int]]]] = None


class ConditionReport(BaseModel):
    """All conditions of one family for one function table."""

    family: str
    ring: str
    m: int
    passed: bool
    conditions: list[ConditionResult]
    notes: list[str] = Field(default_factory=list)


def _vector_repr(ctx: RingContext, x: np.ndarray) -> list[Union[int, list[int]]]:
    coeffs = ctx.coeff_table[x]
    if ctx.ell == 1:
        return [int(c[0]) for c in coeffs]
    return [[int(c) for c in row] for row in coeffs]


def _result(
    ctx: RingContext,
    X: np.ndarray,
    name: str,
    description: str,
    applies: np.ndarray,
    failing: np.ndarray,
) -> ConditionResult:
    bad = np.flatnonzero(applies & failing)
    return ConditionResult(
        name=name,
        description=description,
        passed=bad.size == 0,
        checked=int(np.count_nonzero(applies)),
        counterexample=_vector_repr(ctx, X[bad[0]]) if bad.size else None,
    )


def _orbit_failures(
    ctx: RingContext, f: FunctionTable, X: np.ndarray, applies: np.ndarray
) -> np.ndarray:
    """Points where f is not a unit or f(ux) != f(x) for some unit u."""
    failing = ~ctx.unit_mask[f.values]
    rows = np.flatnonzero(applies)
    for u in np.flatnonzero(ctx.unit_mask):
        scaled = vector_indices(ctx, ctx.mul_table[u, X[rows]])
        failing[rows] |= f.values[scaled] != f.values[rows]
    return failing


def _residue_group_failures(
    ctx: RingContext, f: FunctionTable, X: np.ndarray, applies: np.ndarray
) -> np.ndarray:
    """Points whose value differs from the least member of their residue class."""
    failing = np.zeros(X.shape[0], dtype=bool)
    rows = np.flatnonzero(applies)
    if rows.size == 0:
        return failing
    m = X.shape[1]
    weights = np.array([ctx.q ** (m - 1 - i) for i in range(m)], dtype=np.int64)
    codes = ctx.residue_table[X[rows]] @ weights
    _, first, group = np.unique(codes, return_index=True, return_inverse=True)
    reference = f.values[rows[first]][np.ravel(group)]
    failing[rows] = f.values[rows] != reference
    return failing


def check_conditions(f: FunctionTable, family: str) -> ConditionReport:
    """Check a family's hypotheses exhaustively over the domain of f.

    Each condition reports the lexicographically least failing vector.

    Args:
        f: Function to check
        family: ``thm43``, ``thm43_no_cond2``, ``thm46`` or ``poly``

    Raises:
        FunctionTableError: If the family is unknown
    """
    if family not in CONDITION_FAMILIES:
        raise FunctionTableError(f"Unknown condition family: {family}")
    ctx, m = f.ctx, f.m
    notes: list[str] = []
    conditions: list[ConditionResult] = []
    logger.info(f"Checking {family} conditions for {f!r} over {f.domain_size} points")

    if family == "poly":
        conditions.extend(_poly_conditions(f, notes))
    else:
        strata = _Strata(ctx, m)
        X = strata.X
        domain = f.domain_mask
        p_power = ctx.p_powers[strata.r]
        checks: list[tuple[str, str, np.ndarray, np.ndarray]] = []
        if family.startswith("thm43"):
            guard = ConditionResult(
                name="parameters",
                description="q > 3 and m >= 3",
                passed=ctx.q > 3 and m >= 3,
                checked=0,
            )
            low = domain & strata.low_weight
            checks.append(
                (
                    "1",
                    "1 <= w(x) <= 2: f(ux) = f(x) is a unit",
                    low,
                    _orbit_failures(ctx, f, X, low),
                )
            )
            if family == "thm43":
                roots = low & root_word_mask(ctx, X)
                checks.append(
                    (
                        "2",
                        "root words of weight 1-2 with equal residues share f",
                        roots,
                        _residue_group_failures(ctx, f, X, roots),
                    )
                )
            checks.append(
                (
                    "3",
                    "w(x) = m with two or more units: f(x) = 0",
                    domain & strata.full_multi_unit,
                    f.values != 0,
                )
            )
            checks.append(
                (
                    "4",
                    "w(x) = m, one unit, others p^r u_j: f(x) = p^r",
                    domain & strata.uniform,
                    f.values != p_power,
                )
            )
        else:
            guard = ConditionResult(
                name="parameters", description="m > 3", passed=m > 3, checked=0
            )
            if ctx.q <= 3:
                notes.append(
                    f"q = {ctx.q}: no residue-field size requirement applies to this family"
                )
            high = domain & (strata.weight >= m - 1) & (strata.units >= m - 1)
            checks.append(
                (
                    "1",
                    "1 <= w(x) <= 2: f(x) = 0",
                    domain & strata.low_weight,
                    f.values != 0,
                )
            )
            checks.append(
                (
                    "2",
                    "w(x) = m, one unit, others p^r u_j: f(x) = p^r",
                    domain & strata.uniform,
                    f.values != p_power,
                )
            )
            checks.append(
                (
                    "3",
                    "w(x), w(x mod p) >= m-1: f(ax) = f(x) is a unit",
                    high,
                    _orbit_failures(ctx, f, X, high),
                )
            )
        conditions.append(guard)
        conditions.extend(_result(ctx, X, *check) for check in checks)
        mixed = int(np.count_nonzero(domain & strata.mixed))
        if mixed:
            notes.append(
                f"{mixed} full-weight single-unit vectors have mixed valuations "
                "and are unconstrained"
            )

    report = ConditionReport(
        family=family,
        ring=ctx.descriptor(),
        m=m,
        passed=all(c.passed for c in conditions),
        conditions=conditions,
        notes=notes,
    )
    if report.passed:
        logger.success(f"All {family} conditions hold")
    else:
        failed = ", ".join(c.name for c in conditions if not c.passed)
        logger.warning(f"{family} conditions failing: {failed}")
    return report


def _poly_conditions(f: FunctionTable, notes: list[str]) -> list[ConditionResult]:
    if f.family != "poly" or "poly" not in f.params:
        notes.append("the function table does not carry a monomial polynomial")
        return [
            ConditionResult(
                name="polynomial",
                description="f is a sum of unit-coefficient monomials",
                passed=False,
                checked=0,
            )
        ]
    poly = MonomialPoly.parse(str(f.params["poly"]), f.ctx, f.m)
    supports = poly.supports
    disjoint = all(
        not (supports[i] & supports[j])
        for i in range(len(supports))
        for j in range(i + 1, len(supports))
    )
    return [
        ConditionResult(
            name="1",
            description="every monomial has a variable with exponent 1",
            passed=all(1 in term.exponents for term in poly.terms),
            checked=poly.t,
        ),
        ConditionResult(
            name="2",
            description="monomial supports are pairwise disjoint",
            passed=disjoint,
            checked=poly.t,
        ),
        ConditionResult(
            name="3",
            description="every monomial support has at least 3 variables",
            passed=all(len(s) >= 3 for s in supports),
            checked=poly.t,
        ),
        ConditionResult(
            name="terms",
            description="at least two monomials",
            passed=poly.t >= 2,
            checked=poly.t,
        ),
    ]
