# SPDX-FileCopyrightText: 2025 grmin contributors
# SPDX-License-Identifier: MIT

"""Exact arithmetic in the Galois ring GR(p^n, ell) = Z_{p^n}[x]/<h(x)>.

Elements are stored as integers in ``[0, |R|)``. The integer of an element with
coefficients ``(c_0, ..., c_{ell-1})`` is ``sum c_i * (p^n)^(ell-1-i)``, so integer
order is lexicographic order on the coefficient vector. Every context builds
numpy operation tables once; all vectorised code in grmin indexes into them.
"""

from enum import Enum
from functools import lru_cache
from typing import Any, NamedTuple, Optional, Sequence, Union

import galois
import numpy as np
from loguru import logger

from ..config.constants import DEFAULT_RING_TABLE_CAP, RING_DESCRIPTOR_PREFIX


class RingError(Exception):
    """Base exception for ring operations."""

    pass


class InvalidRingError(RingError):
    """Raised when ring parameters or the defining polynomial are invalid."""

    pass


class NotAUnitError(RingError):
    """Raised when inverting an element of the maximal ideal <p>."""

    pass


class RingMismatchError(RingError):
    """Raised when operands belong to different rings."""

    pass


class EnumerationError(RingError):
    """Raised for invalid enumeration requests."""

    pass


class EnumerationKind(str, Enum):
    """Element classes that can be enumerated."""

    ALL = "all"
    UNITS = "units"
    ZERO_DIVISORS = "zero_divisors"
    VALUATION = "valuation"
    TEICHMULLER = "teichmuller"


class ValuationForm(NamedTuple):
    """Unique form ``a = p^r * unit_part``; ``r == n`` and no unit part for zero."""

    r: int
    unit_part: Optional["RingElement"]


ElementLike = Union["RingElement", int, Sequence[int]]


class RingContext:
    """The ring GR(p^n, ell) with precomputed operation tables.

    Instances are immutable after construction and are shared between
    elements, vectors and codes. Use :func:`make_ring` to build one.
    """

    def __init__(
        self,
        p: int,
        n: int,
        ell: int,
        h: tuple[int, ...],
        field: Any,
        table_cap: int = DEFAULT_RING_TABLE_CAP,
    ) -> None:
        """Initialize the context and build all tables.

        Args:
            p: Prime characteristic of the residue field
            n: Nilpotency exponent
            ell: Extension degree
            h: Defining polynomial, constant term first
            field: galois residue field class GF(p^ell)
            table_cap: Largest ring size allowed
        """
        self.p = p
        self.n = n
        self.ell = ell
        self.h = h
        self.field = field
        self.table_cap = table_cap
        self.pn = p**n
        self.q = p**ell
        self.size = self.pn**ell

        self.weights = np.array(
            [self.pn ** (ell - 1 - i) for i in range(ell)], dtype=np.int64
        )
        indices = np.arange(self.size, dtype=np.int64)
        self.coeff_table = (indices[:, None] // self.weights[None, :]) % self.pn

        self._build_operation_tables()
        self._build_structure()
        self._build_teichmuller()
        self._build_inverses()

        for table in (
            self.add_table,
            self.mul_table,
            self.neg_table,
            self.inv_table,
            self.valuation_table,
            self.unit_part_table,
            self.residue_table,
        ):
            table.flags.writeable = False

        logger.debug(
            f"Built ring tables for {self.descriptor()} ({self.size} elements)"
        )

    # Construction helpers

    def _build_operation_tables(self) -> None:
        C = self.coeff_table
        pn = self.pn
        size = self.size

        add = np.zeros((size, size), dtype=np.int64)
        for i in range(self.ell):
            add += ((C[:, None, i] + C[None, :, i]) % pn) * self.weights[i]
        self.add_table = add
        self.neg_table = ((-C) % pn) @ self.weights

        products = [
            np.zeros((size, size), dtype=np.int64) for _ in range(2 * self.ell - 1)
        ]
        for i in range(self.ell):
            for j in range(self.ell):
                products[i + j] = (
                    products[i + j] + C[:, None, i] * C[None, :, j]
                ) % pn
        # x^ell = -(h_0 + h_1 x + ... + h_{ell-1} x^{ell-1})
        for k in range(2 * self.ell - 2, self.ell - 1, -1):
            top = products[k]
            for j in range(self.ell):
                if self.h[j]:
                    target = k - self.ell + j
                    products[target] = (products[target] - top * self.h[j]) % pn
        mul = np.zeros((size, size), dtype=np.int64)
        for i in range(self.ell):
            mul += products[i] * self.weights[i]
        self.mul_table = mul

    def _build_structure(self) -> None:
        C = self.coeff_table
        p, n = self.p, self.n

        self.residue_table = (C % p) @ np.array(
            [p**i for i in range(self.ell)], dtype=np.int64
        )
        self.unit_mask = self.residue_table != 0
        self.unit_mask.flags.writeable = False

        coeff_valuation = np.full(self.pn, n, dtype=np.int64)
        for value in range(1, self.pn):
            r = 0
            while value % p ** (r + 1) == 0:
                r += 1
            coeff_valuation[value] = r
        self.valuation_table = coeff_valuation[C].min(axis=1)

        nonzero = self.valuation_table < n
        divisor = np.where(nonzero, p ** np.minimum(self.valuation_table, n - 1), 1)
        unit_parts = (C // divisor[:, None]) @ self.weights
        self.unit_part_table = np.where(nonzero, unit_parts, -1)

        self.p_powers = np.array(
            [self.from_int(p**k) for k in range(n + 1)], dtype=np.int64
        )
        self.one = int(self.weights[0])
        self.zero = 0

    def _build_teichmuller(self) -> None:
        p = self.p
        residues = np.arange(self.q, dtype=np.int64)
        digits = np.stack([(residues // p**i) % p for i in range(self.ell)], axis=1)
        self.residue_lifts = digits @ self.weights

        y = self.residue_lifts.copy()
        for _ in range(self.n - 1):
            y = self.power(y, self.q)
        self.teichmuller = y
        self.teichmuller.flags.writeable = False

    def _build_inverses(self) -> None:
        units = np.nonzero(self.unit_mask)[0]
        residue_inverses = self.field(self.residue_table[units]) ** -1
        b = self.residue_lifts[residue_inverses.view(np.ndarray).astype(np.int64)]
        two = self.from_int(2)
        # Newton step b <- b(2 - ab) doubles the p-adic precision
        for _ in range(self.n):
            ab = self.mul_table[units, b]
            b = self.mul_table[b, self.add_table[two, self.neg_table[ab]]]
        inv = np.full(self.size, -1, dtype=np.int64)
        inv[units] = b
        self.inv_table = inv

    # Basic queries

    @property
    def key(self) -> tuple[int, int, int, tuple[int, ...]]:
        """Hashable identity of the ring."""
        return (self.p, self.n, self.ell, self.h)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RingContext):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __reduce__(self) -> tuple[Any, tuple[Any, ...]]:
        # Workers rebuild the tables instead of unpickling galois classes
        return (make_ring, (self.p, self.n, self.ell, list(self.h), self.table_cap))

    def __repr__(self) -> str:
        return f"RingContext({self.descriptor()})"

    def descriptor(self) -> str:
        """Ring descriptor line, e.g. ``GR p=2 n=2 ell=2 h=1,1,1``."""
        text = f"{RING_DESCRIPTOR_PREFIX} p={self.p} n={self.n} ell={self.ell}"
        if self.ell > 1:
            text += " h=" + ",".join(str(c) for c in self.h)
        return text

    @property
    def unit_count(self) -> int:
        return (self.q - 1) * self.q ** (self.n - 1)

    def from_int(self, value: int) -> int:
        """Index of the integer ``value`` embedded as a constant."""
        return int((value % self.pn) * self.weights[0])

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        """Index of the element with the given coefficients (constant first)."""
        if len(coeffs) != self.ell:
            raise RingError(f"Expected {self.ell} coefficients, got {len(coeffs)}")
        for c in coeffs:
            if not 0 <= int(c) < self.pn:
                raise RingError(f"Coefficient {c} outside [0, {self.pn})")
        return int(np.dot(np.asarray(coeffs, dtype=np.int64), self.weights))

    def element_index(self, value: ElementLike) -> int:
        """Normalize an int, coefficient sequence or element to an index."""
        if isinstance(value, RingElement):
            if value.ctx != self:
                raise RingMismatchError(
                    f"Element of {value.ctx.descriptor()} used in {self.descriptor()}"
                )
            return value.index
        if isinstance(value, (int, np.integer)):
            return self.from_int(int(value))
        return self.from_coeffs(list(value))

    def element(self, value: ElementLike) -> "RingElement":
        """Build a ring element from an int, coefficient sequence or element."""
        return RingElement(self, self.element_index(value))

    def parse_element(self, text: str) -> "RingElement":
        """Parse ``3`` or ``1,2`` (ell comma-separated coefficients)."""
        parts = [part for part in text.strip().strip("()").split(",") if part.strip()]
        try:
            values = [int(part) for part in parts]
        except ValueError as e:
            raise RingError(f"Invalid element literal: {text!r}") from e
        if len(values) == 1 and self.ell > 1:
            return self.element(values[0])
        return RingElement(self, self.from_coeffs(values))

    def format_index(self, index: int) -> str:
        """Comma-separated coefficient text of an element index."""
        return ",".join(str(int(c)) for c in self.coeff_table[index])

    def power(self, base: Any, exponent: int) -> Any:
        """Vectorised power by squaring over element indices."""
        if exponent < 0:
            raise RingError("Negative exponents need inverse() first")
        result = np.full(np.shape(base), self.one, dtype=np.int64)
        square = np.asarray(base, dtype=np.int64)
        while exponent:
            if exponent & 1:
                result = self.mul_table[result, square]
            square = self.mul_table[square, square]
            exponent >>= 1
        if np.ndim(base) == 0:
            return int(result)
        return result

    def divide_by_p_power(self, index: Any, r: int) -> Any:
        """Coefficient-wise division by p^r for elements of valuation >= r."""
        C = self.coeff_table[index]
        return (C // self.p**r) @ self.weights

    def census(self) -> dict[str, Any]:
        """Counts of units, zero divisors and valuation classes."""
        valuations = {
            r: int(np.count_nonzero(self.valuation_table == r))
            for r in range(1, self.n)
        }
        return {
            "descriptor": self.descriptor(),
            "size": self.size,
            "q": self.q,
            "units": int(np.count_nonzero(self.unit_mask)),
            "zero_divisors": int(np.count_nonzero(~self.unit_mask)) - 1,
            "valuation_classes": valuations,
            "teichmuller": [self.format_index(int(t)) for t in self.teichmuller],
        }


class RingElement:
    """One element of a Galois ring, stored by its lexicographic index."""

    __slots__ = ("ctx", "index")

    def __init__(self, ctx: RingContext, index: int) -> None:
        index = int(index)
        if not 0 <= index < ctx.size:
            raise RingError(f"Element index {index} outside [0, {ctx.size})")
        self.ctx = ctx
        self.index = index

    @property
    def coeffs(self) -> tuple[int, ...]:
        """Coordinates in the basis 1, x, ..., x^(ell-1)."""
        return tuple(int(c) for c in self.ctx.coeff_table[self.index])

    @property
    def residue(self) -> int:
        """Integer representation of the reduction modulo p in GF(q)."""
        return int(self.ctx.residue_table[self.index])

    def is_zero(self) -> bool:
        return self.index == 0

    def is_unit(self) -> bool:
        return bool(self.ctx.unit_mask[self.index])

    def _operand(self, other: ElementLike) -> int:
        return self.ctx.element_index(other)

    def __add__(self, other: ElementLike) -> "RingElement":
        return RingElement(
            self.ctx, self.ctx.add_table[self.index, self._operand(other)]
        )

    __radd__ = __add__

    def __sub__(self, other: ElementLike) -> "RingElement":
        neg = self.ctx.neg_table[self._operand(other)]
        return RingElement(self.ctx, self.ctx.add_table[self.index, neg])

    def __rsub__(self, other: ElementLike) -> "RingElement":
        return RingElement(self.ctx, self._operand(other)) - self

    def __mul__(self, other: ElementLike) -> "RingElement":
        return RingElement(
            self.ctx, self.ctx.mul_table[self.index, self._operand(other)]
        )

    __rmul__ = __mul__

    def __neg__(self) -> "RingElement":
        return RingElement(self.ctx, self.ctx.neg_table[self.index])

    def __pow__(self, exponent: int) -> "RingElement":
        if exponent < 0:
            return inverse(self) ** (-exponent)
        return RingElement(self.ctx, self.ctx.power(self.index, exponent))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RingElement):
            return self.ctx == other.ctx and self.index == other.index
        if isinstance(other, (int, np.integer)):
            return self.index == self.ctx.from_int(int(other))
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ctx.key, self.index))

    def __lt__(self, other: "RingElement") -> bool:
        return self.index < other.index

    def __repr__(self) -> str:
        return f"RingElement({self})"

    def __str__(self) -> str:
        if self.ctx.ell == 1:
            return str(self.coeffs[0])
        return "(" + ",".join(str(c) for c in self.coeffs) + ")"

    def inverse(self) -> "RingElement":
        return inverse(self)

    def valuation(self) -> ValuationForm:
        return valuation(self)


@lru_cache(maxsize=32)
def _build_context(
    p: int, n: int, ell: int, h: tuple[int, ...], table_cap: int
) -> RingContext:
    GF_p = galois.GF(p)
    if ell == 1:
        field = GF_p
    else:
        poly = galois.Poly([c % p for c in reversed(h)], field=GF_p)
        field = galois.GF(p**ell, irreducible_poly=poly)
    return RingContext(p, n, ell, h, field, table_cap)


def make_ring(
    p: int,
    n: int = 1,
    ell: int = 1,
    h: Optional[Sequence[int]] = None,
    table_cap: int = DEFAULT_RING_TABLE_CAP,
) -> RingContext:
    """Validate parameters and build (or reuse) a ring context.

    Args:
        p: Prime characteristic
        n: Nilpotency exponent (>= 1)
        ell: Extension degree (>= 1)
        h: Monic degree-ell polynomial, constant term first. When omitted,
            ell > 1 takes the smallest monic irreducible modulo p with
            coefficients compared from the leading term down
        table_cap: Largest ring size for which tables may be built

    Returns:
        Shared RingContext for GR(p^n, ell)

    Raises:
        InvalidRingError: If p is not prime, n or ell < 1, h is not monic of
            degree ell, h is reducible modulo p or the ring exceeds table_cap
    """
    if not isinstance(p, (int, np.integer)) or p < 2 or not galois.is_prime(int(p)):
        raise InvalidRingError(f"p must be prime, got {p}")
    if n < 1:
        raise InvalidRingError(f"n must be >= 1, got {n}")
    if ell < 1:
        raise InvalidRingError(f"ell must be >= 1, got {ell}")

    pn = p**n
    size = pn**ell
    if size > table_cap:
        raise InvalidRingError(
            f"GR({p}^{n},{ell}) has {size} elements, above the table cap {table_cap}"
        )

    if h is None:
        if ell == 1:
            coeffs = (0, 1)
        else:
            default = galois.irreducible_poly(p, ell, method="min")
            coeffs = tuple(int(c) for c in reversed(default.coeffs))
    else:
        coeffs = tuple(int(c) for c in h)
        if len(coeffs) != ell + 1:
            raise InvalidRingError(
                f"h must have degree {ell} ({ell + 1} coefficients), got {len(coeffs)}"
            )
        if coeffs[-1] != 1:
            raise InvalidRingError("h must be monic")
        if any(not 0 <= c < pn for c in coeffs):
            raise InvalidRingError(f"h coefficients must lie in [0, {pn})")
        if ell > 1:
            reduced = galois.Poly(
                [c % p for c in reversed(coeffs)], field=galois.GF(p)
            )
            if not reduced.is_irreducible():
                raise InvalidRingError(f"h = {list(coeffs)} is reducible modulo {p}")

    return _build_context(int(p), int(n), int(ell), coeffs, int(table_cap))


def arith(a: RingElement, b: RingElement, op: str) -> RingElement:
    """Apply ``add``, ``sub`` or ``mul`` to two elements of the same ring."""
    if a.ctx != b.ctx:
        raise RingMismatchError(
            f"Cannot combine {a.ctx.descriptor()} with {b.ctx.descriptor()}"
        )
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise RingError(f"Unknown operation: {op}")


def inverse(a: RingElement) -> RingElement:
    """Multiplicative inverse of a unit.

    Raises:
        NotAUnitError: If a lies in the maximal ideal <p>
    """
    inv = int(a.ctx.inv_table[a.index])
    if inv < 0:
        raise NotAUnitError(f"{a} is not a unit in {a.ctx.descriptor()}")
    return RingElement(a.ctx, inv)


def valuation(a: RingElement) -> ValuationForm:
    """Return ``(r, u)`` with ``a = p^r u``; ``(n, None)`` for zero."""
    r = int(a.ctx.valuation_table[a.index])
    if r == a.ctx.n:
        return ValuationForm(r, None)
    return ValuationForm(r, RingElement(a.ctx, a.ctx.unit_part_table[a.index]))


def teichmuller_decompose(a: RingElement) -> list[RingElement]:
    """p-adic digits ``c_0, ..., c_{n-1}`` in the Teichmuller set with a = sum c_i p^i."""
    ctx = a.ctx
    digits = []
    current = a.index
    for _ in range(ctx.n):
        digit = int(ctx.teichmuller[ctx.residue_table[current]])
        digits.append(RingElement(ctx, digit))
        remainder = ctx.add_table[current, ctx.neg_table[digit]]
        current = int(ctx.divide_by_p_power(remainder, 1))
    return digits


def teichmuller_recompose(ctx: RingContext, digits: Sequence[RingElement]) -> RingElement:
    """Inverse of :func:`teichmuller_decompose`."""
    if len(digits) != ctx.n:
        raise RingError(f"Expected {ctx.n} digits, got {len(digits)}")
    total = ctx.zero
    for i, digit in enumerate(digits):
        total = ctx.add_table[total, ctx.mul_table[ctx.p_powers[i], ctx.element_index(digit)]]
    return RingElement(ctx, total)


def enumerate_elements(
    ctx: RingContext, kind: Union[EnumerationKind, str], r: Optional[int] = None
) -> list[RingElement]:
    """List the elements of one class in lexicographic coefficient order.

    Raises:
        EnumerationError: If ``kind`` is valuation and r is outside [1, n-1]
    """
    kind = EnumerationKind(kind)
    if kind is EnumerationKind.ALL:
        selected = np.arange(ctx.size)
    elif kind is EnumerationKind.UNITS:
        selected = np.nonzero(ctx.unit_mask)[0]
    elif kind is EnumerationKind.ZERO_DIVISORS:
        selected = np.nonzero(~ctx.unit_mask)[0][1:]
    elif kind is EnumerationKind.VALUATION:
        if r is None or not 1 <= r <= ctx.n - 1:
            raise EnumerationError(
                f"Valuation class needs 1 <= r <= {ctx.n - 1}, got {r}"
            )
        selected = np.nonzero(ctx.valuation_table == r)[0]
    else:
        selected = np.sort(ctx.teichmuller)
    return [RingElement(ctx, int(i)) for i in selected]
