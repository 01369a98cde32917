# SPDX-FileCopyrightText: 2025 grmin contributors
# SPDX-License-Identifier: MIT

"""Tests for Galois ring arithmetic."""

import pickle

import pytest

from grmin.core.ring import (
    EnumerationError,
    InvalidRingError,
    NotAUnitError,
    RingError,
    RingMismatchError,
    arith,
    enumerate_elements,
    inverse,
    make_ring,
    teichmuller_decompose,
    teichmuller_recompose,
    valuation,
)


@pytest.fixture
def z4():
    return make_ring(2, 2, 1)


@pytest.fixture
def z9():
    return make_ring(3, 2, 1)


@pytest.fixture
def gr42():
    return make_ring(2, 2, 2)


class TestMakeRing:
    """Test ring construction and validation."""

    def test_rejects_composite_p(self):
        with pytest.raises(InvalidRingError):
            make_ring(4, 1, 1)

    def test_rejects_bad_exponents(self):
        with pytest.raises(InvalidRingError):
            make_ring(2, 0, 1)
        with pytest.raises(InvalidRingError):
            make_ring(2, 1, 0)

    def test_rejects_reducible_h(self):
        """x^2 + 1 = (x + 1)^2 modulo 2."""
        with pytest.raises(InvalidRingError, match="reducible"):
            make_ring(2, 2, 2, h=[1, 0, 1])

    def test_rejects_non_monic_h(self):
        with pytest.raises(InvalidRingError, match="monic"):
            make_ring(2, 2, 2, h=[1, 1, 3])

    def test_rejects_wrong_degree_h(self):
        with pytest.raises(InvalidRingError, match="degree"):
            make_ring(2, 2, 2, h=[1, 1])

    def test_table_cap(self):
        with pytest.raises(InvalidRingError, match="table cap"):
            make_ring(2, 4, 2, table_cap=100)

    def test_contexts_are_shared(self):
        assert make_ring(2, 2, 1) is make_ring(2, 2, 1)

    def test_default_h(self, gr42):
        assert gr42.h == (1, 1, 1)
        assert gr42.descriptor() == "GR p=2 n=2 ell=2 h=1,1,1"

    @pytest.mark.parametrize(
        "p,ell,h",
        [(2, 3, (1, 1, 0, 1)), (2, 4, (1, 1, 0, 0, 1)), (3, 2, (1, 0, 1)), (5, 2, (2, 0, 1))],
    )
    def test_default_h_compares_from_leading_term(self, p, ell, h):
        assert make_ring(p, 1, ell).h == h

    def test_descriptor_omits_h_for_ell_one(self, z4):
        assert z4.descriptor() == "GR p=2 n=2 ell=1"

    def test_pickle_rebuilds_context(self, gr42):
        assert pickle.loads(pickle.dumps(gr42)) == gr42


class TestCensus:
    """Test unit and zero-divisor counts."""

    @pytest.mark.parametrize(
        "p,n,ell,units,zero_divisors",
        [
            (2, 2, 1, 2, 1),
            (2, 3, 1, 4, 3),
            (3, 2, 1, 6, 2),
            (2, 2, 2, 12, 3),
            (5, 2, 1, 20, 4),
        ],
    )
    def test_counts(self, p, n, ell, units, zero_divisors):
        census = make_ring(p, n, ell).census()
        assert census["units"] == units
        assert census["zero_divisors"] == zero_divisors
        assert census["size"] == (p**n) ** ell

    def test_valuation_classes(self):
        census = make_ring(2, 3, 1).census()
        assert census["valuation_classes"] == {1: 2, 2: 1}

    def test_field_has_no_zero_divisors(self):
        census = make_ring(5, 1, 1).census()
        assert census["units"] == 4
        assert census["zero_divisors"] == 0
        assert census["valuation_classes"] == {}


class TestArithmetic:
    """Test ring operations."""

    def test_integer_residue_ring(self, z9):
        a, b = z9.element(5), z9.element(7)
        assert a + b == 3
        assert a - b == 7
        assert a * b == 8
        assert -a == 4

    def test_extension_multiplication(self, gr42):
        """x * x = x^2 = -1 - x = 3 + 3x when h = 1 + x + x^2."""
        x = gr42.element([0, 1])
        assert (x * x).coeffs == (3, 3)
        assert (x**3).coeffs == (1, 0)

    def test_arith_dispatch(self, z4):
        a, b = z4.element(3), z4.element(2)
        assert arith(a, b, "add") == 1
        assert arith(a, b, "sub") == 1
        assert arith(a, b, "mul") == 2
        with pytest.raises(RingError):
            arith(a, b, "div")

    def test_arith_rejects_mixed_rings(self, z4, z9):
        with pytest.raises(RingMismatchError):
            arith(z4.element(1), z9.element(1), "add")

    def test_power_of_index_array(self, z9):
        assert list(z9.power([2, 3, 4], 2)) == [4, 0, 7]


class TestInverse:
    """Test unit inverses."""

    def test_every_unit_has_an_inverse(self, gr42):
        for u in enumerate_elements(gr42, "units"):
            assert u * inverse(u) == 1

    def test_non_unit_raises(self, z4):
        with pytest.raises(NotAUnitError):
            inverse(z4.element(2))

    def test_zero_raises(self, z9):
        with pytest.raises(NotAUnitError):
            z9.element(0).inverse()


class TestValuation:
    """Test the p^r * unit decomposition."""

    def test_zero(self, z9):
        form = valuation(z9.element(0))
        assert form.r == 2
        assert form.unit_part is None

    def test_unit(self, z9):
        form = valuation(z9.element(4))
        assert form.r == 0
        assert form.unit_part == 4

    def test_zero_divisor(self):
        z8 = make_ring(2, 3, 1)
        form = valuation(z8.element(6))
        assert form.r == 1
        assert form.unit_part == 3
        assert z8.element(2) * form.unit_part == 6

    def test_decomposition_reconstructs(self, gr42):
        p = gr42.element(2)
        for a in enumerate_elements(gr42, "all")[1:]:
            r, u = valuation(a)
            assert u.is_unit()
            assert p**r * u == a


class TestTeichmuller:
    """Test the Teichmuller set and p-adic digits."""

    def test_set_z9(self, z9):
        assert [int(t.index) for t in enumerate_elements(z9, "teichmuller")] == [0, 1, 8]

    def test_set_is_closed_under_q_power(self, gr42):
        teich = enumerate_elements(gr42, "teichmuller")
        assert len(teich) == 4
        for t in teich:
            assert t**4 == t

    def test_decompose_z9(self, z9):
        digits = teichmuller_decompose(z9.element(5))
        assert [d.index for d in digits] == [8, 8]

    def test_recompose_inverts_decompose(self, gr42):
        for a in enumerate_elements(gr42, "all"):
            assert teichmuller_recompose(gr42, teichmuller_decompose(a)) == a

    def test_recompose_wrong_length(self, z9):
        with pytest.raises(RingError):
            teichmuller_recompose(z9, [z9.element(1)])


class TestEnumeration:
    """Test element class enumeration."""

    def test_units_and_zero_divisors_partition(self, gr42):
        units = enumerate_elements(gr42, "units")
        zds = enumerate_elements(gr42, "zero_divisors")
        assert len(units) + len(zds) + 1 == gr42.size
        assert all(not z.is_unit() and not z.is_zero() for z in zds)

    def test_valuation_class(self):
        z8 = make_ring(2, 3, 1)
        assert [e.index for e in enumerate_elements(z8, "valuation", r=1)] == [2, 6]
        assert [e.index for e in enumerate_elements(z8, "valuation", r=2)] == [4]

    def test_valuation_class_out_of_range(self, z4):
        with pytest.raises(EnumerationError):
            enumerate_elements(z4, "valuation", r=2)

    def test_unknown_kind(self, z4):
        with pytest.raises(ValueError):
            enumerate_elements(z4, "squares")


class TestElementParsing:
    """Test element literals and formatting."""

    def test_parse_integer(self, z9):
        assert z9.parse_element("7") == 7

    def test_parse_coefficients(self, gr42):
        element = gr42.parse_element("(1,3)")
        assert element.coeffs == (1, 3)
        assert str(element) == "(1,3)"

    def test_parse_constant_in_extension(self, gr42):
        assert gr42.parse_element("3").coeffs == (3, 0)

    def test_parse_invalid(self, z4):
        with pytest.raises(RingError):
            z4.parse_element("a")
        with pytest.raises(RingError):
            z4.parse_element("1,2")

    def test_coefficient_out_of_range(self, gr42):
        with pytest.raises(RingError):
            gr42.from_coeffs([4, 0])

    def test_format_index(self, gr42):
        assert gr42.format_index(gr42.from_coeffs([2, 1])) == "2,1"
