# SPDX-FileCopyrightText: 2025 grmin contributors
# SPDX-License-Identifier: MIT

"""Tests for function tables, named families and condition checks."""

import numpy as np
import pytest

from grmin.core.functions import (
    FunctionTable,
    FunctionTableError,
    MonomialPoly,
    ParameterGuardError,
    PolynomialSyntaxError,
    canonical_f,
    check_conditions,
)
from grmin.core.linalg import RingVector, all_vectors, count_root_words
from grmin.core.ring import make_ring


@pytest.fixture
def z4():
    return make_ring(2, 2, 1)


@pytest.fixture
def gr42():
    return make_ring(2, 2, 2)


def _conditions(report):
    return {c.name: c for c in report.conditions}


class TestMonomialPoly:
    """Test polynomial parsing and evaluation."""

    def test_parse_and_format(self, z4):
        poly = MonomialPoly.parse("3*x1*x2^2 + x3", z4)
        assert poly.m == 3
        assert poly.t == 2
        assert poly.terms[0].coefficient == 3
        assert poly.terms[0].exponents == (1, 2, 0)
        assert str(poly) == "3*x1*x2^2 + x3"

    def test_repeated_variables_add_exponents(self, z4):
        poly = MonomialPoly.parse("x1*x1*x2", z4)
        assert poly.terms[0].exponents == (2, 1)

    def test_extension_coefficient(self, gr42):
        poly = MonomialPoly.parse("(1,1)*x1*x2*x3 + x4*x5*x6", gr42)
        assert poly.terms[0].coefficient == gr42.from_coeffs([1, 1])
        assert str(poly).startswith("(1,1)*x1")

    def test_evaluate(self, z4):
        poly = MonomialPoly.parse("x1*x2 + x3", z4)
        X = np.array([[2, 3, 1], [1, 1, 1]])
        assert poly.evaluate(X).tolist() == [3, 2]

    @pytest.mark.parametrize("text", ["", "x1 + ", "x0*x1", "2*x1", "y1", "x1^0"])
    def test_invalid(self, z4, text):
        with pytest.raises(PolynomialSyntaxError):
            MonomialPoly.parse(text, z4)

    def test_variable_beyond_arity(self, z4):
        with pytest.raises(PolynomialSyntaxError):
            MonomialPoly.parse("x4", z4, m=3)


class TestFunctionTable:
    """Test dense function tables."""

    def test_explicit_table_zeroes_outside_domain(self, z4):
        f = FunctionTable.explicit(z4, 1, [1, 2, 3, 1], domain_mode="root_words_only")
        assert f.domain_size == 2
        assert f.values.tolist() == [0, 2, 0, 1]

    def test_domain_modes(self, z4):
        assert canonical_f(z4, "thm46", 4).domain_size == 255
        rooted = canonical_f(z4, "thm46", 4, domain_mode="root_words_only")
        assert rooted.domain_size == count_root_words(z4, 4)

    def test_call(self, z4):
        f = FunctionTable.explicit(z4, 2, np.arange(16) % 4)
        assert f(RingVector.of(z4, [1, 2])) == 2
        assert f([0, 3]) == 3

    def test_shape_errors(self, z4):
        with pytest.raises(FunctionTableError):
            FunctionTable.explicit(z4, 2, [0, 1, 2])
        with pytest.raises(FunctionTableError):
            FunctionTable.explicit(z4, 1, [0, 1, 2, 4])

    def test_unknown_domain_mode(self, z4):
        with pytest.raises(FunctionTableError):
            FunctionTable.explicit(z4, 1, [0, 1, 2, 3], domain_mode="units")

    def test_explicit_dict_round_trip(self, gr42):
        values = np.arange(gr42.size) % gr42.size
        f = FunctionTable.explicit(gr42, 1, values)
        data = f.to_dict()
        assert data["values"][1] == "0,1"
        restored = FunctionTable.from_dict(gr42, data)
        assert np.array_equal(restored.values, f.values)

    def test_named_family_rebuilt_from_rule(self, z4):
        f = canonical_f(z4, "thm46", 4)
        data = f.to_dict()
        assert "values" not in data
        assert np.array_equal(FunctionTable.from_dict(z4, data).values, f.values)

    def test_from_dict_rejects_other_formats(self, z4):
        with pytest.raises(FunctionTableError):
            FunctionTable.from_dict(z4, {"format": "other", "family": "thm46", "m": 4})


class TestCanonicalFunctions:
    """Test the named families."""

    def test_thm46_values(self, z4):
        f = canonical_f(z4, "thm46", 4)
        assert f(RingVector.of(z4, [1, 0, 0, 0])) == 0
        assert f(RingVector.of(z4, [1, 1, 0, 0])) == 0
        assert f(RingVector.of(z4, [0, 1, 3, 1])) == 1
        assert f(RingVector.of(z4, [1, 2, 2, 2])) == 2
        assert f(RingVector.of(z4, [1, 1, 2, 2])) == 0

    def test_thm43_values(self, gr42):
        f = canonical_f(gr42, "thm43", 3)
        assert f(RingVector.of(gr42, [1, 0, 0])) == gr42.one
        assert f(RingVector.of(gr42, [1, 1, 1])) == gr42.zero
        assert f(RingVector.of(gr42, [1, 2, 2])) == gr42.from_int(2)

    def test_thm43_guards(self, z4, gr42):
        with pytest.raises(ParameterGuardError):
            canonical_f(z4, "thm43", 3)
        with pytest.raises(ParameterGuardError):
            canonical_f(gr42, "thm43", 2)

    def test_thm46_guard(self, z4):
        with pytest.raises(ParameterGuardError):
            canonical_f(z4, "thm46", 3)

    def test_unknown_family(self, z4):
        with pytest.raises(FunctionTableError):
            canonical_f(z4, "thm99", 4)

    def test_poly_family_pads_arity(self, z4):
        poly = MonomialPoly.parse("x1*x2*x3", z4)
        f = canonical_f(z4, "poly", 5, poly=poly)
        assert f.m == 5
        assert f(RingVector.of(z4, [1, 2, 3, 0, 0])) == 2

    def test_poly_family_guards(self, z4):
        with pytest.raises(ParameterGuardError):
            canonical_f(z4, "poly", 3)
        poly = MonomialPoly.parse("x1*x2*x3*x4", z4)
        with pytest.raises(ParameterGuardError):
            canonical_f(z4, "poly", 3, poly=poly)

    def test_table_cap(self, gr42):
        with pytest.raises(FunctionTableError, match="cap"):
            canonical_f(gr42, "thm43", 7)


class TestConditionChecks:
    """Test exhaustive hypothesis checks."""

    def test_thm46_canonical_passes(self, z4):
        report = check_conditions(canonical_f(z4, "thm46", 4), "thm46")
        assert report.passed
        assert set(_conditions(report)) == {"parameters", "1", "2", "3"}
        assert any("q = 2" in note for note in report.notes)

    def test_thm43_canonical_passes(self, gr42):
        report = check_conditions(canonical_f(gr42, "thm43", 3), "thm43")
        assert report.passed
        assert set(_conditions(report)) == {"parameters", "1", "2", "3", "4"}

    def test_thm43_without_residue_condition(self, gr42):
        report = check_conditions(canonical_f(gr42, "thm43", 3), "thm43_no_cond2")
        assert "2" not in _conditions(report)

    def test_counterexamples_are_least_vectors(self, z4):
        f = FunctionTable.explicit(z4, 4, np.zeros(256, dtype=np.int64))
        conditions = _conditions(check_conditions(f, "thm46"))
        assert conditions["1"].passed
        assert conditions["2"].counterexample == [1, 2, 2, 2]
        assert conditions["3"].counterexample == [0, 1, 1, 1]

    def test_parameter_guard_reported(self, z4):
        f = FunctionTable.explicit(z4, 2, np.zeros(16, dtype=np.int64))
        report = check_conditions(f, "thm43")
        assert not _conditions(report)["parameters"].passed
        assert not report.passed

    def test_mixed_valuations_note(self):
        z8 = make_ring(2, 3, 1)
        report = check_conditions(canonical_f(z8, "thm46", 4), "thm46")
        assert report.passed
        assert any("mixed valuations" in note for note in report.notes)

    def test_unknown_family(self, z4):
        with pytest.raises(FunctionTableError):
            check_conditions(canonical_f(z4, "thm46", 4), "thm99")


class TestPolyConditions:
    """Test the monomial-sum hypotheses."""

    def _report(self, ctx, text, m=6):
        f = canonical_f(ctx, "poly", m, poly=MonomialPoly.parse(text, ctx, m))
        return _conditions(check_conditions(f, "poly"))

    def test_valid_polynomial(self, z4):
        conditions = self._report(z4, "x1*x2*x3 + x4*x5*x6")
        assert all(c.passed for c in conditions.values())

    def test_needs_linear_variable(self, z4):
        assert not self._report(z4, "x1^2*x2^2*x3^2 + x4*x5*x6")["1"].passed

    def test_needs_disjoint_supports(self, z4):
        assert not self._report(z4, "x1*x2*x3 + x3*x4*x5")["2"].passed

    def test_needs_three_variables(self, z4):
        assert not self._report(z4, "x1*x2 + x3*x4*x5")["3"].passed

    def test_needs_two_terms(self, z4):
        assert not self._report(z4, "x1*x2*x3")["terms"].passed

    def test_explicit_table_is_not_a_polynomial(self, z4):
        f = FunctionTable.explicit(z4, 1, [0, 1, 2, 3])
        report = check_conditions(f, "poly")
        assert not report.passed
        assert report.conditions[0].name == "polynomial"


def test_all_vectors_order_matches_function_index(z4):
    f = FunctionTable.explicit(z4, 2, np.arange(16) % 4)
    X = all_vectors(z4, 2)
    assert f.evaluate(X).tolist() == (np.arange(16) % 4).tolist()
