# SPDX-FileCopyrightText: 2025 grmin contributors
# SPDX-License-Identifier: MIT

"""Tests for linear codes and the two minimality checks."""

import pytest
from pydantic import ValidationError

from grmin.config.settings import BudgetSettings, SweepSettings
from grmin.core.codes import (
    CodeError,
    CriterionScopeError,
    GeneratorMultiset,
    MinimalityReport,
    NotFullDimensionError,
    O_and_M,
    build_code,
    covers,
    dual_bruteforce,
    is_minimal_code_bruteforce,
    is_minimal_code_criterion,
    is_minimal_codeword_bruteforce,
    is_minimal_codeword_criterion,
    onedim_minimal,
    purify,
)
from grmin.core.constructions import lambda0
from grmin.core.linalg import (
    BudgetExceededError,
    DimensionMismatchError,
    RingVector,
    all_vectors,
    root_word_mask,
)
from grmin.core.ring import make_ring


@pytest.fixture
def z4():
    return make_ring(2, 2, 1)


@pytest.fixture
def z9():
    return make_ring(3, 2, 1)


@pytest.fixture
def identity_code(z4):
    return build_code(GeneratorMultiset.of(z4, [[1, 0], [0, 1]]))


class TestGeneratorMultiset:
    """Test generator columns and code construction."""

    def test_shape(self, z4):
        generators = GeneratorMultiset.of(z4, [[1, 0], [0, 1], [1, 1]])
        assert generators.k == 3
        assert generators.m == 2
        assert generators.matrix.shape == (2, 3)

    def test_rejects_empty(self, z4):
        with pytest.raises(DimensionMismatchError):
            GeneratorMultiset(z4, [])

    def test_rejects_entry_outside_ring(self, z4):
        with pytest.raises(CodeError):
            GeneratorMultiset(z4, [[4, 0]])

    def test_build_code_needs_full_rank(self, z4):
        with pytest.raises(NotFullDimensionError):
            build_code(GeneratorMultiset.of(z4, [[1, 0], [2, 2], [3, 0]]))

    def test_encode(self, z4):
        code = build_code(GeneratorMultiset.of(z4, [[1, 0], [0, 1], [1, 1]]))
        word = code.encode([1, 2])
        assert word.coords.values.tolist() == [1, 2, 3]
        assert word.support == frozenset({0, 1, 2})
        assert code.size == 16

    def test_encode_wrong_length(self, identity_code):
        with pytest.raises(DimensionMismatchError):
            identity_code.encode([1, 0, 0])

    def test_covers(self, identity_code):
        a = identity_code.encode([1, 2])
        b = identity_code.encode([2, 0])
        assert covers(a, b)
        assert not covers(b, a)


class TestBruteForce:
    """Test the literal minimality definition."""

    def test_identity_code_is_not_minimal(self, identity_code):
        report = is_minimal_code_bruteforce(identity_code)
        assert not report.verdict
        assert report.witnesses[0].v == [0, 2]
        assert "0,1" in report.witnesses[0].reason

    def test_single_codewords(self, identity_code):
        assert is_minimal_codeword_bruteforce(identity_code, identity_code.encode([1, 0]))
        assert not is_minimal_codeword_bruteforce(identity_code, identity_code.encode([0, 2]))

    def test_zero_codeword(self, identity_code):
        with pytest.raises(CodeError):
            is_minimal_codeword_bruteforce(identity_code, identity_code.encode([0, 0]))

    def test_pairwise_construction_is_minimal(self, z4):
        report = is_minimal_code_bruteforce(build_code(lambda0(z4, 2)))
        assert report.verdict
        assert report.checked == 15

    def test_codeword_budget(self, z9):
        code = build_code(lambda0(z9, 3))
        with pytest.raises(BudgetExceededError):
            is_minimal_code_bruteforce(code, BudgetSettings(codeword_budget=100))

    def test_length_cap(self, z4):
        code = build_code(lambda0(z4, 3))
        with pytest.raises(BudgetExceededError):
            is_minimal_code_bruteforce(code, BudgetSettings(codeword_length_cap=10))


class TestCriterion:
    """Test the orthogonal-module criterion."""

    def test_identity_code(self, identity_code):
        report = is_minimal_code_criterion(identity_code)
        assert not report.verdict
        assert report.method == "criterion"
        assert report.witnesses[0].v == [0, 2]
        assert report.witnesses[0].reason == "|M(v)| = q^2 < |O(v)| = q^3"

    def test_root_words_only(self, identity_code):
        report = is_minimal_code_criterion(identity_code, scope="root_words_only")
        assert report.checked == 12
        assert report.witnesses[0].v == [1, 1]

    def test_root_scope_needs_two_dimensions(self, z4):
        code = build_code(GeneratorMultiset.of(z4, [[1], [2]]))
        with pytest.raises(CriterionScopeError):
            is_minimal_code_criterion(code, scope="root_words_only")

    def test_single_messages(self, z4, identity_code):
        generators = identity_code.generators
        assert is_minimal_codeword_criterion(RingVector.of(z4, [1, 0]), generators)
        assert not is_minimal_codeword_criterion(RingVector.of(z4, [0, 2]), generators)
        with pytest.raises(CodeError):
            is_minimal_codeword_criterion(RingVector.zeros(z4, 2), generators)

    def test_o_and_m(self, z4, identity_code):
        o_size, form = O_and_M(RingVector.of(z4, [0, 2]), identity_code.generators)
        assert o_size == 8
        assert form.size == 4

    def test_cross_check(self, z4):
        code = build_code(lambda0(z4, 3))
        report = is_minimal_code_criterion(code, sweep=SweepSettings(cross_check=True))
        assert report.verdict
        assert report.checked == 63

    def test_progress_callback(self, z4):
        seen = []
        is_minimal_code_criterion(build_code(lambda0(z4, 2)), progress=seen.append)
        assert sum(seen) == 15

    def test_worker_pool_matches_serial(self, z9):
        code = build_code(GeneratorMultiset.of(z9, [[1, 0], [0, 1], [1, 1], [3, 1]]))
        serial = is_minimal_code_criterion(code)
        pooled = is_minimal_code_criterion(code, sweep=SweepSettings(threads=2))
        assert serial.verdict == pooled.verdict
        assert [w.v for w in serial.witnesses] == [w.v for w in pooled.witnesses]

    @pytest.mark.parametrize(
        "columns",
        [
            [[1, 0], [0, 1], [1, 1]],
            [[1, 0], [0, 1], [1, 1], [1, 3], [1, 2], [2, 1]],
            [[1, 2], [2, 1], [1, 1], [3, 2]],
            [[1, 0], [0, 1], [1, 1], [1, 3], [2, 1]],
        ],
    )
    def test_agrees_with_bruteforce(self, z4, columns):
        code = build_code(GeneratorMultiset.of(z4, columns))
        criterion = is_minimal_code_criterion(code)
        bruteforce = is_minimal_code_bruteforce(code)
        assert criterion.verdict == bruteforce.verdict
        assert [w.v for w in criterion.witnesses] == [w.v for w in bruteforce.witnesses]


class TestMinimalityReport:
    """Test report validation."""

    def test_verdict_must_match_witnesses(self):
        with pytest.raises(ValidationError):
            MinimalityReport(
                verdict=True,
                method="criterion",
                checked=1,
                witnesses=[{"v": [1], "reason": "x"}],
                elapsed_ms=0.0,
            )
        with pytest.raises(ValidationError):
            MinimalityReport(verdict=False, method="criterion", checked=1, elapsed_ms=0.0)


class TestOneDimensional:
    """Test the one-dimensional characterization."""

    def test_missing_ideal(self, z9):
        assert not onedim_minimal(RingVector.of(z9, [1, 0, 0, 0]))

    def test_every_ideal_present(self, z9):
        assert onedim_minimal(RingVector.of(z9, [1, 3]))

    def test_agrees_with_bruteforce(self, z9):
        for entries in ([1, 0, 0, 0], [1, 3], [2, 3, 0], [1, 2, 4]):
            v = RingVector.of(z9, entries)
            code = build_code(GeneratorMultiset(z9, v.values[:, None]))
            assert onedim_minimal(v) == is_minimal_code_bruteforce(code).verdict

    def test_exhaustive_z9_cube(self, z9):
        vectors = all_vectors(z9, 3)[1:]
        roots = root_word_mask(z9, vectors)
        assert len(vectors) == 728
        for values, root in zip(vectors, roots):
            v = RingVector(z9, values)
            if root:
                code = build_code(GeneratorMultiset(z9, values[:, None]))
                assert onedim_minimal(v) == is_minimal_code_bruteforce(code).verdict
            else:
                # every codeword of 3<w> is a multiple of v
                assert onedim_minimal(v)

    def test_zero_vector(self, z9):
        with pytest.raises(CodeError):
            onedim_minimal(RingVector.zeros(z9, 2))


class TestPurify:
    """Test removal of zero-divisor columns."""

    def test_drops_non_root_columns(self, z4):
        generators = GeneratorMultiset.of(z4, [[1, 0], [2, 2], [0, 1], [2, 0]])
        assert purify(generators).values.tolist() == [[1, 0], [0, 1]]

    def test_purified_lambda0_stays_minimal(self, z4):
        purified = purify(lambda0(z4, 2))
        assert is_minimal_code_criterion(build_code(purified)).verdict

    def test_rank_loss(self, z4):
        with pytest.raises(NotFullDimensionError):
            purify(GeneratorMultiset.of(z4, [[1, 0], [0, 2]]))

    def test_needs_two_dimensions(self, z4):
        with pytest.raises(CodeError):
            purify(GeneratorMultiset.of(z4, [[1], [2]]))


class TestDual:
    """Test brute-force duals."""

    def test_repetition_code(self, z4):
        code = build_code(GeneratorMultiset.of(z4, [[1], [1], [2]]))
        report = dual_bruteforce(code)
        assert report.size == 16
        assert report.size_exponent == 4
        assert report.frobenius_holds
        assert report.double_dual_holds

    def test_full_code(self, identity_code):
        report = dual_bruteforce(identity_code)
        assert report.size == 1
        assert report.double_dual_holds

    def test_budget(self, z4):
        code = build_code(lambda0(z4, 2))
        with pytest.raises(BudgetExceededError):
            dual_bruteforce(code, BudgetSettings(dual_budget=100))
