# SPDX-FileCopyrightText: 2025 grmin contributors
# SPDX-License-Identifier: MIT

"""End-to-end runs of the named constructions at their reference sizes."""

import random

import pytest

from grmin.core.bounds import exhaustive_k2_search, k2_exact, length_lower_bound
from grmin.core.codes import (
    GeneratorMultiset,
    build_code,
    dual_bruteforce,
    is_minimal_code_bruteforce,
    is_minimal_code_criterion,
    is_minimal_codeword_bruteforce,
    is_minimal_codeword_criterion,
)
from grmin.core.constructions import build_cf, lambda0
from grmin.core.functions import MonomialPoly, canonical_f, check_conditions
from grmin.core.linalg import RingVector, all_vectors
from grmin.core.ring import make_ring

pytestmark = pytest.mark.slow


class TestNamedFamilies:
    """C_f for the canonical functions is minimal."""

    def test_thm46_z4(self):
        z4 = make_ring(2, 2, 1)
        f = canonical_f(z4, "thm46", 4)
        assert check_conditions(f, "thm46").passed
        code = build_code(build_cf(f))
        assert (code.k, code.m) == (255, 5)
        assert is_minimal_code_criterion(code).verdict
        assert length_lower_bound(z4, code.m).satisfied_by(code.k)

    def test_thm46_root_words_only(self):
        z4 = make_ring(2, 2, 1)
        f = canonical_f(z4, "thm46", 4, domain_mode="root_words_only")
        code = build_code(build_cf(f))
        assert code.k == 240
        assert is_minimal_code_criterion(code).verdict
        assert length_lower_bound(z4, code.m).satisfied_by(code.k)

    def test_thm43_gr42(self):
        gr42 = make_ring(2, 2, 2)
        f = canonical_f(gr42, "thm43", 3)
        assert check_conditions(f, "thm43").passed
        code = build_code(build_cf(f))
        assert (code.k, code.m) == (4095, 4)
        assert is_minimal_code_criterion(code, scope="root_words_only").verdict
        assert length_lower_bound(gr42, code.m).satisfied_by(code.k)

    def test_thm43_gr42_every_message(self):
        gr42 = make_ring(2, 2, 2)
        code = build_code(build_cf(canonical_f(gr42, "thm43", 3)))
        report = is_minimal_code_criterion(code)
        assert report.verdict
        assert report.checked == gr42.size**4 - 1

    def test_thm43_gr42_root_words_only(self):
        gr42 = make_ring(2, 2, 2)
        f = canonical_f(gr42, "thm43", 3, domain_mode="root_words_only")
        code = build_code(build_cf(f))
        assert (code.k, code.m) == (4032, 4)
        assert is_minimal_code_criterion(code).verdict
        assert length_lower_bound(gr42, code.m).satisfied_by(code.k)

    def test_poly_z4(self):
        z4 = make_ring(2, 2, 1)
        poly = MonomialPoly.parse("x1*x2*x3 + x4*x5*x6", z4)
        f = canonical_f(z4, "poly", 6, poly=poly)
        assert check_conditions(f, "poly").passed
        code = build_code(build_cf(f))
        assert code.k == 4095
        assert is_minimal_code_criterion(code).verdict
        assert length_lower_bound(z4, code.m).satisfied_by(code.k)


class TestPairwiseConstruction:
    """The pairwise construction is minimal and meets the length bound."""

    @pytest.mark.parametrize("p,n,ell,m", [(2, 2, 1, 3), (3, 2, 1, 2), (2, 3, 1, 2), (2, 2, 2, 2)])
    def test_minimal_and_within_bound(self, p, n, ell, m):
        ctx = make_ring(p, n, ell)
        code = build_code(lambda0(ctx, m))
        assert is_minimal_code_criterion(code).verdict
        assert length_lower_bound(ctx, m).satisfied_by(code.k)

    @pytest.mark.parametrize("p,n,ell,m", [(2, 2, 1, 3), (3, 2, 1, 2)])
    def test_bruteforce_agrees(self, p, n, ell, m):
        code = build_code(lambda0(make_ring(p, n, ell), m))
        assert is_minimal_code_bruteforce(code).verdict


class TestShortestTwoDimensionalCodes:
    """The search reproduces k(2) = q^n + q^{n-1}."""

    @pytest.mark.parametrize("p,n", [(2, 2), (3, 2), (2, 3)])
    def test_search_matches_formula(self, p, n):
        ctx = make_ring(p, n, 1)
        result = exhaustive_k2_search(ctx, k2_exact(ctx))
        assert result.k == k2_exact(ctx)
        assert is_minimal_code_criterion(build_code(result.generators)).verdict


def _random_code(ctx, rng, m, k):
    while True:
        columns = [[rng.randrange(ctx.size) for _ in range(m)] for _ in range(k)]
        generators = GeneratorMultiset(ctx, columns)
        if generators.mccoy_rank() == m:
            return build_code(generators)


class TestRandomCodes:
    """Seeded random codes over small rings."""

    RINGS = [(2, 2, 1), (2, 3, 1), (3, 2, 1), (2, 2, 2)]

    def test_frobenius_duality(self):
        rng = random.Random(2)
        for i in range(100):
            ctx = make_ring(*self.RINGS[i % len(self.RINGS)])
            k = rng.randint(1, 4)
            code = _random_code(ctx, rng, rng.randint(1, k), k)
            report = dual_bruteforce(code)
            assert report.size * code.size == ctx.q ** (ctx.n * k)
            assert report.frobenius_holds
            assert report.double_dual_holds

    @pytest.mark.parametrize("p,m", [(2, 2), (2, 3), (3, 2), (3, 3)])
    def test_criterion_matches_bruteforce_per_message(self, p, m):
        ctx = make_ring(p, 2, 1)
        rng = random.Random(100 * p + m)
        for _ in range(13):
            code = _random_code(ctx, rng, m, rng.randint(m, 8))
            for values in all_vectors(ctx, m)[1:]:
                v = RingVector(ctx, values)
                expected = is_minimal_codeword_bruteforce(code, code.encode(v))
                assert is_minimal_codeword_criterion(v, code.generators) == expected
