"""Buchberger engine and the closed-form coinvariant-ideal bases."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from supercoinv import artin
from supercoinv.groebner import (
    CommPoly,
    QuotientNotFiniteError,
    buchberger,
    complete_homogeneous,
    groebner_generators,
    normal_form,
    predicted_leading_monomials,
    standard_monomials,
)

GRID = [
    (m, p, n)
    for m in range(1, 5)
    for p in range(1, m + 1)
    if m % p == 0
    for n in range(1, 5)
]


class TestCompleteHomogeneous:
    def test_h0(self):
        assert complete_homogeneous(0, range(1, 4), 3) == CommPoly.one(3)

    def test_h2_two_vars(self):
        got = complete_homogeneous(2, (1, 2), 2)
        expected = (
            CommPoly.monomial(2, (2, 0))
            + CommPoly.monomial(2, (1, 1))
            + CommPoly.monomial(2, (0, 2))
        )
        assert got == expected

    def test_h1_squares(self):
        got = complete_homogeneous(1, (1, 2), 2, power=2)
        assert got == CommPoly.monomial(2, (2, 0)) + CommPoly.monomial(2, (0, 2))


class TestGenerators:
    def test_s2(self):
        gens = groebner_generators(1, 1, 2)
        assert [g.to_string() for g in gens] == ["x1 + x2", "x2^2"]

    def test_d2(self):
        gens = groebner_generators(2, 2, 2)
        assert [g.to_string() for g in gens] == ["x1^2 + x2^2", "x1*x2", "x2^3"]

    def test_leading_monomials_p1(self):
        for m, n in [(1, 3), (2, 3), (3, 2)]:
            gens = groebner_generators(m, 1, n)
            lms = {g.leading_monomial() for g in gens}
            expected = set()
            for j in range(1, n + 1):
                e = [0] * n
                e[j - 1] = j * m
                expected.add(tuple(e))
            assert lms == expected == predicted_leading_monomials(m, 1, n)


class TestBuchberger:
    def test_one_reduction_by_hand(self):
        # S-poly of (x1 + x2, x1 x2) is x2^2
        gens = [
            CommPoly(2, {(1, 0): Fraction(1), (0, 1): Fraction(1)}),
            CommPoly(2, {(1, 1): Fraction(1)}),
        ]
        gb = buchberger(gens)
        assert gb.to_strings() == ["x2^2", "x1 + x2"]
        assert gb.is_reduced()

    def test_single_monomial(self):
        gb = buchberger([CommPoly.monomial(2, (2, 1), 5)])
        assert gb.to_strings() == ["x1^2*x2"]

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            buchberger([CommPoly.zero(2)])

    @pytest.mark.parametrize("key", GRID)
    def test_closed_form_family_is_stable(self, key):
        m, p, n = key
        gens = groebner_generators(m, p, n)
        gb = buchberger(gens)
        assert gb.is_reduced()
        assert {tuple(sorted(g.terms.items())) for g in gb.generators} == {
            tuple(sorted(g.monic().terms.items())) for g in gens
        }
        assert set(gb.leading_monomials()) == predicted_leading_monomials(m, p, n)


class TestNormalForm:
    def test_member_reduces_to_zero(self):
        gb = buchberger(groebner_generators(1, 1, 2))
        assert normal_form(CommPoly.x(2, 1, 2), gb).is_zero()

    def test_standard_monomial_is_fixed(self):
        gb = buchberger(groebner_generators(1, 1, 2))
        f = CommPoly.x(2, 2)
        assert normal_form(f, gb) == f

    def test_linear_and_idempotent(self):
        gb = buchberger(groebner_generators(2, 2, 2))
        f = CommPoly(2, {(3, 1): Fraction(2), (1, 0): Fraction(1)})
        g = CommPoly(2, {(0, 4): Fraction(1), (2, 2): Fraction(-5)})
        nf = lambda h: normal_form(h, gb)
        assert nf(f + g) == nf(f) + nf(g)
        assert nf(nf(f)) == nf(f)

    @settings(max_examples=60, deadline=None)
    @given(
        st.dictionaries(
            st.tuples(
                st.integers(min_value=0, max_value=4),
                st.integers(min_value=0, max_value=4),
            ),
            st.integers(min_value=-5, max_value=5).filter(bool),
            min_size=1,
            max_size=4,
        ),
        st.dictionaries(
            st.tuples(
                st.integers(min_value=0, max_value=3),
                st.integers(min_value=0, max_value=3),
            ),
            st.integers(min_value=-5, max_value=5).filter(bool),
            min_size=1,
            max_size=3,
        ),
    )
    def test_product_consistency(self, fd, gd):
        gb = buchberger(groebner_generators(2, 1, 2))
        f = CommPoly(2, {k: Fraction(v) for k, v in fd.items()})
        g = CommPoly(2, {k: Fraction(v) for k, v in gd.items()})
        assert normal_form(f * g, gb) == normal_form(normal_form(f, gb) * g, gb)


class TestStandardMonomials:
    def test_s2(self):
        gb = buchberger(groebner_generators(1, 1, 2))
        assert standard_monomials(gb) == [(0, 0), (0, 1)]

    def test_d2(self):
        gb = buchberger(groebner_generators(2, 2, 2))
        assert standard_monomials(gb) == [(0, 0), (0, 1), (0, 2), (1, 0)]

    def test_infinite_quotient_detected(self):
        gb = buchberger([CommPoly.x(2, 1)])
        with pytest.raises(QuotientNotFiniteError):
            standard_monomials(gb)
        assert standard_monomials(gb, degree_bound=2) == [
            (0, 0),
            (0, 1),
            (0, 2),
        ]

    @pytest.mark.parametrize("key", GRID)
    def test_standard_monomials_are_artin_basis(self, key):
        m, p, n = key
        gb = buchberger(groebner_generators(m, p, n))
        std = standard_monomials(gb)
        assert std == artin.enumerate_artin(m, p, n)
        assert len(std) == artin.artin_count(m, p, n)


class TestIdealContainments:
    @pytest.mark.parametrize("key", GRID)
    def test_power_sums_and_product_reduce_to_zero(self, key):
        m, p, n = key
        gb = buchberger(groebner_generators(m, p, n))
        for i in range(1, n):
            ps = CommPoly.zero(n)
            for j in range(1, n + 1):
                ps = ps + CommPoly.x(n, j, m * i)
            assert normal_form(ps, gb).is_zero()
        prod = CommPoly.monomial(n, (m // p,) * n)
        assert normal_form(prod, gb).is_zero()

    def test_prefix_power_sum_also_member(self):
        # the full power sum of top degree for p = 1
        for m, n in [(1, 3), (2, 2)]:
            gb = buchberger(groebner_generators(m, 1, n))
            ps = CommPoly.zero(n)
            for j in range(1, n + 1):
                ps = ps + CommPoly.x(n, j, m * n)
            assert normal_form(ps, gb).is_zero()
