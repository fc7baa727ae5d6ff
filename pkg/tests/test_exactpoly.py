from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sbolab.exactpoly import (
    ExactPoly,
    PolyQ,
    QQi,
    RatFunc,
    exact_nullspace,
    polyq_gcd,
)

fractions = st.fractions(
    min_value=-5, max_value=5, max_denominator=6
)


class TestExactPoly:
    def test_arithmetic_is_exact(self):
        p = ExactPoly.var(2, 0)
        q = ExactPoly.var(2, 1)
        r = (p + q) * (p - q)
        assert r == p * p - q * q
        assert not (r - r)

    def test_no_zero_terms_stored(self):
        p = ExactPoly(2, {(1, 0): Fraction(1)}) - ExactPoly(2, {(1, 0): Fraction(1)})
        assert p.terms == {}

    def test_diff_and_mul_var(self):
        p = ExactPoly.var(1, 0).pow(3)
        assert p.diff(0) == ExactPoly(1, {(2,): Fraction(3)})
        assert p.mul_var(0) == ExactPoly(1, {(4,): Fraction(1)})

    def test_eval_exact(self):
        p = ExactPoly(2, {(2, 1): Fraction(1, 3)})
        assert p.eval([Fraction(3), Fraction(2)]) == Fraction(6)


class TestQQi:
    def test_ring_ops(self):
        i = QQi(Fraction(0), Fraction(1))
        assert i * i == -1
        assert (1 + i) * (1 - i) == 2

    def test_zero_detection_in_poly(self):
        one = QQi(Fraction(1), Fraction(0))
        p = ExactPoly(1, {(1,): one}) - ExactPoly(1, {(1,): one})
        assert not p


class TestPolyQ:
    def test_divmod_exact(self):
        x = PolyQ.x()
        p = (x + 1) * (x - 2) * (x + PolyQ.const(Fraction(1, 3)))
        q, r = p.divmod(x - 2)
        assert not r
        assert q * (x - 2) == p

    def test_gcd(self):
        x = PolyQ.x()
        g = polyq_gcd((x + 1) * (x - 3), (x + 1) * (x + 5))
        assert g == (x + 1).monic()

    def test_ratfunc_normalizes(self):
        x = PolyQ.x()
        r = RatFunc((x + 1) * (x - 1), (x - 1) * PolyQ.const(2))
        assert r == RatFunc(x + 1, PolyQ.const(2))


class TestNullspace:
    def test_identity_has_trivial_kernel(self):
        m = [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]
        assert exact_nullspace(m) == []

    def test_zero_matrix_full_kernel(self):
        m = [[Fraction(0)] * 3 for _ in range(2)]
        assert len(exact_nullspace(m)) == 3

    def test_hand_eliminated_example(self):
        m = [[Fraction(1), Fraction(1), Fraction(0)],
             [Fraction(0), Fraction(0), Fraction(1)]]
        basis = exact_nullspace(m)
        assert len(basis) == 1
        v = basis[0]
        scale = v[0]
        assert scale != 0
        assert [c / scale for c in v] == [Fraction(1), Fraction(-1), Fraction(0)]

    @given(st.lists(st.lists(fractions, min_size=4, max_size=4), min_size=2, max_size=5))
    def test_kernel_vectors_annihilate_exactly(self, rows):
        m = [[Fraction(c) for c in row] for row in rows]
        basis = exact_nullspace(m)
        for v in basis:
            for row in m:
                assert sum(a * b for a, b in zip(row, v)) == 0
        # rank-nullity with exact rank from a second elimination
        rank = len(m[0]) - len(basis)
        assert 0 <= rank <= min(len(m), len(m[0]))

    def test_rational_function_field(self):
        x = PolyQ.x()
        m = [[RatFunc(x), RatFunc(PolyQ.const(1))],
             [RatFunc(x * x), RatFunc(x)]]
        basis = exact_nullspace(m)
        assert len(basis) == 1
        v = basis[0]
        for row in m:
            acc = RatFunc(PolyQ([]))
            for a, b in zip(row, v):
                acc = acc + a * b
            assert not acc
