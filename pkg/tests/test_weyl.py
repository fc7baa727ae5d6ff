import random
from fractions import Fraction

import numpy as np
import pytest

from sbolab.exactpoly import ExactPoly
from sbolab.gausspoly import GaussPolyFn
from sbolab.weyl import WeylOperator, weyl_apply, weyl_compose, weyl_hat


def random_operator(n, rng, max_terms=4, max_exp=2):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        alpha = tuple(rng.randint(0, max_exp) for _ in range(n))
        beta = tuple(rng.randint(0, max_exp) for _ in range(n))
        terms[(alpha, beta)] = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
    return WeylOperator(n, terms)


class TestGenerators:
    def test_hat_of_derivative(self):
        assert weyl_hat(WeylOperator.d(0, 1)) == WeylOperator.z(0, 1).scale(-1)

    def test_hat_of_multiplication(self):
        assert weyl_hat(WeylOperator.z(0, 1)) == WeylOperator.d(0, 1)

    def test_hat_of_number_operator(self):
        # z d |-> -zeta dzeta - 1 after normal ordering
        zd = weyl_compose(WeylOperator.z(0, 1), WeylOperator.d(0, 1))
        expect = zd.scale(-1) - WeylOperator.identity(1)
        assert weyl_hat(zd) == expect


class TestCompose:
    def test_canonical_commutator(self):
        dz = weyl_compose(WeylOperator.d(0, 2), WeylOperator.z(0, 2))
        zd = weyl_compose(WeylOperator.z(0, 2), WeylOperator.d(0, 2))
        assert dz == zd + WeylOperator.identity(2)

    def test_normal_order_is_canonical(self):
        a = weyl_compose(WeylOperator.z(0, 1), WeylOperator.d(0, 1))
        b = WeylOperator(1, {((1,), (1,)): Fraction(1)})
        assert a == b

    def test_homomorphism_100_pairs(self):
        rng = random.Random(7)
        for _ in range(100):
            s, t = random_operator(3, rng), random_operator(3, rng)
            assert weyl_hat(weyl_compose(s, t)) == weyl_compose(weyl_hat(s), weyl_hat(t))


class TestApply:
    def test_derivative_of_gaussian(self):
        f = GaussPolyFn.gaussian(2)
        g = weyl_apply(WeylOperator.d(0, 2), f)
        x = np.array([0.3, -0.5])
        assert g(x) == pytest.approx(-2 * 0.3 * np.exp(-(x @ x)), rel=1e-13)

    def test_multiplication(self):
        f = GaussPolyFn.gaussian(2)
        g = weyl_apply(WeylOperator.z(0, 2), f)
        x = np.array([0.4, 0.2])
        assert g(x) == pytest.approx(0.4 * f(x), rel=1e-13)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_laplacian_of_gaussian(self, n, rng):
        f = GaussPolyFn.gaussian(n)
        g = weyl_apply(WeylOperator.laplacian(n), f)
        for _ in range(5):
            x = rng.normal(size=n)
            expect = (4 * float(x @ x) - 2 * n) * np.exp(-float(x @ x))
            assert g(x) == pytest.approx(expect, rel=1e-12, abs=1e-13)

    def test_apply_to_exact_poly(self):
        p = ExactPoly.var(2, 0).pow(2) * ExactPoly.var(2, 1)
        out = weyl_apply(weyl_compose(WeylOperator.d(0, 2), WeylOperator.d(1, 2)), p)
        assert out == ExactPoly(2, {(1, 0): Fraction(2)})


class TestTransformIntertwining:
    def test_on_gaussian_class(self):
        rng = random.Random(3)
        f = GaussPolyFn.gaussian(2, width=0.8, center=(0.3, -0.2)).mul_poly(
            {(0, 0): 1.0, (1, 0): 0.4, (0, 2): -0.6})
        worst = 0.0
        for _ in range(20):
            s = random_operator(2, rng, max_terms=3)
            lhs = weyl_apply(s, f).fc_transform()
            rhs = weyl_apply(weyl_hat(s), f.fc_transform())
            for _ in range(10):
                z = np.array([rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2)])
                l, r = lhs(z), rhs(z)
                worst = max(worst, abs(l - r) / (1 + abs(l)))
        assert worst <= 1e-9
