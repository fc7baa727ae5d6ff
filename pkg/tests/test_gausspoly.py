import math

import numpy as np
import pytest
from numpy.polynomial.hermite import hermgauss

from sbolab.gausspoly import GaussPolyFn, RepresentationError


def fr_by_hermite(f: GaussPolyFn, xi, order=80) -> complex:
    """Independent oracle: tensor Gauss-Hermite quadrature of the oscillatory
    integral  int f(x) exp(-i <x, xi>) dx  (exact decay absorbed in the weight)."""
    ts, ws = hermgauss(order)
    total = 0.0 + 0.0j
    for t in f.terms:
        a = t.width
        c = np.asarray(t.center)
        scale = a ** (-f.n / 2)
        grids = np.meshgrid(*[c[i] + ts / math.sqrt(a) for i in range(f.n)], indexing="ij")
        weights = np.ones_like(grids[0])
        for i in range(f.n):
            w_axis = ws.reshape([-1 if k == i else 1 for k in range(f.n)])
            weights = weights * w_axis
        poly = np.zeros_like(grids[0], dtype=complex)
        for mono, coeff in t.poly:
            term = complex(coeff) * np.ones_like(grids[0], dtype=complex)
            for i, e in enumerate(mono):
                if e:
                    term = term * grids[i] ** e
            poly += term
        phase = np.exp(-1j * sum(grids[i] * xi[i] for i in range(f.n)))
        total += scale * np.sum(poly * phase * weights)
    return total


@pytest.fixture
def sample_fn():
    return GaussPolyFn.gaussian(2, width=0.8, center=(0.3, -0.2)).mul_poly(
        {(0, 0): 0.9, (1, 0): 1.5, (0, 2): -0.7}
    )


class TestClassClosure:
    def test_diff_stays_in_class(self, sample_fn):
        g = sample_fn.diff(0).diff(1)
        assert isinstance(g, GaussPolyFn)
        # finite difference cross-check
        h = 1e-5
        x = np.array([0.4, 0.1])
        fd = (sample_fn([0.4 + h, 0.1]) - sample_fn([0.4 - h, 0.1])) / (2 * h)
        assert sample_fn.diff(0)(x) == pytest.approx(fd, rel=1e-8)

    def test_similarity_pullback(self, sample_fn):
        q = np.array([[0.0, -1.0], [1.0, 0.0]])
        g = sample_fn.pullback_similarity(q=q, r=2.0, b=np.array([0.1, -0.4]))
        x = np.array([0.3, 0.2])
        assert g(x) == pytest.approx(sample_fn(2.0 * q @ x + np.array([0.1, -0.4])), rel=1e-12)

    def test_general_affine_rejected(self, sample_fn):
        shear = np.array([[1.0, 0.5], [0.0, 1.0]])
        with pytest.raises(ValueError):
            sample_fn.pullback_similarity(q=shear)

    def test_restrict_last(self, sample_fn):
        g = sample_fn.restrict_last()
        assert g.n == 1
        assert g(np.array([0.7])) == pytest.approx(sample_fn(np.array([0.7, 0.0])), rel=1e-12)


class TestTransform:
    def test_plain_gaussian_closed_form(self):
        # complete-the-square oracle for exp(-|x|^2/2) in n dims
        for n in (1, 2, 3):
            f = GaussPolyFn.gaussian(n, width=0.5)
            ft = f.fc_transform()
            z = np.full(n, 0.4)
            expect = (2 * math.pi) ** (n / 2) * math.exp(0.5 * float(z @ z))
            assert ft(z) == pytest.approx(expect, rel=1e-12)

    def test_against_quadrature_at_five_points(self):
        f = GaussPolyFn.gaussian(2, width=0.5)
        ft = f.fc_transform()
        pts = [np.array(p) for p in [(0.2, 0.1), (-0.5, 0.3), (0.0, 0.0), (0.7, -0.7), (1.0, 0.2)]]
        ts, ws = hermgauss(60)
        for z in pts:
            # direct real integral of exp(-|x|^2/2 + <x, z>), x = sqrt(2) t
            xs = ts * math.sqrt(2.0)
            wexp = ws * math.sqrt(2.0)
            val = 0.0
            for i, x1 in enumerate(xs):
                for j, x2 in enumerate(xs):
                    val += wexp[i] * wexp[j] * math.exp(x1 * z[0] + x2 * z[1])
            assert ft(z) == pytest.approx(val, rel=1e-10)

    def test_linearity(self, sample_fn):
        g = GaussPolyFn.gaussian(2, width=1.3, center=(-0.4, 0.2))
        z = np.array([0.3, -0.6])
        lhs = (sample_fn + g).fc_transform()(z)
        rhs = sample_fn.fc_transform()(z) + g.fc_transform()(z)
        assert lhs == pytest.approx(rhs, rel=1e-12)

    def test_oscillatory_route_matches_quadrature(self, sample_fn):
        for xi in [np.array([1.3, -0.8]), np.array([0.5, 0.9]), np.array([2.0, 0.3])]:
            lhs = fr_by_hermite(sample_fn, xi)
            rhs = sample_fn.fr_at(xi)
            assert abs(lhs - rhs) <= 1e-8 * (1 + abs(lhs))

    def test_growing_terms_not_transformable(self, sample_fn):
        dual = sample_fn.fc_transform()
        with pytest.raises(RepresentationError):
            dual.fc_transform()
