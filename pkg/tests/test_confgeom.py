import numpy as np
import pytest

from sbolab import confgeom as cg
from sbolab.gausspoly import GaussPolyFn, RepresentationError


def random_unit(n, rng):
    v = rng.normal(size=n + 1)
    return v / np.linalg.norm(v)


def random_lorentz(n, rng, factors=2):
    h = cg.LorentzElement.identity(n)
    for _ in range(factors):
        q, _ = np.linalg.qr(rng.normal(size=(n + 1, n + 1)))
        h = h @ cg.LorentzElement.rotation(n, q)
        h = h @ cg.LorentzElement.boost(n, int(rng.integers(1, n + 2)), rng.uniform(-1.5, 1.5))
    return h


class TestLorentzElement:
    def test_rejects_non_lorentz(self):
        with pytest.raises(ValueError):
            cg.LorentzElement(2, np.diag([2.0, 1, 1, 1]))

    def test_rejects_cone_reversal(self):
        m = np.eye(4)
        m[0, 0] = -1.0
        m[1, 1] = -1.0
        with pytest.raises(cg.OrientationError):
            cg.LorentzElement(2, m)


class TestMoebius:
    def test_identity_fixes_points(self, rng):
        n = 3
        u = random_unit(n, rng)
        v, om = cg.moebius_act(cg.LorentzElement.identity(n), u)
        assert np.allclose(v, u, atol=1e-14)
        assert om == pytest.approx(1.0)

    def test_rotations_are_isometries(self, rng):
        n = 3
        for _ in range(50):
            q, _ = np.linalg.qr(rng.normal(size=(n + 1, n + 1)))
            u = random_unit(n, rng)
            v, om = cg.moebius_act(cg.LorentzElement.rotation(n, q), u)
            assert om == pytest.approx(1.0, abs=1e-12)
            assert np.allclose(v, q @ u, atol=1e-12)

    def test_boost_factor_at_fixed_points(self):
        # hyperbolic-rotation hand computation: the 2x2 block acting on
        # (1, +-1) scales by e^(+-s), so the factor is e^(-+s)
        n = 3
        s = 0.8
        h = cg.LorentzElement.boost(n, n + 1, s)
        north = np.zeros(n + 1)
        north[-1] = 1.0
        _, om_plus = cg.moebius_act(h, north)
        _, om_minus = cg.moebius_act(h, -north)
        assert om_plus == pytest.approx(np.exp(-s), rel=1e-14)
        assert om_minus == pytest.approx(np.exp(s), rel=1e-14)

    def test_cocycle_identity(self, rng):
        n = 3
        worst = 0.0
        for _ in range(1000):
            worst = max(worst, cg.cocycle_residual(
                random_lorentz(n, rng), random_lorentz(n, rng), random_unit(n, rng)))
        assert worst <= 1e-10

    def test_metric_scaling_matches_factor(self, rng):
        # |d L_h(u) v| = Omega(h, u) |v| for tangent v, by finite differences
        n = 2
        h = random_lorentz(n, rng)
        u = random_unit(n, rng)
        t = rng.normal(size=n + 1)
        t -= (t @ u) * u
        t /= np.linalg.norm(t)
        eps = 1e-6
        up, _ = cg.moebius_act(h, (u + eps * t) / np.linalg.norm(u + eps * t))
        um, _ = cg.moebius_act(h, (u - eps * t) / np.linalg.norm(u - eps * t))
        speed = np.linalg.norm(up - um) / (2 * eps)
        _, om = cg.moebius_act(h, u)
        assert speed == pytest.approx(om, rel=1e-5)


class TestStereographic:
    def test_north_pole_to_origin(self):
        u = np.array([1.0, 0, 0, 0])
        assert np.allclose(cg.stereographic(u), np.zeros(3))

    def test_equator_fixed(self, rng):
        w = rng.normal(size=3)
        w /= np.linalg.norm(w)
        u = np.concatenate(([0.0], w))
        assert np.allclose(cg.stereographic(u), w, atol=1e-14)

    def test_south_pole_to_infinity(self):
        assert cg.stereographic(np.array([-1.0, 0, 0, 0])) is cg.INFINITY

    def test_round_trip(self, rng):
        worst = 0.0
        for _ in range(1000):
            u = random_unit(3, rng)
            x = cg.stereographic(u)
            if x is cg.INFINITY:
                continue
            worst = max(worst, np.max(np.abs(cg.stereographic_inverse(x) - u)))
        assert worst <= 1e-12

    def test_commutative_diagram(self, rng):
        # flat hyperplane x_n = 0 lifts onto the equatorial slice (last
        # ambient coordinate zero)
        for _ in range(100):
            x = rng.normal(size=3)
            x[-1] = 0.0
            u = cg.stereographic_inverse(x)
            assert abs(u[-1]) <= 1e-12


class TestTwistedPullback:
    def test_constant_function(self, rng):
        lam = 0.7 + 0.3j
        big_f = cg.twisted_pullback(lam, lambda u: 1.0)
        for _ in range(20):
            x = rng.normal(size=3)
            assert big_f(x) == pytest.approx((1 + float(x @ x)) ** (-lam), rel=1e-12)

    def test_weight_zero_is_plain_pullback(self, rng):
        f = lambda u: float(u[0] ** 2 - u[1])
        big_f = cg.twisted_pullback(0.0, f)
        x = rng.normal(size=3)
        assert big_f(x) == pytest.approx(f(cg.stereographic_inverse(x)), rel=1e-12)

    def test_first_coordinate_function(self, rng):
        lam = 1.3
        big_f = cg.twisted_pullback(lam, lambda u: u[0])
        for _ in range(20):
            x = rng.normal(size=3)
            r2 = float(x @ x)
            expect = (1 + r2) ** (-lam) * (1 - r2) / (1 + r2)
            assert big_f(x) == pytest.approx(expect, rel=1e-12)


class TestFlatAction:
    @pytest.fixture
    def big_f(self):
        return GaussPolyFn.gaussian(3, width=0.9, center=(0.2, -0.1, 0.4)).mul_poly(
            {(1, 0, 1): 0.8, (0, 0, 0): 1.0})

    def test_identity(self, big_f):
        out = cg.pi_flat(cg.dilation(1.0), 0.9, big_f)
        x = np.array([0.3, -0.2, 0.5])
        assert out(x) == pytest.approx(big_f(x), rel=1e-13)

    def test_dilation_formula(self, big_f, rng):
        lam = 0.7 + 0.2j
        out = cg.pi_flat(cg.dilation(2.0), lam, big_f)
        for _ in range(10):
            x = rng.normal(size=3)
            assert out(x) == pytest.approx(2.0**lam * big_f(2.0 * x), rel=1e-12)

    @pytest.mark.parametrize("kind", ["translation", "dilation", "rotation",
                                      "reflection", "inversion"])
    def test_flat_route_matches_sphere_route(self, kind, big_f, rng):
        n = 3
        lam = 0.7 + 0.3j
        q, _ = np.linalg.qr(rng.normal(size=(n - 1, n - 1)))
        motion = {
            "translation": cg.translation([0.5, -0.3, 0.0]),
            "dilation": cg.dilation(0.6),
            "rotation": cg.rotation(q),
            "reflection": cg.reflection(),
            "inversion": cg.inversion(),
        }[kind]
        try:
            direct = cg.pi_flat(motion, lam, big_f)
        except RepresentationError:
            direct = cg.pi_flat(motion, lam, lambda x: big_f(x))
        via = cg.flat_action_via_sphere(motion, n, lam, lambda x: big_f(x))
        worst = 0.0
        used = 0
        while used < 50:
            x = rng.normal(size=n) * 0.8
            if np.linalg.norm(x) < 0.15:
                continue
            used += 1
            worst = max(worst, abs(direct(x) - via(x)) / (1 + abs(direct(x))))
        assert worst <= 1e-10

    def test_inversion_rejects_symbolic_input(self, big_f):
        with pytest.raises(RepresentationError):
            cg.pi_flat(cg.inversion(), 1.0, big_f)

    def test_weighted_action_composes(self, rng):
        n = 3
        lam = 0.8 + 0.4j
        amb = GaussPolyFn.gaussian(n + 1, width=0.7, center=(0.25,) * (n + 1))
        f = lambda u: amb(u)
        worst = 0.0
        for _ in range(200):
            h1, h2 = random_lorentz(n, rng), random_lorentz(n, rng)
            u = random_unit(n, rng)
            lhs = cg.compact_action(h1, lam, cg.compact_action(h2, lam, f))(u)
            rhs = cg.compact_action(h2 @ h1, lam, f)(u)
            worst = max(worst, abs(lhs - rhs) / (1 + abs(lhs)))
        assert worst <= 1e-10
