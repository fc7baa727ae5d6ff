import cmath
import math
from fractions import Fraction

import numpy as np
import pytest

from sbolab.sbops import (
    DomainError,
    ParamPair,
    ParityError,
    RegionError,
    akernel_eval,
    asymbol_eval,
    csymbol_eval,
    functional_eq_check,
    juhl_build,
    ks_symbol_eval,
    residue_check,
    residue_constant,
    symbol_grid,
)
from sbolab.specfun import gamma, inflated_gegenbauer, recip_gamma


class TestParamPair:
    def test_convergent_range_predicate(self):
        assert ParamPair(lam=3.0, nu=1.0, n=2).in_convergent_range()
        assert not ParamPair(lam=1.0, nu=3.0, n=2).in_convergent_range()
        assert not ParamPair(lam=1.0, nu=0.5, n=3).in_convergent_range()

    def test_residue_levels(self):
        assert ParamPair(lam=0.5, nu=4.5, n=3).residue_level() == 2
        assert ParamPair(lam=0.5, nu=1.5, n=3).residue_level() is None
        assert ParamPair(lam=1.0, nu=0.0, n=3).residue_level() is None

    def test_even_lattice_membership(self):
        assert ParamPair(lam=-4, nu=-2, n=3).in_leven()
        assert ParamPair(lam=0, nu=0, n=3).in_leven()
        assert not ParamPair(lam=-3, nu=-2, n=3).in_leven()
        assert not ParamPair(lam=-2, nu=1, n=3).in_leven()


class TestJuhlBuild:
    def test_l0_is_restriction(self):
        op = juhl_build(ParamPair(lam=Fraction(2), nu=Fraction(2), n=3))
        assert op.l == 0 and op.coeffs == (Fraction(1),)

    def test_l1_expansion(self):
        lam, nu, n = Fraction(1), Fraction(3), 3
        op = juhl_build(ParamPair(lam=lam, nu=nu, n=n))
        # expanded table: normal-second-derivative coefficient lam+nu-n+1,
        # tangential-laplacian coefficient 1
        assert op.coeffs == (lam + nu - n + 1, Fraction(1))

    def test_parity_error(self):
        with pytest.raises(ParityError):
            juhl_build(ParamPair(lam=Fraction(0), nu=Fraction(1), n=3))
        with pytest.raises(ParityError):
            juhl_build(ParamPair(lam=Fraction(2), nu=Fraction(0), n=3))

    def test_symbol_table_matches_inflated_gegenbauer_exactly(self):
        for n in range(2, 6):
            for l in range(0, 7):
                lam = Fraction(5, 3)
                op = juhl_build(ParamPair(lam=lam, nu=lam + 2 * l, n=n))
                mu = lam - Fraction(n - 1, 2)
                assert op.symbol_table() == inflated_gegenbauer(l, mu).coeffs


class TestKernel:
    def test_singular_set_raises(self):
        params = ParamPair(lam=3.0, nu=1.0, n=2)
        with pytest.raises(DomainError):
            akernel_eval(params, [1.0], 0.0)
        with pytest.raises(DomainError):
            akernel_eval(params, [0.0], 0.0)

    def test_normalization_zero_at_lam_equals_nu(self):
        params = ParamPair(lam=1.5, nu=1.5, n=2)
        assert akernel_eval(params, [1.0], 1.0) == 0

    def test_direct_substitution(self):
        lam, nu, n = 3.0, 1.0, 3
        params = ParamPair(lam=lam, nu=nu, n=n)
        pref = recip_gamma((lam + nu - n + 1) / 2) * recip_gamma((lam - nu) / 2)
        assert akernel_eval(params, [1.0, 0.0], 1.0) == pytest.approx(
            pref * 2.0 ** (-nu), rel=1e-13)

    def test_positive_in_convergent_range(self, rng):
        params = ParamPair(lam=3.2, nu=1.1, n=2)
        pref = (recip_gamma((3.2 + 1.1 - 1) / 2) * recip_gamma((3.2 - 1.1) / 2)).real
        for _ in range(20):
            x = rng.normal(size=1)
            xn = rng.normal() or 0.5
            val = akernel_eval(params, x, xn)
            assert val.imag == pytest.approx(0.0, abs=1e-15)
            assert val.real * pref > 0  # unnormalized kernel is positive


class TestSymbols:
    def test_asymbol_needs_region(self):
        params = ParamPair(lam=1.0, nu=0.5, n=2)
        with pytest.raises(RegionError):
            asymbol_eval(params, [0.5], 1.0)

    def test_asymbol_at_equal_parameters(self):
        # terminating series: the value collapses to pi^((n-1)/2) / Gamma(nu)
        for n in (2, 3, 4):
            for nu in (0.7, 1.3 + 0.4j):
                params = ParamPair(lam=nu, nu=nu, n=n)
                got = asymbol_eval(params, [1.0] * (n - 1), 0.5)
                expect = math.pi ** ((n - 1) / 2) * recip_gamma(nu)
                assert got == pytest.approx(expect, rel=1e-13)

    def test_asymbol_at_zero_normal_frequency(self):
        lam, nu, n = 0.8 - 0.1j, -0.4 + 0.2j, 3
        params = ParamPair(lam=lam, nu=nu, n=n)
        zp = np.array([1.2, -0.5])
        s = np.linalg.norm(zp)
        got = asymbol_eval(params, zp, 0.0)
        expect = math.pi ** ((n - 1) / 2) * cmath.exp(0.5j * math.pi * (nu - lam)) \
            * s ** (nu - lam) * recip_gamma(nu) / 2.0 ** (nu - lam)
        assert got == pytest.approx(expect, rel=1e-13)

    def test_asymbol_homogeneity(self):
        params = ParamPair(lam=0.7 + 0.2j, nu=-1.3 + 0.5j, n=3)
        zp, zn = np.array([1.1, -0.4]), 0.5
        base = asymbol_eval(params, zp, zn)
        for c in (0.5, 2.0, 3.7):
            lhs = asymbol_eval(params, c * zp, c * zn)
            rhs = c ** (params.nu - params.lam) * base
            assert abs(lhs - rhs) / abs(lhs) <= 1e-12

    def test_csymbol_low_degrees(self):
        n = 2
        p0 = ParamPair(lam=0.3, nu=0.3, n=n)
        assert csymbol_eval(p0, [2.0], 1.5) == 1.0
        lam = 0.0
        p1 = ParamPair(lam=lam, nu=lam + 2, n=n)
        mu = lam - (n - 1) / 2
        zp, zn = [1.0], 0.0
        assert csymbol_eval(p1, zp, zn) == pytest.approx(
            2 * (mu + 1) * zn**2 + 1.0, rel=1e-13)

    def test_ks_symbol_reference_point(self):
        for n in (2, 3):
            got = ks_symbol_eval(n / 2, n, [1.0] * n)
            assert got == pytest.approx(math.pi ** (n / 2) / gamma(n / 2), rel=1e-13)

    def test_ks_symbol_homogeneity(self):
        lam, n = 0.8 - 0.3j, 2
        z = np.array([1.0, 0.4])
        base = ks_symbol_eval(lam, n, z)
        for c in (0.5, 3.0):
            assert ks_symbol_eval(lam, n, c * z) == pytest.approx(
                c ** (2 * lam - n) * base, rel=1e-12)

    def test_ks_symbol_null_point(self):
        with pytest.raises(DomainError):
            ks_symbol_eval(1.0, 2, [0.0, 0.0])


class TestResidue:
    def test_constant_l0(self):
        assert residue_constant(0, 3, 2.0) == pytest.approx(math.pi / gamma(2.0), rel=1e-13)

    def test_constant_examples(self):
        assert residue_constant(1, 3, 2.0) == pytest.approx(-math.pi / 4, rel=1e-13)
        for nu in (0, -1, -3):
            assert residue_constant(2, 3, nu) == 0

    def test_l0_collapse_is_exact(self, rng):
        grid = symbol_grid(rng, 3, 20)
        assert residue_check(0, 3, 0.45, grid) <= 1e-14

    def test_sweep(self, rng):
        worst = 0.0
        for l in range(0, 5):
            for n in range(2, 6):
                for _ in range(10):
                    lam = rng.uniform(-3, 3)
                    grid = symbol_grid(rng, n, 50)
                    worst = max(worst, residue_check(l, n, lam, grid))
        assert worst <= 1e-10

    def test_phase_consistency_at_residue_points(self):
        for l in range(5):
            assert cmath.exp(0.5j * math.pi * 2 * l) == pytest.approx((-1) ** l, rel=1e-15)

    def test_even_lattice_vanishing(self, rng):
        for lam, nu in [(0, 0), (-2, 0), (-2, -2), (-4, -2), (-6, 0)]:
            params = ParamPair(lam=lam, nu=nu, n=3)
            for zp, zn in symbol_grid(rng, 3, 20):
                assert abs(asymbol_eval(params, zp, zn)) <= 1e-12


class TestFunctionalEquations:
    def test_degenerate_consistency_at_zero_normal_frequency(self, rng):
        # both sides reduce to powers and Gamma factors; series factor is 1
        lam, nu, n = 1.1 + 0.3j, -0.7 - 0.2j, 3
        params = ParamPair(lam=lam, nu=nu, n=n)
        grid = [(np.array([1.3, 0.4]), 0.0), (np.array([0.2, -0.9]), 0.0)]
        assert functional_eq_check("TA", params, grid) <= 1e-12
        assert functional_eq_check("AT", params, grid) <= 1e-12

    @pytest.mark.parametrize("kind", ["TA", "AT"])
    def test_sweep(self, kind, rng):
        worst = 0.0
        for n in (2, 3, 4):
            for _ in range(10):
                lam = complex(rng.uniform(-2.5, 2.5), rng.uniform(-0.8, 0.8))
                nu = complex(rng.uniform(-2.5, 2.5), rng.uniform(-0.8, 0.8))
                params = ParamPair(lam=lam, nu=nu, n=n)
                grid = symbol_grid(rng, n, 50)
                worst = max(worst, functional_eq_check(kind, params, grid))
        assert worst <= 1e-10
