"""The operator catalog on the flat chart of the sphere pair.

For a parameter pair (lam, nu) acting between functions on R^n and
R^(n-1):

* ``juhl_build`` / ``juhl_apply`` -- the differential operator

      sum_{j=0..l}  b_j  Lap'^j (d/dx_n)^(2l-2j) (.)|_{x_n=0},
      b_j = 2^(2l-2j) prod_{i=1..l-j} ((lam+nu-n-1)/2 + i) / (j! (2l-2j)!),

  defined exactly when nu - lam = 2l is a non-negative even integer; its
  dual symbol is the inflated Gegenbauer table evaluated at
  (-|zeta'|^2, zeta_n) with mu = lam - (n-1)/2.

* ``akernel_eval`` / ``aop_apply`` -- the Gamma-normalized integral kernel

      |x_n|^(lam+nu-n) (|x'|^2 + x_n^2)^(-nu)
        / ( Gamma((lam+nu-n+1)/2) Gamma((lam-nu)/2) ),

  integrable for Re(lam - nu) > 0 and Re(lam + nu) > n - 1 (the
  convergent range); outside it the family lives in its symbol.

* ``asymbol_eval`` / ``csymbol_eval`` / ``ks_symbol_eval`` -- closed-form
  exponential-kernel transforms of the three kernels, carrying the whole
  meromorphic continuation through 1/Gamma factors.

* ``residue_constant`` / ``residue_check`` -- at nu - lam = 2l the A-symbol
  collapses onto the differential symbol with constant
  (-1)^l l! pi^((n-1)/2) / (2^(2l) Gamma(nu)).

* ``functional_eq_check`` -- the two symbol-product identities tying the
  A-family to the Riesz convolutions on R^(n-1) and R^n.

* ``covariance_check`` -- the weighted-action intertwining property,
  exercised generator by generator.

Sign conventions: all complex powers are principal powers of positive
reals; phases enter only through the explicit exp(i pi/2 * (...)) factors
of the symbol formulas.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

import numpy as np

from . import confgeom
from .gausspoly import GaussPolyFn
from .numdiff import mixed_partial_richardson
from .quadrature import Budget, complex_nested_quad
from .specfun import inflated_gegenbauer, hyp2f1, recip_gamma


class ParityError(ValueError):
    """nu - lam is not a non-negative even integer."""


class RangeError(ValueError):
    """Parameters outside the convergent range of the integral operator."""


class RegionError(ValueError):
    """Dual point outside the region where the symbol formula is valid."""


class DomainError(ValueError):
    """Kernel evaluated on its singular set."""


class WindowError(ValueError):
    """Riesz convolution parameter outside the local-integrability window."""


@dataclass(frozen=True)
class ParamPair:
    """The parameter pair (lam, nu) over sphere dimension n >= 2."""

    lam: complex
    nu: complex
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("sphere dimension must be >= 2")

    def in_convergent_range(self) -> bool:
        lam, nu = complex(self.lam), complex(self.nu)
        return (lam - nu).real > 0 and (lam + nu).real > self.n - 1

    def residue_level(self) -> Optional[int]:
        """l with nu - lam = 2l, or None when the parity condition fails."""
        diff = complex(self.nu) - complex(self.lam)
        if abs(diff.imag) > 1e-9:
            return None
        half = diff.real / 2.0
        l = round(half)
        if l < 0 or abs(half - l) > 1e-9:
            return None
        return int(l)

    def is_residue_point(self) -> bool:
        return self.residue_level() is not None

    def in_leven(self) -> bool:
        lam, nu = complex(self.lam), complex(self.nu)
        if abs(lam.imag) > 1e-12 or abs(nu.imag) > 1e-12:
            return False
        li, ni = round(lam.real), round(nu.real)
        if abs(lam.real - li) > 1e-12 or abs(nu.real - ni) > 1e-12:
            return False
        return li <= ni <= 0 and (li - ni) % 2 == 0


# -- the differential operator family -----------------------------------------


@dataclass(frozen=True)
class JuhlOperator:
    n: int
    lam: object
    nu: object
    l: int
    coeffs: Tuple  # b_j for the term Lap'^j d_n^(2l-2j), j = 0..l

    def symbol_table(self) -> Tuple:
        """Coefficients of v^j t^(2l-2j) of the dual symbol at v = -|zeta'|^2."""
        return tuple((-1) ** j * b for j, b in enumerate(self.coeffs))


def _exact_pair(lam, nu) -> bool:
    return all(
        isinstance(v, (int, Fraction)) and not isinstance(v, bool) for v in (lam, nu)
    )


def juhl_build(params: ParamPair) -> JuhlOperator:
    """Coefficient table of the differential operator; exact for rational parameters."""
    lam, nu, n = params.lam, params.nu, params.n
    exact = _exact_pair(lam, nu)
    if exact:
        diff = Fraction(nu) - Fraction(lam)
        if diff < 0 or diff % 2 != 0:
            raise ParityError(f"nu - lam = {diff} is not in 2N")
        l = int(diff // 2)
    else:
        l = params.residue_level()
        if l is None:
            raise ParityError(f"nu - lam = {complex(nu) - complex(lam)} is not in 2N")
    coeffs = []
    for j in range(l + 1):
        if exact:
            prod = Fraction(1)
            base = Fraction(Fraction(lam) + Fraction(nu) - n - 1, 2)
        else:
            prod = 1.0 + 0.0j
            base = (complex(lam) + complex(nu) - n - 1) / 2.0
        for i in range(1, l - j + 1):
            prod = prod * (base + i)
        denom = math.factorial(j) * math.factorial(2 * l - 2 * j)
        if exact:
            coeffs.append(Fraction(2 ** (2 * l - 2 * j), denom) * prod)
        else:
            coeffs.append(2.0 ** (2 * l - 2 * j) / denom * prod)
    return JuhlOperator(n=n, lam=lam, nu=nu, l=l, coeffs=tuple(coeffs))


def _tangential_laplacian(f: GaussPolyFn) -> GaussPolyFn:
    out = GaussPolyFn.zero(f.n)
    for i in range(f.n - 1):
        out = out + f.diff(i).diff(i)
    return out


def juhl_apply(op: JuhlOperator, f: GaussPolyFn) -> GaussPolyFn:
    """Exact symbolic differentiation, then restriction to x_n = 0."""
    if f.n != op.n:
        raise ValueError("dimension mismatch")
    total = GaussPolyFn.zero(op.n - 1)
    for j, b in enumerate(op.coeffs):
        g = f
        for _ in range(2 * op.l - 2 * j):
            g = g.diff(op.n - 1)
        for _ in range(j):
            g = _tangential_laplacian(g)
        total = total + g.restrict_last().scale(b)
    return total


def juhl_apply_numeric(op: JuhlOperator, f, xprime, h: float = 0.08) -> complex:
    """The same operator on a merely evaluable function, by high-order stencils.

    Expands Lap'^j into mixed partials; used for pullbacks that leave the
    Gaussian class (inversion covariance).
    """
    n = op.n
    point = list(np.asarray(xprime, dtype=float)) + [0.0]
    total = 0.0 + 0.0j
    for j, b in enumerate(op.coeffs):
        for combo, mult in _laplacian_multinomial(n - 1, j):
            orders = [2 * c for c in combo] + [2 * op.l - 2 * j]
            val = mixed_partial_richardson(f, point, orders, h=h)
            total += complex(b) * mult * val
    return total


def _laplacian_multinomial(m: int, j: int):
    """(sum_{i<m} d_i^2)^j as [(exponents, multinomial coefficient)]."""
    if j == 0:
        yield tuple([0] * m), 1
        return
    def rec(i, left, combo):
        if i == m - 1:
            yield tuple(combo + [left])
            return
        for k in range(left + 1):
            yield from rec(i + 1, left - k, combo + [k])
    for combo in rec(0, j, []):
        mult = math.factorial(j)
        for c in combo:
            mult //= math.factorial(c)
        yield combo, mult


# -- kernels -------------------------------------------------------------------


def akernel_eval(params: ParamPair, xprime, xn: float) -> complex:
    """Pointwise value of the normalized integral kernel off its singular set."""
    xprime = np.asarray(xprime, dtype=float)
    if xn == 0.0:
        raise DomainError("kernel is singular on the hyperplane x_n = 0")
    r2 = float(xprime @ xprime) + xn * xn
    if r2 == 0.0:
        raise DomainError("kernel is singular at the origin")
    lam, nu, n = complex(params.lam), complex(params.nu), params.n
    norm = recip_gamma((lam + nu - n + 1) / 2) * recip_gamma((lam - nu) / 2)
    if norm == 0:
        return 0.0 + 0.0j
    return norm * abs(xn) ** (lam + nu - n) * r2 ** (-nu)


def _compile_gausspoly(f: GaussPolyFn):
    """Flatten a GaussPolyFn into plain-float term data for tight loops."""
    data = []
    is_real = True
    for t in f.terms:
        poly = []
        for mono, c in t.poly:
            c = complex(c)
            if c.imag != 0.0:
                is_real = False
            poly.append((mono, c))
        data.append((t.width, t.center, poly))
    return data, is_real


def _fast_eval(data, y) -> complex:
    total = 0.0 + 0.0j
    for a, center, poly in data:
        s = 0.0
        for ci, yi in zip(center, y):
            d = yi - ci
            s += d * d
        e = math.exp(-a * s)
        if e == 0.0:
            continue
        p = 0.0 + 0.0j
        for mono, c in poly:
            v = c
            for yi, ei in zip(y, mono):
                for _ in range(ei):
                    v = v * yi
            p += v
        total += p * e
    return total


def aop_apply(
    params: ParamPair,
    f: GaussPolyFn,
    xprime,
    budget: Optional[Budget] = None,
    tol_factor: float = 1e-6,
) -> complex:
    """Integral operator in the convergent range, by adaptive quadrature.

    Integrates f(y) k(x' - y', -y_n) over R^n with subdivision aligned at
    the singular hyperplane y_n = 0 and the singular point y' = x'.
    """
    if not params.in_convergent_range():
        raise RangeError(f"({params.lam}, {params.nu}) outside the convergent range")
    n = params.n
    if f.n != n:
        raise ValueError("dimension mismatch")
    budget = budget or Budget()
    xprime = [float(v) for v in np.atleast_1d(np.asarray(xprime, dtype=float))]
    ranges = _gaussian_support_box(f)
    points = [[xprime[j]] for j in range(n - 1)] + [[0.0]]
    epsabs = tol_factor * f.scale_estimate()

    lam, nu = complex(params.lam), complex(params.nu)
    norm = recip_gamma((lam + nu - n + 1) / 2) * recip_gamma((lam - nu) / 2)
    if norm == 0:
        return 0.0 + 0.0j
    p = lam + nu - n
    data, f_real = _compile_gausspoly(f)
    params_real = lam.imag == 0.0 and nu.imag == 0.0
    if params_real:
        norm_r, p_r, nu_r = norm.real, p.real, nu.real

        def integrand_real(y):
            xn = y[-1]
            if xn == 0.0:
                return 0.0
            fy = _fast_eval(data, y)
            if fy == 0.0:
                return 0.0
            r2 = xn * xn
            for xj, yj in zip(xprime, y):
                d = xj - yj
                r2 += d * d
            k = norm_r * abs(xn) ** p_r * r2 ** (-nu_r)
            return fy.real * k if f_real else (fy * k)

        if f_real:
            from .quadrature import nested_quad

            return complex(nested_quad(integrand_real, ranges, points, budget, epsabs))
        return complex_nested_quad(integrand_real, ranges, points, budget, epsabs)

    def integrand(y) -> complex:
        xn = y[-1]
        if xn == 0.0:
            return 0.0 + 0.0j
        fy = _fast_eval(data, y)
        if fy == 0.0:
            return 0.0 + 0.0j
        r2 = xn * xn
        for xj, yj in zip(xprime, y):
            d = xj - yj
            r2 += d * d
        return fy * norm * abs(xn) ** p * r2 ** (-nu)

    return complex_nested_quad(integrand, ranges, points, budget, epsabs)


def _gaussian_support_box(f: GaussPolyFn, tail: float = 45.0):
    los = [math.inf] * f.n
    his = [-math.inf] * f.n
    for t in f.terms:
        if t.width <= 0:
            raise ValueError("support box requires decaying terms")
        radius = math.sqrt(tail / t.width)
        for i, c in enumerate(t.center):
            los[i] = min(los[i], c - radius)
            his[i] = max(his[i], c + radius)
    if not f.terms:
        return [[-1.0, 1.0]] * f.n
    return [[lo, hi] for lo, hi in zip(los, his)]


def riesz_apply(
    lam: complex,
    n: int,
    f: GaussPolyFn,
    x,
    budget: Optional[Budget] = None,
    tol_factor: float = 1e-6,
) -> complex:
    """Convolution  1/Gamma(lam + n/2) * int |x-y|^(2 lam) f(y) dy.

    Needs Re lam > -n/2 for local integrability of the kernel.
    """
    lam = complex(lam)
    if lam.real <= -n / 2.0:
        raise WindowError(f"Re lam = {lam.real} outside the window Re lam > -n/2")
    if f.n != n:
        raise ValueError("dimension mismatch")
    budget = budget or Budget()
    x = [float(v) for v in np.atleast_1d(np.asarray(x, dtype=float))]
    ranges = _gaussian_support_box(f)
    # widen so the singular point stays interior even when x leaves the box
    for j in range(n):
        ranges[j][0] = min(ranges[j][0], x[j] - 1.0)
        ranges[j][1] = max(ranges[j][1], x[j] + 1.0)
    points = [[x[j]] for j in range(n)]
    epsabs = tol_factor * f.scale_estimate()
    norm = recip_gamma(lam + n / 2.0)
    data, f_real = _compile_gausspoly(f)

    if lam.imag == 0.0 and f_real:
        lam_r = lam.real

        def integrand_real(y):
            r2 = 0.0
            for xj, yj in zip(x, y):
                d = xj - yj
                r2 += d * d
            if r2 == 0.0:
                return 0.0
            return _fast_eval(data, y).real * r2**lam_r

        from .quadrature import nested_quad

        return norm * nested_quad(integrand_real, ranges, points, budget, epsabs)

    def integrand(y) -> complex:
        r2 = 0.0
        for xj, yj in zip(x, y):
            d = xj - yj
            r2 += d * d
        if r2 == 0.0:
            return 0.0 + 0.0j
        return _fast_eval(data, y) * r2**lam

    return norm * complex_nested_quad(integrand, ranges, points, budget, epsabs)


# -- symbols -------------------------------------------------------------------


def asymbol_eval(params: ParamPair, zeta_prime, zeta_n: float) -> complex:
    """Closed form of the transformed integral kernel on |zeta'| > |zeta_n|."""
    zeta_prime = np.asarray(zeta_prime, dtype=float)
    s = float(np.linalg.norm(zeta_prime))
    if s <= abs(zeta_n):
        raise RegionError("symbol formula requires |zeta'| > |zeta_n|")
    lam, nu, n = complex(params.lam), complex(params.nu), params.n
    z = -(zeta_n * zeta_n) / (s * s)
    return (
        math.pi ** ((n - 1) / 2)
        * cmath.exp(0.5j * math.pi * (nu - lam))
        * s ** (nu - lam)
        * recip_gamma(nu)
        * 2.0 ** (lam - nu)
        * hyp2f1((lam - nu) / 2, (lam + nu + 1 - n) / 2, 0.5, z)
    )


def asymbol_fr(params: ParamPair, xi_prime, xi_n: float) -> complex:
    """The oscillatory-kernel transform at real xi: the symbol through zeta = -i xi.

    Continuing |zeta| along e^{-i theta} xi to theta = pi/2 turns
    |zeta|^(nu-lam) into e^{-i pi (nu-lam)/2} |xi|^(nu-lam), cancelling the
    explicit phase: the result is the same formula without the phase factor.
    """
    lam, nu = complex(params.lam), complex(params.nu)
    return cmath.exp(-0.5j * math.pi * (nu - lam)) * asymbol_eval(params, xi_prime, xi_n)


def csymbol_eval(params: ParamPair, zeta_prime, zeta_n: float) -> complex:
    """Dual symbol of the differential operator: the inflated Gegenbauer table
    at (-|zeta'|^2, zeta_n) with mu = lam - (n-1)/2."""
    l = params.residue_level()
    if l is None:
        raise ParityError(f"nu - lam = {params.nu - params.lam} is not in 2N")
    zeta_prime = np.asarray(zeta_prime, dtype=float)
    s2 = float(zeta_prime @ zeta_prime)
    mu = complex(params.lam) - (params.n - 1) / 2.0
    return complex(inflated_gegenbauer(l, mu).eval(-s2, complex(zeta_n)))


def ks_symbol_eval(lam: complex, n: int, zeta) -> complex:
    """Transform of the normalized Riesz family: phase * pi^(n/2) 2^(n-2 lam)
    / Gamma(lam) * (sum zeta_i^2)^(lam - n/2), off the null set."""
    zeta = np.asarray(zeta, dtype=float)
    q = float(zeta @ zeta)
    if q == 0.0:
        raise DomainError("symbol is singular on the null set")
    lam = complex(lam)
    return (
        cmath.exp(0.5j * math.pi * (2 * lam - n))
        * math.pi ** (n / 2)
        * 2.0 ** (n - 2 * lam)
        * recip_gamma(lam)
        * q ** (lam - n / 2.0)
    )


def ks_symbol_fr(lam: complex, n: int, xi) -> complex:
    """Riesz symbol through zeta = -i xi: the phase cancels, leaving
    pi^(n/2) 2^(n-2 lam) / Gamma(lam) * |xi|^(2 lam - n)."""
    xi = np.asarray(xi, dtype=float)
    q = float(xi @ xi)
    if q == 0.0:
        raise DomainError("symbol is singular on the null set")
    lam = complex(lam)
    return math.pi ** (n / 2) * 2.0 ** (n - 2 * lam) * recip_gamma(lam) * q ** (lam - n / 2.0)


def fr_akernel_numeric(
    params: ParamPair, xi1: float, xi_n: float, budget: Optional[Budget] = None
) -> float:
    """Direct oscillatory-quadrature transform of the normalized A-kernel, n = 2.

    The kernel is even in each variable, so this is a double cosine
    integral; it converges only conditionally (the kernel is not
    integrable at infinity anywhere in the convergent range), which the
    semi-infinite Fourier rules are built for.  Cross-checks
    ``asymbol_fr``.
    """
    if params.n != 2:
        raise ValueError("direct kernel transform is implemented for n = 2")
    if not params.in_convergent_range():
        raise RangeError("direct kernel transform needs the convergent range")
    lam, nu = complex(params.lam), complex(params.nu)
    if abs(lam.imag) > 0 or abs(nu.imag) > 0:
        raise ValueError("direct kernel transform expects real parameters")
    lam, nu = lam.real, nu.real
    budget = budget or Budget()
    p = lam + nu - 2.0
    norm = (recip_gamma((lam + nu - 1) / 2) * recip_gamma((lam - nu) / 2)).real

    def kernel(x: float, y: float) -> float:
        return y**p * (x * x + y * y) ** (-nu)

    # the y-marginal grows like y^p before the e^(-y|xi1|) decay kicks in;
    # keep the oscillatory tail rule past the peak
    split = max(2.0, (p + 25.0) / abs(xi1))
    from .quadrature import fourier_cos2d

    return norm * fourier_cos2d(kernel, xi1, xi_n, budget, split=split)


def fr_riesz_numeric(lam: float, xi, budget: Optional[Budget] = None) -> float:
    """Direct transform of the kernel |x|^(2 lam) / Gamma(lam + 1) on R^2.

    Conditionally convergent for lam in (-1, -1/4); the closed form it
    checks is ``ks_symbol_fr(-lam, 2, xi)``: the normalized Riesz family is
    parametrized so that its transform flips the sign of the parameter.
    """
    lam = float(lam)
    if not (-1.0 < lam < -0.25):
        raise WindowError("direct Riesz transform needs lam in (-1, -1/4)")
    budget = budget or Budget()
    xi = np.asarray(xi, dtype=float)
    norm = recip_gamma(lam + 1.0).real

    def kernel(x: float, y: float) -> float:
        return (x * x + y * y) ** lam

    from .quadrature import fourier_cos2d

    return norm * fourier_cos2d(kernel, xi[0], xi[1], budget, split=2.0)


def residue_constant(l: int, n: int, nu: complex) -> complex:
    """(-1)^l l! pi^((n-1)/2) 2^(-2l) / Gamma(nu)."""
    return (
        (-1) ** l
        * math.factorial(l)
        * math.pi ** ((n - 1) / 2)
        * 2.0 ** (-2 * l)
        * recip_gamma(complex(nu))
    )


# -- identity sweeps ------------------------------------------------------------


def symbol_grid(rng: np.random.Generator, n: int, count: int, margin: float = 0.85):
    """Dual-point samples with |zeta_n| <= margin |zeta'|, bounded away from 0."""
    out = []
    for _ in range(count):
        zp = rng.normal(size=n - 1)
        norm = np.linalg.norm(zp)
        if norm < 1e-6:
            zp = np.ones(n - 1)
            norm = np.linalg.norm(zp)
        zp = zp / norm * rng.uniform(0.5, 2.0)
        zn = rng.uniform(-margin, margin) * np.linalg.norm(zp)
        out.append((zp, float(zn)))
    return out


def _pair_error(lhs: complex, rhs: complex) -> float:
    return abs(lhs - rhs) / (1.0 + abs(lhs))


def residue_check(l: int, n: int, lam: complex, grid) -> float:
    """max over the grid of the normalized defect of
    asymbol = residue_constant * csymbol  at nu = lam + 2l."""
    nu = complex(lam) + 2 * l
    params = ParamPair(lam=complex(lam), nu=nu, n=n)
    const = residue_constant(l, n, nu)
    worst = 0.0
    for zp, zn in grid:
        lhs = asymbol_eval(params, zp, zn)
        rhs = const * csymbol_eval(params, zp, zn)
        worst = max(worst, _pair_error(lhs, rhs))
    return worst


def functional_eq_check(kind: str, params: ParamPair, grid) -> float:
    """Symbol-product functional equations.

    kind 'TA':  ks-symbol over m = n-1 at zeta', with parameter m - nu,
                times asymbol(lam, nu)  ==  pi^(m/2)/Gamma(nu) * asymbol(lam, m-nu).
    kind 'AT':  asymbol(lam, nu) times ks-symbol over n at (zeta', zeta_n),
                with parameter lam      ==  pi^(n/2)/Gamma(lam) * asymbol(n-lam, nu).
    """
    lam, nu, n = complex(params.lam), complex(params.nu), params.n
    worst = 0.0
    if kind == "TA":
        m = n - 1
        flipped = ParamPair(lam=lam, nu=m - nu, n=n)
        for zp, zn in grid:
            lhs = ks_symbol_eval(m - nu, m, zp) * asymbol_eval(params, zp, zn)
            rhs = math.pi ** (m / 2) * recip_gamma(nu) * asymbol_eval(flipped, zp, zn)
            worst = max(worst, _pair_error(lhs, rhs))
        return worst
    if kind == "AT":
        flipped = ParamPair(lam=n - lam, nu=nu, n=n)
        for zp, zn in grid:
            full = np.concatenate([np.ravel(zp), [zn]])
            lhs = asymbol_eval(params, zp, zn) * ks_symbol_eval(lam, n, full)
            rhs = math.pi ** (n / 2) * recip_gamma(lam) * asymbol_eval(flipped, zp, zn)
            worst = max(worst, _pair_error(lhs, rhs))
        return worst
    raise ValueError("kind must be 'TA' or 'AT'")


# -- covariance -----------------------------------------------------------------


def _target_action(motion: confgeom.FlatMotion, weight: complex, g):
    """Weighted action induced on the hyperplane chart R^(n-1).

    The source generator restricts to the hyperplane: translations drop the
    (zero) normal component, rotations act by the full O(n-1) block, the
    reflection acts trivially, dilations and the inversion keep their
    shape.  g is a GaussPolyFn on the target chart or an evaluable.
    """
    weight = complex(weight)
    symbolic = isinstance(g, GaussPolyFn)
    if motion.kind == "reflection":
        return g
    if motion.kind == "translation":
        b = np.asarray(motion.vector[:-1], dtype=float)
        if symbolic:
            return g.pullback_similarity(b=b)
        return lambda xp: g(np.asarray(xp, dtype=float) + b)
    if motion.kind == "dilation":
        a = motion.ratio
        if symbolic:
            return g.pullback_similarity(r=a).scale(complex(a) ** weight)
        return lambda xp: complex(a) ** weight * g(a * np.asarray(xp, dtype=float))
    if motion.kind == "rotation":
        q = np.asarray(motion.block, dtype=float)
        if symbolic:
            return g.pullback_similarity(q=q)
        return lambda xp: g(q @ np.asarray(xp, dtype=float))
    if motion.kind == "inversion":
        def inverted(xp):
            xp = np.asarray(xp, dtype=float)
            r2 = float(xp @ xp)
            return r2 ** (-weight) * g(xp / r2)
        return inverted
    raise ValueError(f"unknown flat motion kind {motion.kind!r}")


def _source_motion_nd(motion: confgeom.FlatMotion, n: int) -> confgeom.FlatMotion:
    """Lift the generator data to the source chart R^n."""
    if motion.kind == "rotation":
        return motion
    if motion.kind == "translation" and len(motion.vector) == n - 1:
        return confgeom.translation(tuple(motion.vector) + (0.0,))
    return motion


def covariance_check(
    operator: str,
    motion: confgeom.FlatMotion,
    params: ParamPair,
    f: GaussPolyFn,
    sample_points: Sequence,
    budget: Optional[Budget] = None,
    fd_step: float = 0.08,
) -> float:
    """max normalized defect of the intertwining relation at the samples.

    operator 'juhl': exact symbolic on both sides for the affine generators;
    inversion uses Richardson-extrapolated stencils on the source side.
    operator 'aop': quadrature on both sides (convergent range required).
    operator 'riesz': quadrature; the convolution with kernel power 2*lam
    intertwines source weight n + lam with target weight -lam.
    """
    n = params.n
    lam, nu = params.lam, params.nu
    worst = 0.0

    if operator == "juhl":
        op = juhl_build(params)
        base = juhl_apply(op, f)
        if motion.kind == "inversion":
            src = confgeom.pi_flat(motion, complex(lam), lambda x: f(x))
            rhs_fn = _target_action(motion, nu, lambda xp: base(xp))
            for xp in sample_points:
                xp = np.atleast_1d(np.asarray(xp, dtype=float))
                # keep the whole stencil well away from the inversion singularity
                h = min(fd_step, float(np.linalg.norm(xp)) / 16.0)
                lhs = juhl_apply_numeric(op, src, xp, h=h)
                rhs = rhs_fn(xp)
                worst = max(worst, _pair_error(lhs, rhs))
            return worst
        lhs_fn = juhl_apply(op, confgeom.pi_flat(_source_motion_nd(motion, n), complex(lam), f))
        rhs_fn = _target_action(motion, nu, base)
        for xp in sample_points:
            xp = np.atleast_1d(np.asarray(xp, dtype=float))
            worst = max(worst, _pair_error(lhs_fn(xp), rhs_fn(xp)))
        return worst

    if operator == "aop":
        budget = budget or Budget()
        if motion.kind not in ("dilation", "rotation", "reflection", "translation"):
            raise ValueError("integral-operator covariance is checked on affine generators")
        moved = confgeom.pi_flat(_source_motion_nd(motion, n), complex(lam), f)
        rhs_fn = _target_action(motion, nu, lambda xp: aop_apply(params, f, xp, budget=budget))
        for xp in sample_points:
            xp = np.atleast_1d(np.asarray(xp, dtype=float))
            lhs = aop_apply(params, moved, xp, budget=budget)
            worst = max(worst, _pair_error(lhs, rhs_fn(xp)))
        return worst

    if operator == "riesz":
        budget = budget or Budget()
        if motion.kind not in ("rotation", "reflection", "dilation", "translation"):
            raise ValueError("riesz covariance is checked on affine generators")
        source_weight = complex(n + lam)
        target_weight = complex(-lam)
        if motion.kind in ("rotation", "reflection"):
            if motion.kind == "rotation" and np.asarray(motion.block).shape == (n, n):
                q = np.asarray(motion.block, dtype=float)  # radial kernel: full O(n)
            else:
                q = confgeom._full_rotation_matrix(n, motion)
            moved = f.pullback_similarity(q=q)
            for xp in sample_points:
                xp = np.asarray(xp, dtype=float)
                lhs = riesz_apply(lam, n, moved, xp, budget=budget)
                rhs = riesz_apply(lam, n, f, q @ xp, budget=budget)
                worst = max(worst, _pair_error(lhs, rhs))
            return worst
        if motion.kind == "translation":
            b = np.asarray(motion.vector, dtype=float)
            moved = f.pullback_similarity(b=b)
            for xp in sample_points:
                xp = np.asarray(xp, dtype=float)
                lhs = riesz_apply(lam, n, moved, xp, budget=budget)
                rhs = riesz_apply(lam, n, f, xp + b, budget=budget)
                worst = max(worst, _pair_error(lhs, rhs))
            return worst
        a = motion.ratio
        moved = f.pullback_similarity(r=a).scale(complex(a) ** source_weight)
        for xp in sample_points:
            xp = np.asarray(xp, dtype=float)
            lhs = riesz_apply(lam, n, moved, xp, budget=budget)
            rhs = complex(a) ** target_weight * riesz_apply(lam, n, f, a * xp, budget=budget)
            worst = max(worst, _pair_error(lhs, rhs))
        return worst

    raise ValueError("operator must be 'juhl', 'aop', or 'riesz'")
