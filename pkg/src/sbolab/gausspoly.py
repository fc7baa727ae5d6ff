"""Polynomial-times-Gaussian test functions with closed-form calculus.

A ``GaussPolyFn`` is a finite sum of terms  p(x) * exp(-a |x - c|^2)  on R^n.
The class is closed under differentiation, multiplication by polynomials,
similarity pullbacks (rotations, dilations, translations), restriction to a
coordinate hyperplane, and the exponential-kernel transform

    (T f)(zeta) = integral f(x) exp(<x, zeta>) dx,

whose image lives in the same class with negative decay coefficient
(a grows on the dual side: a' = -1/(4a)).  Evaluation accepts complex
points, with |x - c|^2 read as the analytic sum of squares, so the
oscillatory-kernel transform at xi is the same object evaluated at -i*xi.

Polynomial coefficients are floats/complex for numeric pipelines or
Fractions for symbolic ones; the two kinds are never mixed inside a term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Sequence, Tuple

import numpy as np

Monomial = Tuple[int, ...]


class RepresentationError(TypeError):
    """Requested result cannot be represented inside the Gaussian class."""


@dataclass(frozen=True)
class GaussTerm:
    poly: Tuple[Tuple[Monomial, object], ...]  # sorted ((exponents), coeff) pairs
    width: float  # 'a'; positive for decaying terms, negative allowed on dual side
    center: Tuple[float, ...]

    def poly_dict(self) -> Dict[Monomial, object]:
        return dict(self.poly)


def _freeze_poly(d: Dict[Monomial, object]) -> Tuple[Tuple[Monomial, object], ...]:
    return tuple(sorted((k, v) for k, v in d.items() if v != 0))


class GaussPolyFn:
    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Sequence[GaussTerm]):
        self.n = n
        kept = []
        for t in terms:
            if t.width == 0:
                raise ValueError("Gaussian width must be nonzero")
            if len(t.center) != n:
                raise ValueError("center dimension mismatch")
            if t.poly:
                kept.append(t)
        self.terms = tuple(kept)

    # -- constructors ------------------------------------------------------

    @classmethod
    def gaussian(cls, n: int, width: float = 1.0, center=None, coeff=1.0) -> "GaussPolyFn":
        center = tuple([0.0] * n) if center is None else tuple(center)
        mono = tuple([0] * n)
        return cls(n, [GaussTerm(_freeze_poly({mono: coeff}), float(width), center)])

    @classmethod
    def zero(cls, n: int) -> "GaussPolyFn":
        return cls(n, [])

    # -- evaluation --------------------------------------------------------

    def __call__(self, x):
        x = np.asarray(x)
        total = 0.0
        for t in self.terms:
            c = np.asarray(t.center)
            diff = x - c
            expo = -t.width * np.sum(diff * diff)
            val = 0.0
            for mono, coeff in t.poly:
                term = complex(coeff) if isinstance(coeff, (Fraction, int)) else coeff
                for xi, e in zip(x, mono):
                    if e:
                        term = term * xi**e
                val = val + term
            total = total + val * np.exp(expo)
        return total

    # -- linear structure ---------------------------------------------------

    def __add__(self, other: "GaussPolyFn") -> "GaussPolyFn":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        merged: Dict[Tuple[float, Tuple[float, ...]], Dict[Monomial, object]] = {}
        for t in self.terms + other.terms:
            key = (t.width, t.center)
            bucket = merged.setdefault(key, {})
            for mono, coeff in t.poly:
                acc = bucket.get(mono, 0) + coeff
                if acc != 0:
                    bucket[mono] = acc
                else:
                    bucket.pop(mono, None)
        out = [
            GaussTerm(_freeze_poly(poly), width, center)
            for (width, center), poly in merged.items()
            if poly
        ]
        return GaussPolyFn(self.n, out)

    def scale(self, c) -> "GaussPolyFn":
        if c == 0:
            return GaussPolyFn.zero(self.n)
        return GaussPolyFn(
            self.n,
            [
                GaussTerm(
                    _freeze_poly({m: c * v for m, v in t.poly}), t.width, t.center
                )
                for t in self.terms
            ],
        )

    def __sub__(self, other):
        return self + other.scale(-1)

    # -- calculus ------------------------------------------------------------

    def diff(self, j: int) -> "GaussPolyFn":
        """d/dx_j: product rule, exact within the class."""
        out = []
        for t in self.terms:
            poly = t.poly_dict()
            new: Dict[Monomial, object] = {}
            for mono, coeff in poly.items():
                # derivative of the polynomial part
                if mono[j] > 0:
                    m = list(mono)
                    m[j] -= 1
                    _acc(new, tuple(m), coeff * mono[j])
                # chain rule on exp(-a |x-c|^2): factor -2a (x_j - c_j)
                m = list(mono)
                m[j] += 1
                _acc(new, tuple(m), coeff * (-2 * _lift(t.width, coeff)))
                _acc(new, tuple(mono), coeff * (2 * _lift(t.width, coeff) * _lift(t.center[j], coeff)))
            out.append(GaussTerm(_freeze_poly(new), t.width, t.center))
        return GaussPolyFn(self.n, out)

    def mul_var(self, j: int) -> "GaussPolyFn":
        out = []
        for t in self.terms:
            new = {}
            for mono, coeff in t.poly:
                m = list(mono)
                m[j] += 1
                new[tuple(m)] = coeff
            out.append(GaussTerm(_freeze_poly(new), t.width, t.center))
        return GaussPolyFn(self.n, out)

    def mul_poly(self, poly: Dict[Monomial, object]) -> "GaussPolyFn":
        out = []
        for t in self.terms:
            new: Dict[Monomial, object] = {}
            for m1, c1 in t.poly:
                for m2, c2 in poly.items():
                    _acc(new, tuple(a + b for a, b in zip(m1, m2)), c1 * c2)
            out.append(GaussTerm(_freeze_poly(new), t.width, t.center))
        return GaussPolyFn(self.n, out)

    def restrict_last(self) -> "GaussPolyFn":
        """Restriction to the hyperplane x_n = 0, as a function on R^(n-1)."""
        out = []
        for t in self.terms:
            cn = t.center[-1]
            damp = math.exp(-t.width * cn * cn)
            new: Dict[Monomial, object] = {}
            for mono, coeff in t.poly:
                if mono[-1] != 0:
                    continue  # x_n^e vanishes at x_n = 0 for e > 0
                _acc(new, mono[:-1], coeff * damp if damp != 1.0 else coeff)
            if new:
                out.append(GaussTerm(_freeze_poly(new), t.width, t.center[:-1]))
        return GaussPolyFn(self.n - 1, out)

    def pullback_similarity(self, q=None, r: float = 1.0, b=None) -> "GaussPolyFn":
        """Precompose with x |-> r Q x + b for orthogonal Q, r > 0.

        Returns g with g(x) = f(r Q x + b); similarity maps are exactly the
        affine maps that keep the isotropic Gaussian class closed.
        """
        n = self.n
        q = np.eye(n) if q is None else np.asarray(q, dtype=float)
        b = np.zeros(n) if b is None else np.asarray(b, dtype=float)
        if r <= 0:
            raise ValueError("similarity ratio must be positive")
        if not np.allclose(q.T @ q, np.eye(n), atol=1e-12):
            raise ValueError("pullback matrix must be orthogonal")
        rows = [[r * q[i, k] for k in range(n)] for i in range(n)]
        out = []
        for t in self.terms:
            new_center = tuple((q.T @ (np.asarray(t.center) - b)) / r)
            new_width = t.width * r * r
            new: Dict[Monomial, object] = {}
            for mono, coeff in t.poly:
                expanded = {tuple([0] * n): coeff}
                for i, e in enumerate(mono):
                    lin = {tuple([0] * n): b[i]}
                    for k in range(n):
                        if rows[i][k] != 0.0:
                            mk = [0] * n
                            mk[k] = 1
                            lin[tuple(mk)] = rows[i][k]
                    for _ in range(e):
                        expanded = _poly_mul(expanded, lin)
                for m, c in expanded.items():
                    _acc(new, m, c)
            out.append(GaussTerm(_freeze_poly(new), new_width, new_center))
        return GaussPolyFn(n, out)

    # -- transforms -----------------------------------------------------------

    def fc_transform(self) -> "GaussPolyFn":
        """Closed form of  integral f(x) exp(<x, zeta>) dx  as a dual-side object.

        Requires positive widths (convergence); the image has widths
        -1/(4a) < 0 and is meant to be evaluated or differentiated, not
        re-transformed.
        """
        n = self.n
        out = []
        for t in self.terms:
            a = t.width
            if a <= 0:
                raise RepresentationError("transform needs decaying Gaussian terms")
            pref = (math.pi / a) ** (n / 2)
            dual_center = tuple(-2.0 * a * ci for ci in t.center)
            # q(zeta) = pref * sum_alpha p_alpha prod_i E[(c_i + zeta_i/(2a) + W_i)^alpha_i]
            # with W_i the Gaussian moment variable: E[W^k] = (k-1)!! (2a)^(-k/2), even k.
            new: Dict[Monomial, object] = {}
            for mono, coeff in t.poly:
                factor_polys = []
                for i, e in enumerate(mono):
                    factor_polys.append(_shifted_moment_poly(e, t.center[i], a, i, n))
                expanded = {tuple([0] * n): 1.0}
                for fp in factor_polys:
                    expanded = _poly_mul(expanded, fp)
                scale = complex(coeff) if isinstance(coeff, Fraction) else coeff
                for m, c in expanded.items():
                    _acc(new, m, scale * c)
            damp = math.exp(-a * sum(ci * ci for ci in t.center))
            new = {m: pref * damp * c for m, c in new.items()}
            out.append(GaussTerm(_freeze_poly(new), -1.0 / (4.0 * a), dual_center))
        return GaussPolyFn(n, out)

    def eval_complex(self, zeta) -> complex:
        """Evaluate at a complex point, exponent read as -a * sum (z_i - c_i)^2."""
        total = 0.0 + 0.0j
        for t in self.terms:
            expo = 0.0 + 0.0j
            for zi, ci in zip(zeta, t.center):
                d = complex(zi) - ci
                expo += d * d
            val = 0.0 + 0.0j
            for mono, coeff in t.poly:
                term = complex(coeff)
                for zi, e in zip(zeta, mono):
                    if e:
                        term *= complex(zi) ** e
                val += term
            total += val * np.exp(-t.width * expo)
        return total

    def fr_at(self, xi) -> complex:
        """Oscillatory-kernel transform at real xi, via the substitution zeta = -i xi."""
        return self.fc_transform().eval_complex([-1j * v for v in xi])

    def scale_estimate(self) -> float:
        """Crude magnitude scale: sum of |coeff| * Gaussian mass per term."""
        total = 0.0
        for t in self.terms:
            mass = (math.pi / abs(t.width)) ** (self.n / 2)
            total += sum(abs(complex(c)) for _, c in t.poly) * mass
        return max(total, 1e-300)


def _acc(d: Dict[Monomial, object], key: Monomial, val) -> None:
    acc = d.get(key, 0) + val
    if acc != 0:
        d[key] = acc
    else:
        d.pop(key, None)


def _poly_mul(p1: Dict[Monomial, object], p2: Dict[Monomial, object]) -> Dict[Monomial, object]:
    out: Dict[Monomial, object] = {}
    for m1, c1 in p1.items():
        for m2, c2 in p2.items():
            _acc(out, tuple(a + b for a, b in zip(m1, m2)), c1 * c2)
    return out


def _lift(x: float, like) -> object:
    """Keep Fraction pipelines exact when the geometry data is rational."""
    if isinstance(like, Fraction):
        return Fraction(x).limit_denominator(10**12) if not isinstance(x, Fraction) else x
    return x


def _shifted_moment_poly(e: int, c: float, a: float, var: int, n: int) -> Dict[Monomial, object]:
    """E[(c + zeta/(2a) + W)^e] expanded as a polynomial in zeta_var."""
    out: Dict[Monomial, object] = {}
    inv2a = 1.0 / (2.0 * a)
    for m in range(e + 1):  # power of zeta/(2a)
        rest = e - m
        mom = 0.0
        for j in range(0, rest + 1, 2):  # power of W (even moments only)
            mom += (
                math.comb(rest, j)
                * _double_factorial(j - 1)
                * (2.0 * a) ** (-j / 2)
                * c ** (rest - j)
            )
        mono = [0] * n
        mono[var] = m
        _acc(out, tuple(mono), math.comb(e, m) * inv2a**m * mom)
    return out


def _double_factorial(k: int) -> float:
    if k <= 0:
        return 1.0
    out = 1.0
    while k > 1:
        out *= k
        k -= 2
    return out
