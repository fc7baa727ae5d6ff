"""The Weyl algebra in n variables with exact coefficients.

Operators are stored in normal order (all multiplications left of all
derivatives), which makes equality of operators decidable: two operators
are equal iff their term maps coincide.  The dual-variable transform
``weyl_hat`` is the algebra isomorphism generated by

    d/dz_j  |->  -zeta_j,        z_j  |->  d/dzeta_j,

returned again in normal order on the dual variables.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, Tuple

Multi = Tuple[int, ...]
TermKey = Tuple[Multi, Multi]


class WeylOperator:
    """Normal-ordered finite sum  sum c_{alpha,beta} z^alpha d^beta."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Dict[TermKey, object] = None):
        self.n = n
        clean: Dict[TermKey, object] = {}
        for (alpha, beta), c in (terms or {}).items():
            if len(alpha) != n or len(beta) != n:
                raise ValueError("multi-index length mismatch")
            if c != 0:
                clean[(tuple(alpha), tuple(beta))] = c
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "WeylOperator":
        return cls(n, {})

    @classmethod
    def identity(cls, n: int) -> "WeylOperator":
        z = tuple([0] * n)
        return cls(n, {(z, z): Fraction(1)})

    @classmethod
    def z(cls, j: int, n: int) -> "WeylOperator":
        alpha = [0] * n
        alpha[j] = 1
        return cls(n, {(tuple(alpha), tuple([0] * n)): Fraction(1)})

    @classmethod
    def d(cls, j: int, n: int) -> "WeylOperator":
        beta = [0] * n
        beta[j] = 1
        return cls(n, {(tuple([0] * n), tuple(beta)): Fraction(1)})

    @classmethod
    def laplacian(cls, n: int) -> "WeylOperator":
        terms = {}
        for j in range(n):
            beta = [0] * n
            beta[j] = 2
            terms[(tuple([0] * n), tuple(beta))] = Fraction(1)
        return cls(n, terms)

    # -- ring structure ----------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, WeylOperator) and self.n == other.n and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        out = dict(self.terms)
        for key, c in other.terms.items():
            acc = out.get(key, 0) + c
            if acc != 0:
                out[key] = acc
            else:
                out.pop(key, None)
        return WeylOperator(self.n, out)

    def __neg__(self):
        return WeylOperator(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "WeylOperator":
        if c == 0:
            return WeylOperator.zero(self.n)
        return WeylOperator(self.n, {k: c * v for k, v in self.terms.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def order(self) -> int:
        return max((sum(beta) for (_, beta) in self.terms), default=0)

    def __repr__(self):
        if not self.terms:
            return "WeylOperator(0)"
        bits = []
        for (alpha, beta) in sorted(self.terms):
            c = self.terms[(alpha, beta)]
            factors = [f"z{i}^{e}" if e > 1 else f"z{i}" for i, e in enumerate(alpha) if e]
            factors += [f"D{i}^{e}" if e > 1 else f"D{i}" for i, e in enumerate(beta) if e]
            body = "*".join(factors)
            bits.append(f"({c})" + ("*" + body if body else ""))
        return "WeylOperator(" + " + ".join(bits) + ")"


def _reorder_d_z(beta: Multi, gamma: Multi):
    """Rewrite d^beta z^gamma as  sum_k C(beta,k) C(gamma,k) k!  z^(gamma-k) d^(beta-k).

    Per-variable, since distinct variables commute.  Yields (coeff, alpha, beta').
    """
    n = len(beta)
    ranges = [range(min(b, g) + 1) for b, g in zip(beta, gamma)]

    def rec(i, coeff, zs, ds):
        if i == n:
            yield coeff, tuple(zs), tuple(ds)
            return
        for k in ranges[i]:
            c = (
                coeff
                * math.comb(beta[i], k)
                * math.comb(gamma[i], k)
                * math.factorial(k)
            )
            yield from rec(i + 1, c, zs + [gamma[i] - k], ds + [beta[i] - k])

    yield from rec(0, Fraction(1), [], [])


def weyl_compose(s: WeylOperator, t: WeylOperator) -> WeylOperator:
    """Normal-ordered product s(t(.)): apply t first, then s."""
    if s.n != t.n:
        raise ValueError("operator variable counts differ")
    n = s.n
    out: Dict[TermKey, object] = {}
    for (a1, b1), c1 in s.terms.items():
        for (a2, b2), c2 in t.terms.items():
            base = c1 * c2
            for k, zmid, dmid in _reorder_d_z(b1, a2):
                alpha = tuple(x + y for x, y in zip(a1, zmid))
                beta = tuple(x + y for x, y in zip(dmid, b2))
                acc = out.get((alpha, beta), 0) + base * k
                if acc != 0:
                    out[(alpha, beta)] = acc
                else:
                    out.pop((alpha, beta), None)
    return WeylOperator(n, out)


def weyl_hat(s: WeylOperator) -> WeylOperator:
    """Dual-variable transform: z^alpha d^beta  |->  (-1)^|beta| d^alpha zeta^beta,

    normal-ordered on the dual side via the same commutation rule.
    """
    n = s.n
    out: Dict[TermKey, object] = {}
    for (alpha, beta), c in s.terms.items():
        sign = -1 if sum(beta) % 2 else 1
        base = c * sign
        for k, zmid, dmid in _reorder_d_z(alpha, beta):
            acc = out.get((zmid, dmid), 0) + base * k
            if acc != 0:
                out[(zmid, dmid)] = acc
            else:
                out.pop((zmid, dmid), None)
    return WeylOperator(n, out)


def weyl_apply(s: WeylOperator, f):
    """Apply the operator to anything with .diff(j) and .mul_var(j).

    Works for ExactPoly and GaussPolyFn alike; the result stays in the
    argument's class.
    """
    total = None
    for (alpha, beta), c in s.terms.items():
        g = f
        for j, e in enumerate(beta):
            for _ in range(e):
                g = g.diff(j)
        for j, e in enumerate(alpha):
            for _ in range(e):
                g = g.mul_var(j)
        g = g.scale(c) if hasattr(g, "scale") else c * g
        total = g if total is None else total + g
    if total is None:
        return f.scale(0) if hasattr(f, "scale") else 0 * f
    return total
