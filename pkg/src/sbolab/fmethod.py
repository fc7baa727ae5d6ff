"""Exact polynomial solutions of the symbol annihilation system.

The dual symbols of the differential operator family are characterized as
the polynomials F(zeta) on R^n satisfying three conditions:

  (a) invariance under O(n-1) x O(1) (block rotations of zeta_1..zeta_(n-1)
      and the sign flip of zeta_n),
  (b) homogeneity of degree nu - lam = 2l (the Euler equation),
  (c) annihilation by the light-cone operators
          D_j = nu d/dzeta_j - 1/2 Lap_zeta (zeta_j .),   j = 1..n-1.

Conditions (a) and (b) are imposed structurally: the ansatz space is
spanned by s^j u^(l-j), j = 0..l, with s = zeta_1^2+...+zeta_(n-1)^2 and
u = zeta_n^2.  Condition (c) becomes an exact rational linear system, and
its nullspace is computed in exact arithmetic: ``solve_sol_space`` returns
generators whose coefficient vectors are exact rational multiples of the
differential operator's coefficient table, re-deriving that operator from
the annihilation system alone.

lambda enters the constraint matrix as an exact rational by default; a
formal-parameter mode keeps it symbolic (entries polynomial in lambda) to
exhibit the generic one-dimensionality as an identity rather than at
samples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .exactpoly import ExactPoly, PolyQ, RatFunc, exact_nullspace, polyq_gcd
from .weyl import WeylOperator, weyl_compose, weyl_apply


def fundamental_operator(nu, n: int, j: int) -> WeylOperator:
    """The light-cone operator  nu d_j - 1/2 Lap (zeta_j .), normal-ordered.

    nu may be a Fraction (numeric mode) or a PolyQ (formal mode).
    """
    if not (0 <= j < n - 1):
        raise IndexError(f"fundamental operator index j={j} outside 0..{n - 2}")
    first = WeylOperator.d(j, n).scale(nu)
    second = weyl_compose(WeylOperator.laplacian(n), WeylOperator.z(j, n))
    half = PolyQ.const(Fraction(1, 2)) if isinstance(nu, PolyQ) else Fraction(1, 2)
    return first - second.scale(half)


def flat_picture_operator(nu, n: int, j: int) -> WeylOperator:
    """The multiplication-side operator  nu z_j + 1/2 |z|^2 d_j  whose
    dual-variable transform is ``fundamental_operator(nu, n, j)``."""
    if not (0 <= j < n - 1):
        raise IndexError(f"flat operator index j={j} outside 0..{n - 2}")
    zj = WeylOperator.z(j, n).scale(nu)
    norm2 = WeylOperator.zero(n)
    for i in range(n):
        norm2 = norm2 + weyl_compose(WeylOperator.z(i, n), WeylOperator.z(i, n))
    if isinstance(nu, PolyQ):
        half = PolyQ.const(Fraction(1, 2))
    else:
        half = Fraction(1, 2)
    return zj + weyl_compose(norm2, WeylOperator.d(j, n)).scale(half)


def invariant_basis(n: int, l: int) -> List[ExactPoly]:
    """The monomials s^j u^(l-j), j = 0..l, expanded in the zeta variables."""
    s = ExactPoly.zero(n)
    for i in range(n - 1):
        s = s + ExactPoly.var(n, i) * ExactPoly.var(n, i)
    u = ExactPoly.var(n, n - 1) * ExactPoly.var(n, n - 1)
    return [s.pow(j) * u.pow(l - j) for j in range(l + 1)]


@dataclass(frozen=True)
class SolSystem:
    """The assembled annihilation system for one (n, l, lambda)."""

    n: int
    l: int
    lam: Fraction
    nu: Fraction
    basis: Tuple[ExactPoly, ...]
    operators: Tuple[WeylOperator, ...]
    matrix: Tuple[Tuple[Fraction, ...], ...]


def build_system(n: int, l: int, lam: Fraction) -> SolSystem:
    lam = Fraction(lam)
    nu = lam + 2 * l
    basis = invariant_basis(n, l)
    ops = tuple(fundamental_operator(nu, n, j) for j in range(n - 1))
    rows = {}
    for col, b in enumerate(basis):
        for k, op in enumerate(ops):
            image = weyl_apply(op, b)
            for mono, c in image.terms.items():
                rows.setdefault((k, mono), [Fraction(0)] * len(basis))[col] = c
    matrix = tuple(tuple(r) for r in rows.values())
    return SolSystem(n=n, l=l, lam=lam, nu=nu, basis=tuple(basis), operators=ops, matrix=matrix)


def solve_sol_space(n: int, l: int, lam) -> List[ExactPoly]:
    """Exact basis of the polynomial solution space at nu = lam + 2l.

    Empty list, a single generator (the generic case), or more (a
    dimension jump, reported as-is).
    """
    system = build_system(n, l, Fraction(lam))
    if not system.matrix:
        # every operator killed every basis element: the whole span solves
        return list(system.basis)
    vectors = exact_nullspace(system.matrix)
    out = []
    for v in vectors:
        poly = ExactPoly.zero(n)
        for coeff, b in zip(v, system.basis):
            poly = poly + b.scale(coeff)
        out.append(poly)
    return out


def solve_sol_space_formal(n: int, l: int) -> List[List[PolyQ]]:
    """Formal-parameter mode (entries polynomial in lambda), l <= 3.

    Returns coefficient vectors over the s^j u^(l-j) basis with PolyQ
    entries, denominators cleared and content removed.  Generic
    one-dimensionality shows up as a single vector.
    """
    if l > 3:
        raise ValueError("formal-parameter mode is kept to l <= 3")
    lam = PolyQ.x()
    nu = lam + PolyQ.const(2 * l)
    basis = invariant_basis(n, l)
    ops = [fundamental_operator(nu, n, j) for j in range(n - 1)]
    basis_formal = [_lift_poly(b) for b in basis]
    rows = {}
    for col, b in enumerate(basis_formal):
        for k, op in enumerate(ops):
            image = weyl_apply(op, b)
            for mono, c in image.terms.items():
                rows.setdefault((k, mono), [PolyQ([])] * len(basis))[col] = c
    if not rows:
        return [
            [PolyQ.const(1 if i == j else 0) for i in range(len(basis))]
            for j in range(len(basis))
        ]
    matrix = [[RatFunc(entry) for entry in row] for row in rows.values()]
    vectors = exact_nullspace(matrix)
    out = []
    for v in vectors:
        # clear denominators, then divide by the gcd of the numerators
        den = PolyQ.const(1)
        for entry in v:
            den = _polyq_lcm(den, entry.den)
        cleared = [(entry.num * den) / entry.den for entry in v]
        g = PolyQ([])
        for c in cleared:
            g = polyq_gcd(g, c) if g else c
        if g and g.degree > 0:
            cleared = [c / g for c in cleared]
        out.append(cleared)
    return out


def _polyq_lcm(a: PolyQ, b: PolyQ) -> PolyQ:
    if not a or not b:
        return PolyQ([])
    g = polyq_gcd(a, b)
    return (a * b) / g


def _lift_poly(p: ExactPoly) -> ExactPoly:
    return ExactPoly(p.n, {m: PolyQ.const(c) for m, c in p.terms.items()})


def verify_annihilation(f: ExactPoly, system: SolSystem) -> bool:
    """Exact check: every light-cone operator kills f, and f lies in the
    invariant span (which certifies the O(n-1) x O(1) invariance)."""
    for op in system.operators:
        if weyl_apply(op, f):
            return False
    return in_invariant_span(f, system.n, system.l) is not None


def in_invariant_span(f: ExactPoly, n: int, l: int) -> Optional[List[Fraction]]:
    """Exact coordinates of f over the s^j u^(l-j) basis, or None.

    Membership in this span is the honest certificate of rotation
    invariance: sign-flip and permutation symmetry alone would not rule
    out non-invariant even polynomials.
    """
    basis = invariant_basis(n, l)
    if not f:
        return [Fraction(0)] * len(basis)
    monos = sorted(set().union(*[set(b.terms) for b in basis], set(f.terms)))
    matrix = []
    for mono in monos:
        row = [b.terms.get(mono, Fraction(0)) for b in basis]
        row.append(f.terms.get(mono, Fraction(0)))
        matrix.append(row)
    # solve basis * x = f by elimination on the augmented matrix
    kernel = exact_nullspace(matrix)
    for v in kernel:
        if v[-1] != 0:
            scale = -1 / v[-1]
            return [c * scale for c in v[:-1]]
    return None


def juhl_table_over_invariant_basis(n: int, l: int, lam) -> List[Fraction]:
    """Coefficient of s^j u^(l-j) in the dual symbol of the differential
    operator: 2^(2l-2j) prod_{i=1..l-j} (mu + l + i - 1) / (j! (2l-2j)!)
    with mu = lam - (n-1)/2; exact for rational lam."""
    lam = Fraction(lam)
    mu = lam - Fraction(n - 1, 2)
    out = []
    for j in range(l + 1):
        prod = Fraction(1)
        for i in range(1, l - j + 1):
            prod *= mu + l + i - 1
        out.append(Fraction(2 ** (2 * l - 2 * j), math.factorial(j) * math.factorial(2 * l - 2 * j)) * prod)
    return out


def proportional_exact(v: Sequence[Fraction], w: Sequence[Fraction]) -> bool:
    """Exact projective equality of two rational vectors."""
    if len(v) != len(w):
        return False
    pivot = next((i for i, c in enumerate(v) if c != 0), None)
    pivot_w = next((i for i, c in enumerate(w) if c != 0), None)
    if pivot is None or pivot_w is None:
        return pivot == pivot_w
    if pivot != pivot_w:
        return False
    a, b = v[pivot], w[pivot]
    return all(ci * b == di * a for ci, di in zip(v, w))
