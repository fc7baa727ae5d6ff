"""Exact multivariate polynomials over the rationals, and exact nullspaces.

Coefficients are kept generic: ``Fraction`` for the plain rational case,
``QQi`` for complex-rational, ``PolyQ`` for entries carrying one formal
parameter.  No float ever enters this module; equality is decidable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, List, Sequence, Tuple

Monomial = Tuple[int, ...]


@dataclass(frozen=True, eq=False)
class QQi:
    """Gaussian rational a + b*i with exact components."""

    re: Fraction
    im: Fraction

    def __eq__(self, other):
        if isinstance(other, QQi):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __add__(self, other):
        other = _as_qqi(other)
        return QQi(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return QQi(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-_as_qqi(other))

    def __rsub__(self, other):
        return _as_qqi(other) + (-self)

    def __mul__(self, other):
        other = _as_qqi(other)
        return QQi(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_qqi(other)
        d = other.re * other.re + other.im * other.im
        if d == 0:
            raise ZeroDivisionError("division by zero QQi")
        return self * QQi(other.re / d, -other.im / d)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(self.re) + 1j * complex(self.im)


def _as_qqi(x) -> QQi:
    if isinstance(x, QQi):
        return x
    return QQi(Fraction(x), Fraction(0))


class PolyQ:
    """Univariate polynomial over Fraction, used for one formal parameter.

    Supports exact ring arithmetic, exact division, gcd, and evaluation.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Fraction]):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, c) -> "PolyQ":
        return cls([Fraction(c)])

    @classmethod
    def x(cls) -> "PolyQ":
        return cls([Fraction(0), Fraction(1)])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, PolyQ):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.coeffs
            return self.coeffs == (Fraction(other),)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = _as_polyq(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        b = list(other.coeffs) + [Fraction(0)] * (n - len(other.coeffs))
        return PolyQ([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return PolyQ([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_as_polyq(other))

    def __rsub__(self, other):
        return _as_polyq(other) + (-self)

    def __mul__(self, other):
        other = _as_polyq(other)
        if not self or not other:
            return PolyQ([])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return PolyQ(out)

    __rmul__ = __mul__

    def divmod(self, other: "PolyQ"):
        other = _as_polyq(other)
        if not other:
            raise ZeroDivisionError("PolyQ division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(0, len(rem) - len(other.coeffs) + 1)
        d = other.coeffs
        while len(rem) >= len(d) and rem:
            f = rem[-1] / d[-1]
            pos = len(rem) - len(d)
            q[pos] = f
            for i, c in enumerate(d):
                rem[pos + i] -= f * c
            while rem and rem[-1] == 0:
                rem.pop()
        return PolyQ(q), PolyQ(rem)

    def __truediv__(self, other):
        q, r = self.divmod(other)
        if r:
            raise ValueError("inexact PolyQ division")
        return q

    def __call__(self, x):
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> "PolyQ":
        if not self:
            return self
        lead = self.coeffs[-1]
        return PolyQ([c / lead for c in self.coeffs])

    def __repr__(self):
        if not self:
            return "PolyQ(0)"
        parts = [f"{c}*L^{k}" if k else f"{c}" for k, c in enumerate(self.coeffs) if c]
        return "PolyQ(" + " + ".join(parts) + ")"


def _as_polyq(x) -> PolyQ:
    if isinstance(x, PolyQ):
        return x
    return PolyQ.const(x)


def polyq_gcd(a: PolyQ, b: PolyQ) -> PolyQ:
    while b:
        a, b = b, a.divmod(b)[1]
    return a.monic() if a else a


class RatFunc:
    """Fraction field of PolyQ, normalized to a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: PolyQ, den: PolyQ = None):
        den = _as_polyq(1) if den is None else den
        if not den:
            raise ZeroDivisionError("RatFunc with zero denominator")
        if num:
            g = polyq_gcd(num, den)
            if g.degree > 0:
                num = num / g
                den = den / g
            lead = den.coeffs[-1]
            num = num * PolyQ.const(1 / lead)
            den = den * PolyQ.const(1 / lead)
        else:
            den = _as_polyq(1)
        self.num, self.den = num, den

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        other = _as_ratfunc(other)
        return self.num == other.num and self.den == other.den

    def __add__(self, other):
        other = _as_ratfunc(other)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-_as_ratfunc(other))

    def __mul__(self, other):
        other = _as_ratfunc(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_ratfunc(other)
        if not other:
            raise ZeroDivisionError
        return RatFunc(self.num * other.den, self.den * other.num)

    def __repr__(self):
        return f"RatFunc({self.num!r} / {self.den!r})"


def _as_ratfunc(x) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, PolyQ):
        return RatFunc(x)
    return RatFunc(PolyQ.const(x))


class ExactPoly:
    """Multivariate polynomial with exact coefficients, sparse monomial map."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Dict[Monomial, object] = None):
        self.n = n
        clean: Dict[Monomial, object] = {}
        for mono, c in (terms or {}).items():
            if len(mono) != n:
                raise ValueError("monomial length does not match variable count")
            if any(e < 0 for e in mono):
                raise ValueError("negative exponent")
            if _nonzero(c):
                clean[tuple(mono)] = c
        self.terms = clean

    @classmethod
    def zero(cls, n: int) -> "ExactPoly":
        return cls(n, {})

    @classmethod
    def const(cls, n: int, c) -> "ExactPoly":
        return cls(n, {tuple([0] * n): c})

    @classmethod
    def var(cls, n: int, j: int) -> "ExactPoly":
        mono = [0] * n
        mono[j] = 1
        return cls(n, {tuple(mono): Fraction(1)})

    def __eq__(self, other):
        return isinstance(other, ExactPoly) and self.n == other.n and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        out = dict(self.terms)
        for mono, c in other.terms.items():
            acc = out.get(mono, 0) + c
            if _nonzero(acc):
                out[mono] = acc
            else:
                out.pop(mono, None)
        return ExactPoly(self.n, out)

    def __neg__(self):
        return ExactPoly(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, ExactPoly):
            return self.scale(other)
        out: Dict[Monomial, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                acc = out.get(mono, 0) + c1 * c2
                if _nonzero(acc):
                    out[mono] = acc
                else:
                    out.pop(mono, None)
        return ExactPoly(self.n, out)

    __rmul__ = __mul__

    def scale(self, c):
        if not _nonzero(c):
            return ExactPoly.zero(self.n)
        return ExactPoly(self.n, {m: c * v for m, v in self.terms.items()})

    def pow(self, k: int) -> "ExactPoly":
        out = ExactPoly.const(self.n, Fraction(1))
        for _ in range(k):
            out = out * self
        return out

    def diff(self, j: int) -> "ExactPoly":
        out: Dict[Monomial, object] = {}
        for mono, c in self.terms.items():
            if mono[j] == 0:
                continue
            m = list(mono)
            e = m[j]
            m[j] = e - 1
            key = tuple(m)
            acc = out.get(key, 0) + c * e
            if _nonzero(acc):
                out[key] = acc
            else:
                out.pop(key, None)
        return ExactPoly(self.n, out)

    def mul_var(self, j: int) -> "ExactPoly":
        out = {}
        for mono, c in self.terms.items():
            m = list(mono)
            m[j] += 1
            out[tuple(m)] = c
        return ExactPoly(self.n, out)

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def eval(self, point: Sequence) -> object:
        total = None
        for mono, c in self.terms.items():
            v = c
            for x, e in zip(point, mono):
                for _ in range(e):
                    v = v * x
            total = v if total is None else total + v
        if total is None:
            return Fraction(0)
        return total

    def substitute_values(self, values: Dict[int, object]) -> "ExactPoly":
        """Plug exact values into some variables, keep the rest symbolic."""
        out = ExactPoly.zero(self.n)
        for mono, c in self.terms.items():
            coeff = c
            m = list(mono)
            for j, val in values.items():
                for _ in range(mono[j]):
                    coeff = coeff * val
                m[j] = 0
            out = out + ExactPoly(self.n, {tuple(m): coeff})
        return out

    def __repr__(self):
        if not self.terms:
            return "ExactPoly(0)"
        bits = []
        for mono in sorted(self.terms, reverse=True):
            c = self.terms[mono]
            vars_ = "*".join(
                f"z{i}^{e}" if e > 1 else f"z{i}" for i, e in enumerate(mono) if e
            )
            bits.append(f"({c})" + ("*" + vars_ if vars_ else ""))
        return "ExactPoly(" + " + ".join(bits) + ")"


def _nonzero(c) -> bool:
    if isinstance(c, (PolyQ, RatFunc, QQi)):
        return bool(c)
    return c != 0


def _row_nonzero(row) -> bool:
    return any(_nonzero(c) for c in row)


def exact_nullspace(matrix: Sequence[Sequence]) -> List[List]:
    """Exact right-nullspace basis of a matrix with exact entries.

    Rational matrices go through fraction-free (Bareiss) elimination on a
    denominator-cleared integer copy, so every intermediate is an integer;
    ``QQi`` and ``RatFunc`` entries fall back to exact field reduction.
    Either way no rounding ever occurs: basis vectors satisfy M @ v == 0
    identically, and basis size + rank == column count.
    """
    rows = [list(r) for r in matrix]
    if not rows:
        return []
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise ValueError("ragged matrix")
    if all(isinstance(c, (int, Fraction)) and not isinstance(c, bool) for r in rows for c in r):
        return _nullspace_bareiss(rows, ncols)
    one = _field_one(rows)

    # reduced row echelon form over the coefficient field
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if _nonzero(rows[i][c]):
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = one / rows[r][c]
        rows[r] = [inv * x for x in rows[r]]
        for i in range(len(rows)):
            if i != r and _nonzero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break

    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    zero = one - one
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for who, pc in enumerate(pivots):
            v[pc] = -rows[who][fc]
        basis.append(v)
    return basis


def _nullspace_bareiss(rows: List[List], ncols: int) -> List[List[Fraction]]:
    # clear denominators row by row; nullspace is unchanged
    m: List[List[int]] = []
    for row in rows:
        fr = [Fraction(c) for c in row]
        scale = 1
        for c in fr:
            scale = scale * c.denominator // gcd(scale, c.denominator)
        m.append([int(c * scale) for c in fr])

    pivots: List[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        for i in range(r + 1, len(m)):
            if not any(m[i]):
                continue
            for j in range(ncols):
                if j == c:
                    continue
                m[i][j] = (m[i][j] * m[r][c] - m[i][c] * m[r][j]) // prev
            m[i][c] = 0
        prev = m[r][c]
        pivots.append(c)
        r += 1
        if r == len(m):
            break

    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for who in range(len(pivots) - 1, -1, -1):
            pc = pivots[who]
            acc = Fraction(0)
            for j in range(pc + 1, ncols):
                acc += m[who][j] * v[j]
            v[pc] = -acc / Fraction(m[who][pc])
        basis.append(v)
    return basis


def _field_one(rows):
    for row in rows:
        for c in row:
            if isinstance(c, RatFunc):
                return RatFunc(PolyQ.const(1))
            if isinstance(c, QQi):
                return QQi(Fraction(1), Fraction(0))
    return Fraction(1)


def matvec(matrix: Sequence[Sequence], vec: Sequence) -> List:
    return [sum((a * b for a, b in zip(row, vec)), start=row[0] - row[0]) for row in matrix]
