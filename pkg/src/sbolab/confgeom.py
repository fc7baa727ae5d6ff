"""Conformal geometry of the round sphere S^n and its equatorial S^(n-1).

Null-cone model: ambient Lorentz space R^(1, n+1) with quadratic form
Q = diag(-1, 1, ..., 1), time coordinate first.  A sphere point u (unit
vector in R^(n+1)) is the null ray through v = (1, u); a Lorentz matrix h
acts by  v |-> h v, renormalized back to the section w_0 = 1.  The
renormalization factor is the conformal factor:

    L_h u = (w_1, ..., w_(n+1)) / w_0,       Omega(h, u) = 1 / w_0.

The cocycle identity  Omega(h1 h2, u) = Omega(h1, L_h2 u) Omega(h2, u)
is then automatic up to float noise.

Flat chart: the sphere coordinate s is the FIRST ambient coordinate
(ambient index 1 in the Lorentz numbering), and the chart map is

    (s, sqrt(1-s^2) w)  |->  sqrt((1-s)/(1+s)) w,     w in S^(n-1),

so the flat point x in R^n occupies ambient coordinates 2..n+1 and the
equatorial hypersphere is the slice where the LAST ambient coordinate
vanishes, matching the flat hyperplane x_n = 0.

Flat-chart subgroup generators (stabilizing that slice): tangential
translations, dilations, rotations of the first n-1 flat coordinates,
the reflection x_n -> -x_n, and the inversion x -> x/|x|^2.  Their
Lorentz matrices are assembled in lightcone coordinates
xi+- = w_0 +- w_1, where the flat section is the paraboloid
(xi+, xi-, z) = (1, |x|^2, x).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np

from .gausspoly import GaussPolyFn, RepresentationError


class OrientationError(ValueError):
    """Matrix does not preserve the forward light cone."""


class Infinity:
    """The point at infinity of the flat chart."""

    _instance: Optional["Infinity"] = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"


INFINITY = Infinity()


@dataclass(frozen=True)
class LorentzElement:
    """An (n+2)x(n+2) matrix preserving Q = diag(-1, 1, ..., 1) and the forward cone."""

    n: int
    m: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.asarray(self.m, dtype=float)
        object.__setattr__(self, "m", m)
        dim = self.n + 2
        if m.shape != (dim, dim):
            raise ValueError(f"expected {(dim, dim)} matrix, got {m.shape}")
        q = np.diag([-1.0] + [1.0] * (dim - 1))
        # float noise in M^T Q M scales with ||M||^2
        tol = 1e-12 * max(1.0, float(np.linalg.norm(m)) ** 2)
        if np.max(np.abs(m.T @ q @ m - q)) > tol:
            raise ValueError("matrix does not preserve the Lorentz form")
        if m[0, 0] <= 0:
            raise OrientationError("matrix reverses the forward light cone")

    def __matmul__(self, other: "LorentzElement") -> "LorentzElement":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        return LorentzElement(self.n, self.m @ other.m)

    def inv(self) -> "LorentzElement":
        return LorentzElement(self.n, np.linalg.inv(self.m))

    # -- constructors --------------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "LorentzElement":
        return cls(n, np.eye(n + 2))

    @classmethod
    def rotation(cls, n: int, r: np.ndarray) -> "LorentzElement":
        """Block rotation fixing the time coordinate; r in O(n+1)."""
        r = np.asarray(r, dtype=float)
        m = np.eye(n + 2)
        m[1:, 1:] = r
        return cls(n, m)

    @classmethod
    def boost(cls, n: int, axis: int, rapidity: float) -> "LorentzElement":
        """Hyperbolic rotation in the (time, space-axis) plane; axis in 1..n+1."""
        m = np.eye(n + 2)
        ch, sh = np.cosh(rapidity), np.sinh(rapidity)
        m[0, 0] = ch
        m[0, axis] = sh
        m[axis, 0] = sh
        m[axis, axis] = ch
        return cls(n, m)


# lightcone-coordinate helpers for the flat generators ------------------------


def _from_lightcone(n: int, a: np.ndarray) -> LorentzElement:
    """Conjugate a matrix written in (xi+, xi-, z) coordinates back to (w_0, w_1, z)."""
    dim = n + 2
    p = np.zeros((dim, dim))
    p[0, 0], p[0, 1] = 1.0, 1.0  # xi+ = w0 + w1
    p[1, 0], p[1, 1] = 1.0, -1.0  # xi- = w0 - w1
    for i in range(2, dim):
        p[i, i] = 1.0
    pinv = np.linalg.inv(p)
    return LorentzElement(n, pinv @ a @ p)


def translation_element(n: int, b) -> LorentzElement:
    """Flat translation x -> x + b; b must be tangential (b[n-1] = 0) to stay in the subgroup."""
    b = np.asarray(b, dtype=float)
    if b.shape != (n,):
        raise ValueError("translation vector must have the chart dimension")
    a = np.eye(n + 2)
    a[1, 0] = float(b @ b)  # xi- row picks up |b|^2 xi+
    for k in range(n):
        a[1, 2 + k] = 2.0 * b[k]
        a[2 + k, 0] = b[k]
    return _from_lightcone(n, a)


def dilation_element(n: int, ratio: float) -> LorentzElement:
    if ratio <= 0:
        raise ValueError("dilation ratio must be positive")
    a = np.eye(n + 2)
    a[0, 0] = 1.0 / ratio
    a[1, 1] = ratio
    return _from_lightcone(n, a)


def rotation_element(n: int, r) -> LorentzElement:
    """Rotation of the tangential flat coordinates x_1..x_(n-1); r in O(n-1)."""
    r = np.asarray(r, dtype=float)
    a = np.eye(n + 2)
    a[2 : n + 1, 2 : n + 1] = r
    return _from_lightcone(n, a)


def reflection_element(n: int) -> LorentzElement:
    a = np.eye(n + 2)
    a[n + 1, n + 1] = -1.0
    return _from_lightcone(n, a)


def inversion_element(n: int) -> LorentzElement:
    """x -> x/|x|^2 swaps the lightcone axes; on the sphere it is s -> -s."""
    a = np.eye(n + 2)
    a[0, 0] = a[1, 1] = 0.0
    a[0, 1] = a[1, 0] = 1.0
    return _from_lightcone(n, a)


# sphere action ---------------------------------------------------------------


def moebius_act(h: LorentzElement, u) -> Tuple[np.ndarray, float]:
    """Act on a unit vector u in R^(n+1); returns (L_h u, Omega(h, u))."""
    u = np.asarray(u, dtype=float)
    v = np.concatenate(([1.0], u))
    w = h.m @ v
    if w[0] <= 0:
        raise OrientationError("image left the forward cone")
    return w[1:] / w[0], 1.0 / w[0]


def conformal_factor(h: LorentzElement, u) -> float:
    return moebius_act(h, u)[1]


def cocycle_residual(h1: LorentzElement, h2: LorentzElement, u) -> float:
    """|Omega(h1 h2, u) - Omega(h1, L_h2 u) Omega(h2, u)|."""
    u2, om2 = moebius_act(h2, u)
    _, om1 = moebius_act(h1, u2)
    _, om12 = moebius_act(h1 @ h2, u)
    return abs(om12 - om1 * om2)


# stereographic chart ---------------------------------------------------------


def stereographic(u):
    """Sphere point (s, sqrt(1-s^2) w) to flat point sqrt((1-s)/(1+s)) w; s=-1 -> infinity."""
    u = np.asarray(u, dtype=float)
    s = u[0]
    if s <= -1.0 + 1e-15:
        return INFINITY
    return u[1:] / (1.0 + s)


def stereographic_inverse(x) -> np.ndarray:
    if x is INFINITY:
        raise ValueError("the point at infinity must be handled before inverting")
    x = np.asarray(x, dtype=float)
    r2 = float(x @ x)
    return np.concatenate(([(1.0 - r2) / (1.0 + r2)], 2.0 * x / (1.0 + r2)))


def twisted_pullback(lam: complex, f: Callable) -> Callable:
    """Weight-lam transfer of a sphere function to the flat chart."""

    def pulled(x):
        x = np.asarray(x, dtype=float)
        r2 = float(x @ x)
        return (1.0 + r2) ** (-lam) * f(stereographic_inverse(x))

    return pulled


def twisted_pullback_inverse(lam: complex, big_f: Callable) -> Callable:
    """Recover the sphere function from its flat transfer (undefined at s = -1)."""

    def on_sphere(u):
        x = stereographic(u)
        if x is INFINITY:
            raise ValueError("flat transfer cannot be read back at the south pole")
        r2 = float(x @ x)
        return (1.0 + r2) ** lam * big_f(x)

    return on_sphere


def compact_action(h: LorentzElement, lam: complex, f: Callable) -> Callable:
    """Weighted pullback  u |-> Omega(h, u)^lam f(L_h u)  on sphere functions."""

    def acted(u):
        u2, om = moebius_act(h, u)
        return om**lam * f(u2)

    return acted


# flat picture ----------------------------------------------------------------


@dataclass(frozen=True)
class FlatMotion:
    """A generator of the flat-chart subgroup.

    kind: 'translation' (tangential vector), 'dilation' (ratio a > 0),
    'rotation' (O(n-1) block), 'reflection' (x_n -> -x_n), 'inversion'.
    """

    kind: str
    vector: Optional[Tuple[float, ...]] = None
    ratio: Optional[float] = None
    block: Optional[Tuple[Tuple[float, ...], ...]] = None

    def lorentz(self, n: int) -> LorentzElement:
        if self.kind == "translation":
            return translation_element(n, self.vector)
        if self.kind == "dilation":
            return dilation_element(n, self.ratio)
        if self.kind == "rotation":
            return rotation_element(n, np.asarray(self.block))
        if self.kind == "reflection":
            return reflection_element(n)
        if self.kind == "inversion":
            return inversion_element(n)
        raise ValueError(f"unknown flat motion kind {self.kind!r}")


def translation(b) -> FlatMotion:
    return FlatMotion("translation", vector=tuple(float(v) for v in b))


def dilation(a: float) -> FlatMotion:
    return FlatMotion("dilation", ratio=float(a))


def rotation(r) -> FlatMotion:
    return FlatMotion("rotation", block=tuple(tuple(float(v) for v in row) for row in np.asarray(r)))


def reflection() -> FlatMotion:
    return FlatMotion("reflection")


def inversion() -> FlatMotion:
    return FlatMotion("inversion")


def _full_rotation_matrix(n: int, motion: FlatMotion) -> np.ndarray:
    q = np.eye(n)
    if motion.kind == "rotation":
        r = np.asarray(motion.block)
        q[: n - 1, : n - 1] = r
    elif motion.kind == "reflection":
        q[n - 1, n - 1] = -1.0
    return q


def pi_flat(motion: FlatMotion, lam: complex, f):
    """Flat-picture weighted action of the generator on a function on R^n.

    GaussPolyFn stays GaussPolyFn for the affine generators; inversion only
    returns an evaluable closure (raises RepresentationError for GaussPolyFn
    input, per the class closure rules).
    """
    if isinstance(f, GaussPolyFn):
        n = f.n
        if motion.kind == "translation":
            b = np.asarray(motion.vector, dtype=float)
            if len(b) != n:
                raise ValueError("translation vector dimension mismatch")
            return f.pullback_similarity(b=b)  # g(x) = f(x + b)
        if motion.kind == "dilation":
            a = motion.ratio
            return f.pullback_similarity(r=a).scale(complex(a) ** complex(lam))
        if motion.kind in ("rotation", "reflection"):
            q = _full_rotation_matrix(n, motion)
            return f.pullback_similarity(q=q)
        if motion.kind == "inversion":
            raise RepresentationError(
                "inversion leaves the Gaussian class; pass an evaluable instead"
            )
        raise ValueError(f"unknown flat motion kind {motion.kind!r}")

    # evaluable route
    if motion.kind == "translation":
        b = np.asarray(motion.vector, dtype=float)
        return lambda x: f(np.asarray(x, dtype=float) + b)
    if motion.kind == "dilation":
        a = motion.ratio
        return lambda x: complex(a) ** complex(lam) * f(a * np.asarray(x, dtype=float))
    if motion.kind in ("rotation", "reflection"):
        def rotated(x):
            x = np.asarray(x, dtype=float)
            q = _full_rotation_matrix(len(x), motion)
            return f(q @ x)
        return rotated
    if motion.kind == "inversion":
        def inverted(x):
            x = np.asarray(x, dtype=float)
            r2 = float(x @ x)
            if r2 == 0.0:
                raise ZeroDivisionError("inversion is singular at the origin")
            return r2 ** (-lam) * f(x / r2)
        return inverted
    raise ValueError(f"unknown flat motion kind {motion.kind!r}")


def flat_action_via_sphere(motion: FlatMotion, n: int, lam: complex, big_f: Callable) -> Callable:
    """The same action computed the long way around: lift to the sphere with the
    weight, act there with the matching Lorentz matrix, come back down.  Used to
    pin the flat formulas against the compact picture."""
    h = motion.lorentz(n)
    f_sphere = twisted_pullback_inverse(lam, big_f)
    acted = compact_action(h, lam, f_sphere)
    return twisted_pullback(lam, acted)
