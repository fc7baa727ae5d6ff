"""Budgeted adaptive quadrature and oscillatory Fourier integrals.

Thin layer over scipy's QUADPACK wrappers: nested 1D adaptive rules for the
singular convolution kernels (subdivision aligned with the singular
hyperplane and the singular point), and the QAWO/QAWF oscillatory rules for
direct numeric Fourier transforms of kernels that are not absolutely
integrable.  Every integrand evaluation is charged to a budget so callers
can distinguish "wrong" from "too slow".
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence

import numpy as np
from scipy.integrate import quad


class QuadratureBudgetError(RuntimeError):
    """The evaluation budget was exhausted before reaching tolerance."""


class QuadratureFailure(RuntimeError):
    """The quadrature error estimate did not meet the requested tolerance."""


@dataclass
class Budget:
    limit: int = 10_000_000
    used: int = 0

    def charge(self, k: int = 1) -> None:
        self.used += k
        if self.used > self.limit:
            raise QuadratureBudgetError(
                f"quadrature budget exhausted ({self.used} > {self.limit} evaluations)"
            )


def nested_quad(
    fn: Callable[[Sequence[float]], float],
    ranges: Sequence[Sequence[float]],
    inner_points: Sequence[Optional[Sequence[float]]],
    budget: Budget,
    epsabs: float,
    limit: int = 120,
) -> float:
    """Iterated 1D adaptive quadrature, innermost over the LAST coordinate.

    inner_points[k] lists interior singular locations of coordinate k; they
    are passed to the adaptive rule so subdivision aligns with them.
    """
    ndim = len(ranges)

    def level(k: int, prefix: List[float]) -> float:
        lo, hi = ranges[k]
        pts = inner_points[k]
        pts = [p for p in (pts or []) if lo < p < hi]
        if k == ndim - 1:
            def f(y):
                budget.charge()
                return fn(prefix + [y])
        else:
            def f(y):
                return level(k + 1, prefix + [y])
        # per-level tolerance: loose inner levels poison the outer estimate,
        # so scale epsabs down with depth
        eps = epsabs * 0.2 ** (ndim - 1 - k)
        val, _ = quad(f, lo, hi, points=pts or None, limit=limit, epsabs=eps, epsrel=1e-9)
        return val

    return level(0, [])


def complex_nested_quad(fn, ranges, inner_points, budget, epsabs, limit=120) -> complex:
    re = nested_quad(lambda y: fn(y).real, ranges, inner_points, budget, epsabs, limit)
    im = nested_quad(lambda y: fn(y).imag, ranges, inner_points, budget, epsabs, limit)
    return re + 1j * im


# -- oscillatory Fourier transforms of the operator kernels (n = 2) -----------


def fourier_cos2d(
    kernel: Callable[[float, float], float],
    xi1: float,
    xi2: float,
    budget: Budget,
    split: float = 1.0,
    epsabs: float = 1e-10,
) -> float:
    """4 * int_0^inf int_0^inf kernel(x, y) cos(x xi1) cos(y xi2) dx dy.

    Inner (x) integral: adaptive oscillatory rule up to a few times y (the
    curvature scale of the kernels used here), then the semi-infinite
    Fourier rule on the smooth tail.  Outer (y) integral: adaptive rule on
    [0, split], which must cover both the endpoint singularity and any
    growth peak of the y-marginal, then the semi-infinite Fourier rule
    where the marginal is decaying.  The semi-infinite pieces converge for
    merely conditionally integrable kernels, which is the whole point.
    """
    xi1 = abs(float(xi1))
    xi2 = abs(float(xi2))
    if xi1 == 0.0:
        raise ValueError("inner frequency must be nonzero for the oscillatory rule")

    import warnings
    from scipy.integrate import IntegrationWarning

    def inner(y: float) -> float:
        def f(x):
            budget.charge()
            return kernel(x, y)
        xc = max(2.0, 5.0 * abs(y))
        head, _ = quad(f, 0.0, xc, weight="cos", wvar=xi1, limit=300, epsabs=epsabs * 1e-2)
        tail, _ = quad(f, xc, np.inf, weight="cos", wvar=xi1, limit=300, epsabs=epsabs * 1e-2)
        return head + tail

    with warnings.catch_warnings():
        # the QAWF acceleration table warns on slowly-settling tails even
        # when the returned value is already at tolerance; accuracy is
        # asserted downstream against closed forms
        warnings.simplefilter("ignore", IntegrationWarning)
        if xi2 == 0.0:
            head, _ = quad(inner, 0.0, split, limit=300, epsabs=epsabs)
            tail, _ = quad(inner, split, np.inf, limit=300, epsabs=epsabs)
        else:
            head, _ = quad(inner, 0.0, split, weight="cos", wvar=xi2, limit=300, epsabs=epsabs)
            tail, _ = quad(inner, split, np.inf, weight="cos", wvar=xi2, limit=300, epsabs=epsabs)
    return 4.0 * (head + tail)
