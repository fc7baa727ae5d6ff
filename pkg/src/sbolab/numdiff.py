"""High-order finite differences for functions that leave the symbolic class.

Central stencils with weights from the standard divided-difference recursion,
plus one Richardson extrapolation step over two step sizes.  Used only where
exact symbolic differentiation is unavailable (inversion pullbacks).
"""

from __future__ import annotations

from typing import Callable, Sequence, Tuple

import numpy as np


def stencil_weights(z: float, grid: Sequence[float], order: int) -> np.ndarray:
    """Weights approximating the order-th derivative at z from samples on grid."""
    x = np.asarray(grid, dtype=float)
    npts = len(x)
    c = np.zeros((npts, order + 1))
    c1 = 1.0
    c4 = x[0] - z
    c[0, 0] = 1.0
    for i in range(1, npts):
        mn = min(i, order)
        c2 = 1.0
        c5 = c4
        c4 = x[i] - z
        for j in range(i):
            c3 = x[i] - x[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return c[:, order]


def _central_offsets(order: int) -> np.ndarray:
    half = order // 2 + 4  # even orders; accuracy 2*half - order + 2 >= 10
    return np.arange(-half, half + 1, dtype=float)


def mixed_partial(
    f: Callable, point: Sequence[float], orders: Sequence[int], h: float
) -> complex:
    """Mixed partial derivative by a tensor product of 1D central stencils."""
    point = np.asarray(point, dtype=float)
    active = [(i, o) for i, o in enumerate(orders) if o > 0]
    if not active:
        return f(point)
    grids = []
    weights = []
    for _, o in active:
        offs = _central_offsets(o)
        grids.append(offs * h)
        weights.append(stencil_weights(0.0, offs * h, o))
    total = 0.0
    idx = [0] * len(active)
    shapes = [len(g) for g in grids]

    def rec(depth, shift, w):
        nonlocal total
        if depth == len(active):
            total += w * f(point + shift)
            return
        axis, _ = active[depth]
        for k in range(shapes[depth]):
            s = shift.copy()
            s[axis] += grids[depth][k]
            rec(depth + 1, s, w * weights[depth][k])

    rec(0, np.zeros_like(point), 1.0)
    return total


def mixed_partial_richardson(
    f: Callable, point: Sequence[float], orders: Sequence[int], h: float = 0.08
) -> complex:
    """Two-step Richardson extrapolation of the order-10 stencil error."""
    coarse = mixed_partial(f, point, orders, h)
    fine = mixed_partial(f, point, orders, h / 2.0)
    p = 10
    return (2**p * fine - coarse) / (2**p - 1)
