"""Finite-difference differentiation on uniform or smoothly varying grids.

Weights come from Fornberg's recursion, which yields optimal-order
stencils for arbitrary node locations, so interior, boundary, and
off-grid evaluation all go through the same code path.  A window of
``order + 4`` nodes gives truncation error O(h^4) for derivative orders
1..3 in the interior (one-sided stencils at the boundary have the same
formal order with larger constants).
"""

from __future__ import annotations

import numpy as np

from .errors import TooFewSamples

MIN_SAMPLES = 5
# Window width (node count) used for derivative order d; leaves
# truncation order window - d = 4.
_EXTRA_NODES = 4


def fd_weights(x0: float, nodes: np.ndarray, max_order: int) -> np.ndarray:
    """Fornberg weights for derivatives at ``x0`` from samples at ``nodes``.

    Returns an array ``c`` of shape (len(nodes), max_order + 1) where
    ``c[:, k] @ f(nodes)`` approximates the k-th derivative at ``x0``.
    """
    x = np.asarray(nodes, dtype=float)
    n = len(x)
    if max_order >= n:
        raise TooFewSamples(
            f"need more than {max_order} nodes for derivative order {max_order}"
        )
    c = np.zeros((n, max_order + 1))
    c1 = 1.0
    c4 = x[0] - x0
    c[0, 0] = 1.0
    for i in range(1, n):
        mn = min(i, max_order)
        c2 = 1.0
        c5 = c4
        c4 = x[i] - x0
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
    return c


def window_bounds(n: int, center: int, width: int) -> tuple[int, int]:
    """Index range [lo, hi) of a width-node window around ``center``, clipped."""
    width = min(width, n)
    lo = center - (width - 1) // 2
    lo = max(0, min(lo, n - width))
    return lo, lo + width


def derivative_stencil(samples: np.ndarray, grid: np.ndarray, order: int) -> np.ndarray:
    """Differentiate sampled data along its grid.

    ``samples`` has shape (n,) or (n, m); the derivative is taken along
    the first axis.  Truncation error is O(h^(w - order)) with window
    width w = order + 4 (so O(h^4) for orders up to 3).
    """
    samples = np.asarray(samples, dtype=float)
    grid = np.asarray(grid, dtype=float)
    n = len(grid)
    if samples.shape[0] != n:
        raise ValueError("samples and grid length mismatch")
    if not 0 <= order <= 3:
        raise ValueError(f"derivative order must be 0..3, got {order}")
    if n < MIN_SAMPLES:
        raise TooFewSamples(f"need at least {MIN_SAMPLES} samples, got {n}")
    if order == 0:
        return samples.copy()
    width = min(order + _EXTRA_NODES, n)
    out = np.empty_like(samples)
    for i in range(n):
        lo, hi = window_bounds(n, i, width)
        w = fd_weights(grid[i], grid[lo:hi], order)[:, order]
        out[i] = w @ samples[lo:hi]
    return out


def evaluate_from_samples(grid: np.ndarray, samples: np.ndarray, x0: float,
                          order: int) -> np.ndarray:
    """Value or derivative at an arbitrary point from gridded samples.

    Order 0 is local polynomial interpolation on a 6-node window;
    orders 1..3 use (order + 4)-node stencils centered as close to
    ``x0`` as the grid allows.
    """
    grid = np.asarray(grid, dtype=float)
    samples = np.asarray(samples, dtype=float)
    n = len(grid)
    if n < MIN_SAMPLES:
        raise TooFewSamples(f"need at least {MIN_SAMPLES} samples, got {n}")
    width = min((order + _EXTRA_NODES) if order > 0 else 6, n)
    center = int(np.searchsorted(grid, x0))
    lo, hi = window_bounds(n, center, width)
    w = fd_weights(x0, grid[lo:hi], order)[:, order]
    return w @ samples[lo:hi]
