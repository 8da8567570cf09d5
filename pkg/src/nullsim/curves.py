"""Parametrized null curves with interchangeable evaluation backends.

A curve is anything that can produce position and derivatives up to
third order over a declared parameter interval.  Three backends:

* ``AnalyticCurve`` — closed-form evaluators per derivative order;
* ``SampledCurve``  — a parameter grid plus position samples, derivatives
  by high-order finite differences;
* the frame-integration backend lives in :mod:`nullsim.frame` (curves
  defined only through their curvature and torsion).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import fd
from .errors import DerivativeUnavailable, OutOfDomain, TooFewSamples
from .lorentz import lorentz_dot

# Tolerated relative overshoot at domain endpoints (roundoff slack).
_DOMAIN_SLACK = 1e-12

# Adjacent grid steps may differ at most by this factor; wilder grids are
# rejected rather than silently interpolated.
MAX_STEP_RATIO = 4.0


class ParameterGrid:
    """Strictly increasing array of parameter values."""

    def __init__(self, values):
        v = np.asarray(values, dtype=float)
        if v.ndim != 1 or len(v) < 2:
            raise ValueError("grid needs at least two values")
        if not np.all(np.isfinite(v)):
            raise ValueError("grid values must be finite")
        if not np.all(np.diff(v) > 0):
            raise ValueError("grid must be strictly increasing")
        self.values = v

    @classmethod
    def uniform(cls, lo: float, hi: float, n: int) -> "ParameterGrid":
        if n < 2:
            raise ValueError("need at least two grid points")
        return cls(np.linspace(lo, hi, n))

    def __len__(self) -> int:
        return len(self.values)

    @property
    def span(self) -> tuple[float, float]:
        return float(self.values[0]), float(self.values[-1])

    @property
    def step_min(self) -> float:
        return float(np.min(np.diff(self.values)))

    @property
    def step_max(self) -> float:
        return float(np.max(np.diff(self.values)))

    @property
    def is_smooth(self) -> bool:
        """Adjacent steps differ by at most MAX_STEP_RATIO."""
        d = np.diff(self.values)
        ratio = np.max(d) / np.min(d)
        return bool(ratio <= MAX_STEP_RATIO)


def as_grid(grid) -> ParameterGrid:
    return grid if isinstance(grid, ParameterGrid) else ParameterGrid(grid)


class NullCurve:
    """Base class: position and derivatives over a parameter interval."""

    backend = "abstract"

    def __init__(self, domain: tuple[float, float], max_derivative_order: int = 3):
        lo, hi = float(domain[0]), float(domain[1])
        if not (np.isfinite(lo) and np.isfinite(hi) and lo < hi):
            raise ValueError(f"degenerate domain [{lo}, {hi}]")
        self.domain = (lo, hi)
        self.max_derivative_order = max_derivative_order

    # subclasses implement evaluation on a validated 1-d array
    def _eval(self, s: np.ndarray, order: int) -> np.ndarray:
        raise NotImplementedError

    def evaluate(self, s, order: int = 0):
        """Position (order 0) or derivative of the requested order.

        Scalar input gives shape (3,), array input shape (n, 3).
        """
        if not isinstance(order, (int, np.integer)) or not 0 <= order <= 3:
            raise DerivativeUnavailable(f"order must be 0..3, got {order!r}")
        if order > self.max_derivative_order:
            raise DerivativeUnavailable(
                f"{self.backend} backend supplies derivatives up to order "
                f"{self.max_derivative_order}, requested {order}"
            )
        scalar = np.ndim(s) == 0
        arr = np.atleast_1d(np.asarray(s, dtype=float))
        lo, hi = self.domain
        slack = _DOMAIN_SLACK * max(abs(lo), abs(hi), 1.0)
        if np.any(arr < lo - slack) or np.any(arr > hi + slack):
            bad = arr[(arr < lo - slack) | (arr > hi + slack)][0]
            raise OutOfDomain(f"s={float(bad):g} outside domain [{lo:g}, {hi:g}]")
        out = self._eval(np.clip(arr, lo, hi), int(order))
        return out[0] if scalar else out

    def default_grid(self, n: int = 1001) -> ParameterGrid:
        return ParameterGrid.uniform(*self.domain, n)


class AnalyticCurve(NullCurve):
    """Closed-form curve: one vectorized evaluator per derivative order.

    Each evaluator maps a parameter array of shape (n,) to positions or
    derivatives of shape (n, 3).
    """

    backend = "analytic"

    def __init__(self, evaluators: Sequence[Callable[[np.ndarray], np.ndarray]],
                 domain: tuple[float, float]):
        if len(evaluators) < 4:
            raise ValueError("need evaluators for orders 0..3")
        super().__init__(domain, max_derivative_order=3)
        self._evaluators = list(evaluators)

    def _eval(self, s: np.ndarray, order: int) -> np.ndarray:
        out = np.asarray(self._evaluators[order](s), dtype=float)
        return out.reshape(len(s), 3)


class SampledCurve(NullCurve):
    """Curve known only through position samples on a grid.

    Derivatives use stencils of formal order 4; the derived maximum
    derivative order depends on the sample count.  Off-grid evaluation
    interpolates with the same windowed-stencil machinery.
    """

    backend = "sampled"

    def __init__(self, grid, positions):
        g = as_grid(grid)
        pos = np.asarray(positions, dtype=float)
        if pos.shape != (len(g), 3):
            raise ValueError(f"positions must have shape ({len(g)}, 3), got {pos.shape}")
        if not np.all(np.isfinite(pos)):
            raise ValueError("positions must be finite")
        if len(g) < fd.MIN_SAMPLES:
            raise TooFewSamples(
                f"sampled curves need >= {fd.MIN_SAMPLES} samples, got {len(g)}"
            )
        if not g.is_smooth:
            raise ValueError(
                "grid steps vary too strongly (ratio > "
                f"{MAX_STEP_RATIO}); resample before constructing the curve"
            )
        max_order = max(k for k in range(0, 4) if k == 0 or k + fd._EXTRA_NODES <= len(g))
        super().__init__(g.span, max_derivative_order=max_order)
        self.grid = g
        self.positions = pos
        self._grid_derivs: dict[int, np.ndarray] = {0: pos}

    def _derivs_on_grid(self, order: int) -> np.ndarray:
        if order not in self._grid_derivs:
            self._grid_derivs[order] = fd.derivative_stencil(
                self.positions, self.grid.values, order
            )
        return self._grid_derivs[order]

    def _eval(self, s: np.ndarray, order: int) -> np.ndarray:
        gv = self.grid.values
        # fast path: every requested point is a grid node
        idx = np.searchsorted(gv, s)
        idx = np.clip(idx, 0, len(gv) - 1)
        left = np.clip(idx - 1, 0, len(gv) - 1)
        snap = np.where(np.abs(gv[idx] - s) <= np.abs(gv[left] - s), idx, left)
        tol = 1e-9 * max(self.grid.step_min, 1e-300)
        if np.all(np.abs(gv[snap] - s) <= tol):
            return self._derivs_on_grid(order)[snap]
        out = np.empty((len(s), 3))
        for i, x0 in enumerate(s):
            out[i] = fd.evaluate_from_samples(gv, self.positions, float(x0), order)
        return out


@dataclass
class NullityReport:
    """Worst-case deviation of the velocity from the light cone."""

    max_residual: float
    worst_s: float
    eps: float
    passed: bool


def nullity_check(curve: NullCurve, grid, eps_null: float = 1e-6) -> NullityReport:
    """Scan |<a', a'>| over a grid and compare against ``eps_null``."""
    g = as_grid(grid)
    vel = curve.evaluate(g.values, 1)
    res = np.abs(lorentz_dot(vel, vel))
    k = int(np.argmax(res))
    return NullityReport(
        max_residual=float(res[k]),
        worst_s=float(g.values[k]),
        eps=eps_null,
        passed=bool(res[k] <= eps_null),
    )


def helix_curve(domain: tuple[float, float] = (0.0, 2.0 * np.pi)) -> AnalyticCurve:
    """The reference null helix a(t) = (t, cos t, sin t)."""

    def e0(t):
        return np.stack([t, np.cos(t), np.sin(t)], axis=-1)

    def e1(t):
        return np.stack([np.ones_like(t), -np.sin(t), np.cos(t)], axis=-1)

    def e2(t):
        return np.stack([np.zeros_like(t), -np.cos(t), -np.sin(t)], axis=-1)

    def e3(t):
        return np.stack([np.zeros_like(t), np.sin(t), -np.cos(t)], axis=-1)

    return AnalyticCurve([e0, e1, e2, e3], domain)


def line_curve(point, direction, domain: tuple[float, float]) -> AnalyticCurve:
    """Straight line a(s) = point + s * direction (no nullity requirement here)."""
    p = np.asarray(point, dtype=float).reshape(3)
    d = np.asarray(direction, dtype=float).reshape(3)

    def e0(t):
        return p[None, :] + np.outer(t, d)

    def e1(t):
        return np.tile(d, (len(t), 1))

    def zero(t):
        return np.zeros((len(t), 3))

    return AnalyticCurve([e0, e1, zero, zero], domain)
