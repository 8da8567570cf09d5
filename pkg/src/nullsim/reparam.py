"""Total-curvature reparametrization and the third-order tangent ODE.

Integrating the curvature gives a new parameter phi with d(phi)/ds =
kappa(s).  In that chart the frame equations collapse to a single
third-order ODE for the tangent field,

    alpha''' + 2 f(phi) alpha' + f'(phi) alpha = 0,

whose only coefficient is the invariant ratio f = tau / kappa.  The
chart requires kappa to keep a fixed nonzero sign; charts refuse sign
changes instead of splitting silently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp
from scipy.interpolate import CubicSpline

from . import fd
from .curves import AnalyticCurve, NullCurve
from .errors import IntegratorFailure, KappaVanishes, OutOfDomain, SignChange
from .frame import FrameSample, FramedCurve, _frame_fields, _fn_derivative
from .lorentz import euclid_norm, lorentz_dot

DEFAULT_EPS_KAPPA = 1e-8


class PhiChart:
    """Invertible map s <-> phi = integral of kappa, plus f = tau/kappa."""

    def __init__(self, framed: FramedCurve, eps_kappa: float = DEFAULT_EPS_KAPPA):
        s = framed.s
        kappa = framed.kappa
        small = np.abs(kappa) < eps_kappa
        if np.any(small):
            k = int(np.argmax(small))
            raise KappaVanishes(f"|kappa| < {eps_kappa:g} at s={float(s[k]):g}")
        if np.any(kappa > 0) and np.any(kappa < 0):
            k = int(np.argmax(np.sign(kappa) != np.sign(kappa[0])))
            raise SignChange(f"kappa changes sign near s={float(s[k]):g}")

        self.framed = framed
        self.direction = int(np.sign(kappa[0]))
        self._kappa_spline = CubicSpline(s, kappa)
        self._phi_anti = self._kappa_spline.antiderivative()
        self.s_values = s
        self.phi_values = self._phi_anti(s) - self._phi_anti(s[0])
        self.f_values = framed.tau / kappa

    @property
    def phi_span(self) -> tuple[float, float]:
        lo, hi = self.phi_values[0], self.phi_values[-1]
        return (float(min(lo, hi)), float(max(lo, hi)))

    def phi_of_s(self, s):
        s = np.asarray(s, dtype=float)
        return self._phi_anti(s) - self._phi_anti(self.s_values[0])

    def s_of_phi(self, phi):
        """Invert the chart by Newton iteration on the spline antiderivative."""
        phi = np.atleast_1d(np.asarray(phi, dtype=float))
        lo, hi = self.phi_span
        pad = 1e-9 * max(hi - lo, 1.0)
        if np.any(phi < lo - pad) or np.any(phi > hi + pad):
            raise OutOfDomain(f"phi outside chart range [{lo:g}, {hi:g}]")
        phi = np.clip(phi, lo, hi)
        # monotone interpolation gives the starting point
        pv, sv = self.phi_values, self.s_values
        if self.direction < 0:
            pv, sv = pv[::-1], sv[::-1]
        s = np.interp(phi, pv, sv)
        target = phi + self._phi_anti(self.s_values[0])
        for _ in range(60):
            resid = self._phi_anti(s) - target
            step = resid / self._kappa_spline(s)
            s = np.clip(s - step, self.s_values[0], self.s_values[-1])
            if np.max(np.abs(step)) < 1e-14 * max(1.0, np.max(np.abs(s))):
                break
        return s if s.shape else float(s)

    def f_of_phi(self, phi):
        """Invariant ratio at chart positions, recomputed from the curve."""
        s = np.atleast_1d(self.s_of_phi(phi))
        fields = _frame_fields(self.framed.curve, s, eps_null=1e-6, eps_gram=1e-12)
        return fields["tau"] / fields["kappa"]

    def alpha_of_phi(self, phi):
        s = np.atleast_1d(self.s_of_phi(phi))
        return self.framed.curve.evaluate(s, 1)


def total_curvature(fc: FramedCurve, eps_kappa: float = DEFAULT_EPS_KAPPA) -> PhiChart:
    """Build the cumulative-curvature chart of a framed curve."""
    return PhiChart(fc, eps_kappa=eps_kappa)


def tangent_ode_residual(fc: FramedCurve, chart: PhiChart, n: int | None = None) -> float:
    """Worst interior violation of the third-order tangent equation.

    The tangent is resampled on a uniform phi grid and differentiated by
    stencils; f' likewise.  The first and last three nodes are excluded
    (one-sided stencils dominate the error there).
    """
    if n is None:
        n = len(fc)
    lo, hi = chart.phi_span
    phi = np.linspace(lo, hi, n)
    alpha = chart.alpha_of_phi(phi)
    f = chart.f_of_phi(phi)
    d1 = fd.derivative_stencil(alpha, phi, 1)
    d3 = fd.derivative_stencil(alpha, phi, 3)
    fp = fd.derivative_stencil(f, phi, 1)
    resid = euclid_norm(d3 + 2.0 * f[:, None] * d1 + fp[:, None] * alpha)
    core = resid[3:-3] if len(resid) > 6 else resid
    return float(np.max(core))


@dataclass
class TangentField:
    """Solution of the tangent ODE on a phi grid."""

    phi: np.ndarray
    alpha: np.ndarray
    d_alpha: np.ndarray
    d2_alpha: np.ndarray
    null_drift: float  # max |<alpha, alpha>| accumulated by integration

    _dense: object = None

    def at(self, phi):
        """alpha, alpha', alpha'' at arbitrary phi inside the solved span."""
        p = np.atleast_1d(np.asarray(phi, dtype=float))
        y = self._dense(p)
        n = len(p)
        return y[0:3].T.reshape(n, 3), y[3:6].T.reshape(n, 3), y[6:9].T.reshape(n, 3)


def tangent_ode_init_from_frame(sample: FrameSample) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Initial data (alpha, d alpha/d phi, d^2 alpha/d phi^2) from a frame.

    In the phi chart the first derivative of the tangent is beta and the
    second is -(gamma + f * alpha).
    """
    f0 = sample.tau / sample.kappa
    return sample.alpha.copy(), sample.beta.copy(), -(sample.gamma + f0 * sample.alpha)


def solve_tangent_ode(f, df, init, phi_grid, rtol: float = 1e-10,
                      atol: float = 1e-12, project_null: bool = False) -> TangentField:
    """Integrate alpha''' = -2 f alpha' - f' alpha over a phi grid.

    ``df`` may be None, in which case f is differenced numerically.
    ``init`` is the triple from :func:`tangent_ode_init_from_frame`.
    The light-cone drift of the solution is monitored and reported; with
    ``project_null`` the output tangent is rescaled onto the cone
    (its timelike component is adjusted), the dense solution is not.
    """
    phi_grid = np.asarray(phi_grid, dtype=float)
    f_fn = f if callable(f) else (lambda p, c=float(f): c * np.ones_like(np.asarray(p, float)))
    df_fn = df if df is not None else (lambda p: _fn_derivative(f_fn, p))

    def rhs(p, y):
        a, a1, a2 = y[0:3], y[3:6], y[6:9]
        return np.concatenate([a1, a2, -2.0 * f_fn(p) * a1 - df_fn(p) * a])

    y0 = np.concatenate([np.asarray(v, dtype=float) for v in init])
    span = (float(phi_grid[0]), float(phi_grid[-1]))
    sol = solve_ivp(rhs, span, y0, method="DOP853", rtol=rtol, atol=atol,
                    dense_output=True, t_eval=phi_grid)
    if not sol.success:
        raise IntegratorFailure(sol.message)
    alpha = sol.y[0:3].T
    drift = float(np.max(np.abs(lorentz_dot(alpha, alpha))))
    if project_null:
        spatial = np.hypot(alpha[:, 1], alpha[:, 2])
        alpha = alpha.copy()
        alpha[:, 0] = np.copysign(spatial, alpha[:, 0])
    return TangentField(
        phi=phi_grid,
        alpha=alpha,
        d_alpha=sol.y[3:6].T,
        d2_alpha=sol.y[6:9].T,
        null_drift=drift,
        _dense=sol.sol,
    )


def reconstruct_curve(alpha_field, kappa_of_phi=1.0, anchor=(0.0, 0.0, 0.0),
                      phi_span: tuple[float, float] | None = None,
                      s0: float = 0.0, rtol: float = 1e-10,
                      eps_kappa: float = DEFAULT_EPS_KAPPA) -> NullCurve:
    """Curve whose tangent field in its own phi chart is ``alpha_field``.

    Inverts the chart substitution: ds = d(phi)/kappa(phi) and
    a = anchor + integral of alpha ds.  ``alpha_field`` is either a
    :class:`TangentField` (preferred; carries derivatives) or a plain
    callable phi -> (3,) array.  With the default kappa identically 1
    the curve parameter coincides with phi.
    """
    if isinstance(alpha_field, TangentField):
        span = (float(alpha_field.phi[0]), float(alpha_field.phi[-1]))

        def a_fn(p):
            return alpha_field.at(p)[0]

        def da_fn(p):
            return alpha_field.at(p)[1]
    else:
        if phi_span is None:
            raise ValueError("phi_span is required for a callable tangent field")
        span = (float(phi_span[0]), float(phi_span[1]))

        def a_fn(p):
            p = np.atleast_1d(np.asarray(p, dtype=float))
            return np.asarray([alpha_field(x) for x in p], dtype=float).reshape(len(p), 3)

        def da_fn(p):
            p = np.atleast_1d(np.asarray(p, dtype=float))
            h = 1e-6 * np.maximum(1.0, np.abs(p))
            return (
                -a_fn(p + 2 * h) + 8 * a_fn(p + h) - 8 * a_fn(p - h) + a_fn(p - 2 * h)
            ) / (12.0 * h[:, None])

    kappa_fn = kappa_of_phi if callable(kappa_of_phi) else (
        lambda p, c=float(kappa_of_phi): c * np.ones_like(np.asarray(p, float))
    )
    probe = np.linspace(span[0], span[1], 257)
    kv = np.asarray(kappa_fn(probe), dtype=float)
    if np.any(np.abs(kv) < eps_kappa):
        raise KappaVanishes("kappa(phi) too close to zero for reconstruction")
    if np.any(kv > 0) and np.any(kv < 0):
        raise SignChange("kappa(phi) changes sign; reconstruction chart not monotone")

    def rhs(p, y):
        k = float(np.atleast_1d(kappa_fn(p))[0])
        a = a_fn(p)[0]
        return np.concatenate([a / k, [1.0 / k]])

    y0 = np.concatenate([np.asarray(anchor, dtype=float), [s0]])
    sol = solve_ivp(rhs, span, y0, method="DOP853", rtol=rtol, atol=1e-12,
                    dense_output=True)
    if not sol.success:
        raise IntegratorFailure(sol.message)
    dense = sol.sol

    s_lo, s_hi = sorted((float(dense(span[0])[3]), float(dense(span[1])[3])))
    s_probe = dense(probe)[3]
    order = np.argsort(s_probe)
    s_sorted, phi_sorted = s_probe[order], probe[order]

    def phi_of_s(s):
        s = np.atleast_1d(np.asarray(s, dtype=float))
        p = np.interp(s, s_sorted, phi_sorted)
        # Newton refinement: d(phi)/ds = kappa(phi)
        for _ in range(60):
            resid = dense(p)[3] - s
            step = resid * np.asarray(kappa_fn(p), dtype=float)
            p = np.clip(p - step, span[0], span[1])
            if np.max(np.abs(step)) < 1e-14 * max(1.0, np.max(np.abs(p))):
                break
        return p

    def e0(s):
        return dense(phi_of_s(s))[0:3].T

    def e1(s):
        return a_fn(phi_of_s(s))

    def e2(s):
        p = phi_of_s(s)
        k = np.asarray(kappa_fn(p), dtype=float)
        return da_fn(p) * k[:, None]

    def e3(s):
        p = phi_of_s(s)
        k = np.asarray(kappa_fn(p), dtype=float)
        kp = _fn_derivative(kappa_fn, p)
        if isinstance(alpha_field, TangentField):
            d2 = alpha_field.at(p)[2]
        else:
            h = 1e-4 * np.maximum(1.0, np.abs(p))
            d2 = (
                -da_fn(p + 2 * h) + 8 * da_fn(p + h) - 8 * da_fn(p - h) + da_fn(p - 2 * h)
            ) / (12.0 * h[:, None])
        return (d2 * k[:, None] + da_fn(p) * kp[:, None]) * k[:, None]

    return AnalyticCurve([e0, e1, e2, e3], (s_lo, s_hi))
