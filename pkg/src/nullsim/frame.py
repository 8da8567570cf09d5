"""Cartan frames of null curves: extraction, batch framing, integration.

For a null curve a(s) the frame {alpha, gamma, beta} satisfies

    alpha' = kappa * beta
    gamma' = tau * beta
    beta'  = -tau * alpha - kappa * gamma

with <alpha,alpha> = <gamma,gamma> = 0, <beta,beta> = <alpha,gamma> = 1,
<alpha,beta> = <gamma,beta> = 0 and beta = alpha ^ gamma.

Frame construction is pointwise and closed-form: alpha = a', and gamma
is the unique null vector with <alpha,gamma> = 1 Lorentz-orthogonal to
a''.  Writing v = alpha x (D a'') with the Euclidean cross product and
D = diag(-1,1,1),

    gamma = (-<v,v> alpha + 2 <alpha,v> v) / (2 <alpha,v>^2)

solves all three conditions at once (v spans the second direction of the
plane orthogonal to a''; <alpha,v> cannot vanish for an admissible a'').
Curvature is the signed coefficient kappa = <a'', beta>, torsion comes
from tau = -<a''', gamma> / kappa and is cross-checked through the
derivative of the gamma field.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from . import fd
from .curves import AnalyticCurve, NullCurve, ParameterGrid, as_grid
from .errors import (
    BadInitialFrame,
    GeodesicDegeneracy,
    IntegratorFailure,
    NotNull,
)
from .lorentz import METRIC_DIAG, euclid_norm, lorentz_cross, lorentz_dot

DEFAULT_EPS_NULL = 1e-6
DEFAULT_EPS_GRAM = 1e-12
DEFAULT_EPS_KAPPA = 1e-8

# A gamma jump larger than this (relative to local scale) between
# adjacent grid nodes is flagged as a continuity break.
_CONTINUITY_JUMP = 0.5


@dataclass
class FrameSample:
    """Frame data at a single parameter value."""

    s: float
    position: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray
    gamma: np.ndarray
    kappa: float
    tau: float
    tau_alt: float = np.nan  # torsion via the gamma-field derivative

    def relation_residuals(self) -> dict[str, float]:
        """The six defining scalar relations, as absolute residuals."""
        a, b, g = self.alpha, self.beta, self.gamma
        return {
            "alpha_null": abs(float(lorentz_dot(a, a))),
            "gamma_null": abs(float(lorentz_dot(g, g))),
            "beta_unit": abs(float(lorentz_dot(b, b)) - 1.0),
            "alpha_gamma": abs(float(lorentz_dot(a, g)) - 1.0),
            "alpha_beta": abs(float(lorentz_dot(a, b))),
            "gamma_beta": abs(float(lorentz_dot(g, b))),
        }

    def max_relation_residual(self) -> float:
        return max(self.relation_residuals().values())

    def cross_residual(self) -> float:
        """Componentwise deviation of beta from alpha ^ gamma."""
        return float(np.max(np.abs(self.beta - lorentz_cross(self.alpha, self.gamma))))


def gamma_from_plane(alpha: np.ndarray, direction: np.ndarray) -> np.ndarray:
    """Null vector g with <alpha,g> = 1 and <g,direction> = 0.

    ``alpha`` must be null and Lorentz-orthogonal to ``direction``;
    inputs of shape (..., 3) are processed in batch.  The result is
    insensitive to the scale and sign of ``direction``.
    """
    v = np.cross(alpha, direction * METRIC_DIAG)
    av = lorentz_dot(alpha, v)[..., None]
    vv = lorentz_dot(v, v)[..., None]
    return (-vv * alpha + 2.0 * av * v) / (2.0 * av * av)


def _frame_fields(curve: NullCurve, s: np.ndarray, eps_null: float,
                  eps_gram: float) -> dict[str, np.ndarray]:
    """Vectorized frame construction on an array of parameter values."""
    a1 = curve.evaluate(s, 1)
    a2 = curve.evaluate(s, 2)
    a3 = curve.evaluate(s, 3)

    nul = np.abs(lorentz_dot(a1, a1))
    scale1 = np.maximum(np.sum(a1 * a1, axis=-1), 1.0)
    bad = nul > eps_null * scale1
    if np.any(bad):
        k = int(np.argmax(bad))
        raise NotNull(
            f"velocity not null at s={float(s[k]):g}: "
            f"<a',a'> = {float(lorentz_dot(a1[k], a1[k])):.3e}"
        )

    # a'' must be genuinely spacelike; <a'',a''> -> 0 exactly when a''
    # degenerates onto the tangent line (or vanishes), i.e. kappa -> 0.
    q2 = lorentz_dot(a2, a2)
    scale2 = np.maximum(np.sum(a2 * a2, axis=-1), 1.0)
    degen = q2 <= eps_gram * scale2
    if np.any(degen):
        k = int(np.argmax(degen))
        raise GeodesicDegeneracy(
            f"acceleration degenerate at s={float(s[k]):g} "
            f"(<a'',a''> = {float(q2[k]):.3e}); "
            "curvature is undefined"
        )

    gamma = gamma_from_plane(a1, a2)
    beta = lorentz_cross(a1, gamma)
    kappa = lorentz_dot(a2, beta)
    tau = -lorentz_dot(a3, gamma) / kappa

    # cross-check: differentiate the gamma field implicitly.  The three
    # defining relations give a linear system for gamma':
    #   <alpha, g'> = -<a'', gamma>,  <a'', g'> = -<a''', gamma>,
    #   <gamma, g'> = 0
    rows = np.stack([a1 * METRIC_DIAG, a2 * METRIC_DIAG, gamma * METRIC_DIAG], axis=-2)
    rhs = np.stack(
        [-lorentz_dot(a2, gamma), -lorentz_dot(a3, gamma), np.zeros(len(s))],
        axis=-1,
    )
    gamma_prime = np.linalg.solve(rows, rhs[..., None])[..., 0]
    tau_alt = lorentz_dot(gamma_prime, beta)

    return {
        "position": curve.evaluate(s, 0),
        "alpha": a1,
        "beta": beta,
        "gamma": gamma,
        "kappa": kappa,
        "tau": tau,
        "tau_alt": tau_alt,
    }


def compute_frame_at(curve: NullCurve, s: float, eps_null: float = DEFAULT_EPS_NULL,
                     eps_gram: float = DEFAULT_EPS_GRAM) -> FrameSample:
    """Cartan frame, curvature and torsion at a single parameter value."""
    f = _frame_fields(curve, np.atleast_1d(float(s)), eps_null, eps_gram)
    return FrameSample(
        s=float(s),
        position=f["position"][0],
        alpha=f["alpha"][0],
        beta=f["beta"][0],
        gamma=f["gamma"][0],
        kappa=float(f["kappa"][0]),
        tau=float(f["tau"][0]),
        tau_alt=float(f["tau_alt"][0]),
    )


@dataclass
class FrameDiagnostics:
    max_relation_residual: float
    max_cross_residual: float
    max_tau_cross_dev: float
    continuity_breaks: list[int] = field(default_factory=list)


class FramedCurve:
    """Per-grid-point Cartan frames of a null curve."""

    def __init__(self, curve: NullCurve, grid: ParameterGrid, fields: dict,
                 diagnostics: FrameDiagnostics):
        self.curve = curve
        self.grid = grid
        self.position = fields["position"]
        self.alpha = fields["alpha"]
        self.beta = fields["beta"]
        self.gamma = fields["gamma"]
        self.kappa = fields["kappa"]
        self.tau = fields["tau"]
        self.tau_alt = fields["tau_alt"]
        self.diagnostics = diagnostics

    def __len__(self) -> int:
        return len(self.grid)

    @property
    def s(self) -> np.ndarray:
        return self.grid.values

    @property
    def f_ratio(self) -> np.ndarray:
        """Torsion-to-curvature ratio along the grid."""
        return self.tau / self.kappa

    def sample(self, i: int) -> FrameSample:
        return FrameSample(
            s=float(self.s[i]),
            position=self.position[i],
            alpha=self.alpha[i],
            beta=self.beta[i],
            gamma=self.gamma[i],
            kappa=float(self.kappa[i]),
            tau=float(self.tau[i]),
            tau_alt=float(self.tau_alt[i]),
        )

    def frame_at(self, s: float) -> FrameSample:
        """Recompute the frame at an arbitrary parameter (no interpolation)."""
        return compute_frame_at(self.curve, s)


def frame_curve(curve: NullCurve, grid, eps_null: float = DEFAULT_EPS_NULL,
                eps_gram: float = DEFAULT_EPS_GRAM) -> FramedCurve:
    """Frame a curve on a whole grid, with continuity checks on gamma.

    The construction is pointwise unique, so a discontinuous jump in the
    gamma field signals numerical trouble (for instance near-vanishing
    curvature); such indices are recorded in the diagnostics, never
    silently accepted.
    """
    g = as_grid(grid)
    f = _frame_fields(curve, g.values, eps_null, eps_gram)

    rel = _relation_residual_arrays(f["alpha"], f["beta"], f["gamma"])
    cross = np.max(np.abs(f["beta"] - lorentz_cross(f["alpha"], f["gamma"])))
    tau_dev = np.max(np.abs(f["tau"] - f["tau_alt"]))

    jumps = euclid_norm(np.diff(f["gamma"], axis=0))
    scale = 1.0 + euclid_norm(f["gamma"][:-1])
    breaks = [int(i) for i in np.nonzero(jumps > _CONTINUITY_JUMP * scale)[0]]

    diag = FrameDiagnostics(
        max_relation_residual=float(np.max(rel)),
        max_cross_residual=float(cross),
        max_tau_cross_dev=float(tau_dev),
        continuity_breaks=breaks,
    )
    return FramedCurve(curve, g, f, diag)


def _relation_residual_arrays(alpha, beta, gamma) -> np.ndarray:
    return np.stack(
        [
            np.abs(lorentz_dot(alpha, alpha)),
            np.abs(lorentz_dot(gamma, gamma)),
            np.abs(lorentz_dot(beta, beta) - 1.0),
            np.abs(lorentz_dot(alpha, gamma) - 1.0),
            np.abs(lorentz_dot(alpha, beta)),
            np.abs(lorentz_dot(gamma, beta)),
        ]
    )


@dataclass
class FrenetResiduals:
    """Deviation of framed data from the frame evolution equations."""

    alpha_eq: float      # max ||alpha' - kappa beta||
    gamma_eq: float      # max ||gamma' - tau beta||
    beta_eq: float       # max ||beta' + tau alpha + kappa gamma||
    relations: float     # max violation of the six scalar relations

    @property
    def max_equation_residual(self) -> float:
        return max(self.alpha_eq, self.gamma_eq, self.beta_eq)


def frenet_residuals(fc: FramedCurve) -> FrenetResiduals:
    """Check the frame ODEs by differencing the frame arrays on the grid."""
    s = fc.s
    da = fd.derivative_stencil(fc.alpha, s, 1)
    dg = fd.derivative_stencil(fc.gamma, s, 1)
    db = fd.derivative_stencil(fc.beta, s, 1)
    k = fc.kappa[:, None]
    t = fc.tau[:, None]
    return FrenetResiduals(
        alpha_eq=float(np.max(euclid_norm(da - k * fc.beta))),
        gamma_eq=float(np.max(euclid_norm(dg - t * fc.beta))),
        beta_eq=float(np.max(euclid_norm(db + t * fc.alpha + k * fc.gamma))),
        relations=float(np.max(_relation_residual_arrays(fc.alpha, fc.beta, fc.gamma))),
    )


# --- frame-system integration ---------------------------------------------


def standard_frame(position=(0.0, 0.0, 0.0), kappa: float = np.nan,
                   tau: float = np.nan) -> FrameSample:
    """A reference initial frame satisfying the scalar relations exactly."""
    return FrameSample(
        s=0.0,
        position=np.asarray(position, dtype=float),
        alpha=np.array([1.0, 0.0, 1.0]),
        beta=np.array([0.0, 1.0, 0.0]),
        gamma=np.array([-0.5, 0.0, 0.5]),
        kappa=kappa,
        tau=tau,
    )


def _as_scalar_fn(f):
    if callable(f):
        return f
    c = float(f)
    return lambda s: c * np.ones_like(np.asarray(s, dtype=float))


def _fn_derivative(fn, s, h_rel: float = 1e-6):
    """Order-4 central difference of a scalar callable."""
    s = np.asarray(s, dtype=float)
    h = h_rel * np.maximum(1.0, np.abs(s))
    return (
        -fn(s + 2 * h) + 8 * fn(s + h) - 8 * fn(s - h) + fn(s - 2 * h)
    ) / (12.0 * h)


class FrenetIntegratedCurve(NullCurve):
    """Curve recovered from its curvature and torsion by integration."""

    backend = "frenet"

    def __init__(self, sol, kappa_fn, tau_fn, domain: tuple[float, float]):
        super().__init__(domain, max_derivative_order=3)
        self._sol = sol
        self._kappa = kappa_fn
        self._tau = tau_fn

    def _state(self, s: np.ndarray) -> np.ndarray:
        return self._sol(s).T.reshape(len(s), 4, 3)

    def _eval(self, s: np.ndarray, order: int) -> np.ndarray:
        st = self._state(s)
        pos, alpha, gamma, beta = st[:, 0], st[:, 1], st[:, 2], st[:, 3]
        if order == 0:
            return pos
        if order == 1:
            return alpha
        k = np.asarray(self._kappa(s), dtype=float)[:, None]
        if order == 2:
            return k * beta
        kp = np.asarray(_fn_derivative(self._kappa, s), dtype=float)[:, None]
        t = np.asarray(self._tau(s), dtype=float)[:, None]
        return kp * beta + k * (-t * alpha - k * gamma)


def _check_initial_frame(initial: FrameSample, tol: float = 1e-10) -> None:
    worst = initial.max_relation_residual()
    if worst > tol:
        raise BadInitialFrame(
            f"initial frame violates the scalar relations by {worst:.3e} (> {tol:.1e})"
        )
    if initial.cross_residual() > 1e-9:
        raise BadInitialFrame("initial beta is not the product of alpha and gamma")


def integrate_frenet(kappa, tau, initial: FrameSample, grid,
                     rtol: float = 1e-10, atol: float = 1e-12,
                     renormalize: bool = False,
                     eps_kappa: float = DEFAULT_EPS_KAPPA) -> FramedCurve:
    """Integrate the frame system plus a' = alpha from an initial frame.

    Returns a :class:`FramedCurve` whose ``curve`` attribute is a full
    curve backend (positions and derivatives anywhere in the grid span).
    ``renormalize`` re-projects the frame onto the defining relations at
    every grid node; by default drift is left in as a quality metric.
    """
    g = as_grid(grid)
    kappa_fn = _as_scalar_fn(kappa)
    tau_fn = _as_scalar_fn(tau)
    _check_initial_frame(initial)

    kv = np.asarray(kappa_fn(g.values), dtype=float)
    if np.all(np.abs(kv) < eps_kappa):
        raise GeodesicDegeneracy(
            "curvature is identically zero: the integrated frame would be meaningless"
        )

    def rhs(s, y):
        alpha, gamma, beta = y[3:6], y[6:9], y[9:12]
        k = kappa_fn(s)
        t = tau_fn(s)
        return np.concatenate([alpha, k * beta, t * beta, -t * alpha - k * gamma])

    y0 = np.concatenate([initial.position, initial.alpha, initial.gamma, initial.beta])
    span = g.span

    if not renormalize:
        sol = solve_ivp(rhs, span, y0, method="DOP853", rtol=rtol, atol=atol,
                        dense_output=True)
        if not sol.success:
            raise IntegratorFailure(sol.message)
        dense = sol.sol
    else:
        dense = _integrate_renormalized(rhs, y0, g, rtol, atol)

    curve = FrenetIntegratedCurve(dense, kappa_fn, tau_fn, span)
    states = dense(g.values).T.reshape(len(g), 4, 3)
    fields = {
        "position": states[:, 0],
        "alpha": states[:, 1],
        "gamma": states[:, 2],
        "beta": states[:, 3],
        "kappa": kv,
        "tau": np.asarray(tau_fn(g.values), dtype=float),
    }
    fields["tau_alt"] = fields["tau"].copy()
    rel = _relation_residual_arrays(fields["alpha"], fields["beta"], fields["gamma"])
    cross = np.max(np.abs(fields["beta"] - lorentz_cross(fields["alpha"], fields["gamma"])))
    diag = FrameDiagnostics(
        max_relation_residual=float(np.max(rel)),
        max_cross_residual=float(cross),
        max_tau_cross_dev=0.0,
    )
    return FramedCurve(curve, g, fields, diag)


class _PiecewiseDense:
    """Dense output stitched from per-segment solutions."""

    def __init__(self, segments, breakpoints):
        self._segments = segments
        self._breaks = np.asarray(breakpoints, dtype=float)

    def __call__(self, s):
        s = np.atleast_1d(np.asarray(s, dtype=float))
        idx = np.clip(np.searchsorted(self._breaks, s, side="right") - 1, 0,
                      len(self._segments) - 1)
        out = np.empty((12, len(s)))
        for j in np.unique(idx):
            m = idx == j
            out[:, m] = self._segments[j](s[m])
        return out


def renormalize_frame_state(y: np.ndarray) -> np.ndarray:
    """Project an approximate frame state exactly onto the relations."""
    pos, alpha, gamma, beta = y[0:3], y[3:6], y[6:9], y[9:12]
    a = alpha.copy()
    spatial = np.hypot(a[1], a[2])
    a[0] = np.copysign(spatial, a[0])
    g = gamma_from_plane(a, beta)
    b = lorentz_cross(a, g)
    return np.concatenate([pos, a, g, b])


def _integrate_renormalized(rhs, y0, g: ParameterGrid, rtol, atol):
    segments, breaks = [], [g.values[0]]
    y = y0
    for lo, hi in zip(g.values[:-1], g.values[1:]):
        sol = solve_ivp(rhs, (lo, hi), y, method="DOP853", rtol=rtol, atol=atol,
                        dense_output=True)
        if not sol.success:
            raise IntegratorFailure(sol.message)
        segments.append(sol.sol)
        breaks.append(hi)
        y = renormalize_frame_state(sol.y[:, -1])
    return _PiecewiseDense(segments, breaks[:-1])


# --- classification --------------------------------------------------------

GEODESIC = "geodesic"
HELIX = "helix"
TORSION_FREE = "torsion_free"
GENERIC = "generic"


def classify(fc: FramedCurve, eps: float = 1e-6) -> list[str]:
    """Labels matching the framed curve, highest priority first.

    Helix: both invariants constant (stdev <= eps).  Torsion-free:
    max |tau| <= eps.  A curve can be both; all matching labels are
    reported.
    """
    labels = []
    if np.std(fc.kappa) <= eps and np.std(fc.tau) <= eps:
        labels.append(HELIX)
    if np.max(np.abs(fc.tau)) <= eps:
        labels.append(TORSION_FREE)
    return labels or [GENERIC]


def classify_curve(curve: NullCurve, grid, eps: float = 1e-6) -> list[str]:
    """Like :func:`classify` but detects geodesics before framing."""
    try:
        fc = frame_curve(curve, grid)
    except GeodesicDegeneracy:
        return [GEODESIC]
    return classify(fc, eps)
