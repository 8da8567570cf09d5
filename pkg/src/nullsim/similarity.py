"""Synthesis and detection of null similar curves under variable transformations.

Two framed null curves a(s_a), b(s_b) are *similar* when a strictly
increasing map s_a(s_b) with density lambda = ds_a/ds_b makes their
tangents coincide: alpha_a(s_a(s_b)) = alpha_b(s_b).  Synthesis
integrates a transported tangent field; detection offers four
equivalent criteria:

* tangent  — compare alpha fields directly under a given transformation;
* normal   — infer lambda = kappa_b/kappa_a, compare beta fields;
* binormal — infer lambda = tau_b/tau_a, compare gamma fields;
* ratio    — align by equal total curvature and compare f = tau/kappa
             (similarity itself is certified only when the initial
             frames agree at the anchor, via the tangent ODE).

All deviations are measured in the Euclidean norm of the coordinate
triples; the indefinite metric cannot measure residual sizes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp
from scipy.interpolate import CubicSpline

from .curves import AnalyticCurve, NullCurve, as_grid
from .errors import (
    AnchorRequired,
    DomainOverflow,
    GeodesicDegeneracy,
    IntegratorFailure,
    KappaVanishes,
    NonPositiveLambda,
    TauVanishes,
)
from .frame import FramedCurve, _frame_fields, _fn_derivative, gamma_from_plane
from .lorentz import euclid_norm, lorentz_cross, lorentz_dot
from .profiles import parse_profile
from .reparam import tangent_ode_init_from_frame, solve_tangent_ode, total_curvature

DEFAULT_TOL = 1e-5
_MIN_MATCHED_POINTS = 5


class VariableTransformation:
    """Monotone parameter map s_a(s_b) with positive density lambda.

    ``map_fn`` and ``density_fn`` must accept arrays.  ``s_b_domain`` is
    the (possibly truncated) interval on which the map is valid, and
    ``anchors = (s_a0, s_b0)`` the corresponding start points.
    """

    def __init__(self, map_fn, density_fn, s_b_domain, anchors, grid_n: int = 257):
        self._map = map_fn
        self._density = density_fn
        self.s_b_domain = (float(s_b_domain[0]), float(s_b_domain[1]))
        self.anchors = (float(anchors[0]), float(anchors[1]))
        if not self.s_b_domain[0] < self.s_b_domain[1]:
            raise DomainOverflow(
                f"empty transformation domain {self.s_b_domain!r}"
            )
        sb = np.linspace(*self.s_b_domain, grid_n)
        self.s_b_grid = sb
        self.lam = np.asarray(density_fn(sb), dtype=float)
        self.s_a_grid = np.asarray(map_fn(sb), dtype=float)
        if np.any(self.lam <= 0):
            k = int(np.argmax(self.lam <= 0))
            raise NonPositiveLambda(
                f"lambda({float(sb[k]):g}) = {float(self.lam[k]):g} <= 0"
            )
        if not np.all(np.diff(self.s_a_grid) > 0):
            raise NonPositiveLambda("transformed parameter is not strictly increasing")

    def map(self, s_b):
        return self._map(np.asarray(s_b, dtype=float))

    def density(self, s_b):
        return self._density(np.asarray(s_b, dtype=float))

    def lambda_stats(self) -> dict[str, float]:
        return {
            "min": float(np.min(self.lam)),
            "max": float(np.max(self.lam)),
            "mean": float(np.mean(self.lam)),
        }

    # -- constructors --------------------------------------------------

    @classmethod
    def identity(cls, domain) -> "VariableTransformation":
        dom = (float(domain[0]), float(domain[1]))
        return cls(
            map_fn=lambda s: np.asarray(s, dtype=float),
            density_fn=lambda s: np.ones_like(np.asarray(s, dtype=float)),
            s_b_domain=dom,
            anchors=(dom[0], dom[0]),
        )

    @classmethod
    def from_density(cls, lam, s_b_domain, s_a0: float, s_b0: float | None = None,
                     rtol: float = 1e-12) -> "VariableTransformation":
        """Integrate ds_a/ds_b = lambda(s_b) from the anchor."""
        lam_fn = parse_profile(lam)
        lo, hi = float(s_b_domain[0]), float(s_b_domain[1])
        if s_b0 is None:
            s_b0 = lo
        _require_positive(lam_fn, (lo, hi))

        def rhs(t, y):
            return np.atleast_1d(lam_fn(t))

        dense = _bidirectional_dense(rhs, float(s_b0), np.array([float(s_a0)]),
                                     lo, hi, rtol=rtol)

        return cls(
            map_fn=lambda s: dense(s)[0],
            density_fn=lambda s: np.asarray(lam_fn(np.asarray(s, dtype=float)), dtype=float),
            s_b_domain=(lo, hi),
            anchors=(s_a0, s_b0),
        )

    @classmethod
    def from_invariant_ratio(cls, num_of_sb, den_of_sa, anchors, s_b_domain,
                             a_domain, small_error: type, eps_small: float = 1e-8,
                             rtol: float = 1e-10) -> "VariableTransformation":
        """Solve ds_a/ds_b = num(s_b) / den(s_a) from an anchor pair.

        Terminates at the walls of ``a_domain``; the resulting map covers
        the reachable (matched) part of ``s_b_domain``.  ``small_error``
        is raised when the denominator invariant falls below
        ``eps_small`` in magnitude.
        """
        s_a0, s_b0 = float(anchors[0]), float(anchors[1])
        lo, hi = float(s_b_domain[0]), float(s_b_domain[1])
        a_lo, a_hi = float(a_domain[0]), float(a_domain[1])

        def ratio(t, y):
            den = float(den_of_sa(float(np.clip(y[0], a_lo, a_hi))))
            if abs(den) < eps_small:
                raise small_error(f"denominator invariant ~ 0 near s_a={float(y[0]):g}")
            r = float(num_of_sb(float(t))) / den
            if r <= 0:
                raise NonPositiveLambda(
                    f"inferred lambda({t:g}) = {r:g} <= 0"
                )
            return np.atleast_1d(r)

        ratio(s_b0, np.array([s_a0]))  # validate at the anchor up front

        pad = 1e-12 * max(abs(a_lo), abs(a_hi), 1.0)

        def ev_hi(t, y):
            return y[0] - (a_hi + pad)

        def ev_lo(t, y):
            return y[0] - (a_lo - pad)

        ev_hi.terminal = True
        ev_hi.direction = 1.0
        ev_lo.terminal = True
        ev_lo.direction = -1.0

        dense, m_lo, m_hi = _bidirectional_dense(
            ratio, s_b0, np.array([s_a0]), lo, hi, rtol=rtol,
            events=[ev_hi, ev_lo], return_reach=True,
        )

        def map_fn(s):
            return np.clip(dense(s)[0], a_lo, a_hi)

        def density_fn(s):
            s = np.atleast_1d(np.asarray(s, dtype=float))
            num = np.asarray(num_of_sb(s), dtype=float)
            den = np.asarray(den_of_sa(map_fn(s)), dtype=float)
            return num / den

        return cls(map_fn, density_fn, (m_lo, m_hi), (s_a0, s_b0))


def _bidirectional_dense(rhs, t0, y0, lo, hi, rtol, events=None, return_reach=False):
    """Dense ODE solution covering [lo, hi] integrated outward from t0."""
    t0 = float(np.clip(t0, lo, hi))
    solutions = {}
    reach_lo, reach_hi = t0, t0
    for side, target in (("fwd", hi), ("bwd", lo)):
        if (target > t0) if side == "fwd" else (target < t0):
            sol = solve_ivp(rhs, (t0, target), y0, method="DOP853",
                            rtol=rtol, atol=1e-13, dense_output=True, events=events)
            if not sol.success and sol.status != 1:
                raise IntegratorFailure(sol.message)
            solutions[side] = sol.sol
            if side == "fwd":
                reach_hi = float(sol.t[-1])
            else:
                reach_lo = float(sol.t[-1])

    def dense(s):
        s = np.atleast_1d(np.asarray(s, dtype=float))
        out = np.empty((len(y0), len(s)))
        fwd = s >= t0
        if np.any(fwd):
            out[:, fwd] = solutions["fwd"](s[fwd]) if "fwd" in solutions else y0[:, None]
        if np.any(~fwd):
            out[:, ~fwd] = solutions["bwd"](s[~fwd]) if "bwd" in solutions else y0[:, None]
        return out

    if return_reach:
        return dense, reach_lo, reach_hi
    return dense


def _require_positive(lam_fn, domain, n: int = 257) -> None:
    probe = np.linspace(domain[0], domain[1], n)
    vals = np.asarray(lam_fn(probe), dtype=float)
    if np.any(vals <= 0):
        k = int(np.argmax(vals <= 0))
        raise NonPositiveLambda(f"lambda({float(probe[k]):g}) = {float(vals[k]):g} <= 0")


@dataclass
class SimilarityReport:
    """Verdict and residual statistics for one similarity criterion."""

    criterion: str
    passed: bool
    tol: float
    max_vector_dev: float
    max_scalar_dev: float = float("nan")
    lambda_stats: dict = field(default_factory=dict)
    matched_span: tuple[float, float] = (float("nan"), float("nan"))
    n_points: int = 0
    details: dict = field(default_factory=dict)
    diagnostic_samples: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "criterion": self.criterion,
            "passed": self.passed,
            "tol": self.tol,
            "max_vector_dev": self.max_vector_dev,
            "max_scalar_dev": self.max_scalar_dev,
            "lambda_stats": self.lambda_stats,
            "matched_span": list(self.matched_span),
            "n_points": self.n_points,
            "details": self.details,
            "diagnostic_samples": self.diagnostic_samples,
        }


def _source_curve(curve_or_framed) -> NullCurve:
    if isinstance(curve_or_framed, FramedCurve):
        return curve_or_framed.curve
    return curve_or_framed


def synthesize_similar(a, lam, s_b_domain, anchor=(0.0, 0.0, 0.0),
                       s_a0: float | None = None, dlam=None,
                       rtol: float = 1e-12) -> AnalyticCurve:
    """Build the similar partner of ``a`` for a given density lambda.

    The new curve integrates the transported tangent,
    b(s_b) = anchor + integral of alpha_a(s_a(s_b)), so its tangent
    equals the tangent of ``a`` at corresponding parameters by
    construction.  Returns a fully differentiable curve carrying the
    realized transformation in its ``transformation`` attribute.
    """
    curve_a = _source_curve(a)
    lam_fn = parse_profile(lam)
    lo, hi = float(s_b_domain[0]), float(s_b_domain[1])
    if not lo < hi:
        raise ValueError(f"degenerate synthesis domain [{lo}, {hi}]")
    if s_a0 is None:
        s_a0 = curve_a.domain[0]
    _require_positive(lam_fn, (lo, hi))

    # cheap range precheck before the accurate joint integration
    probe = np.linspace(lo, hi, 1025)
    lam_probe = np.asarray(lam_fn(probe), dtype=float)
    s_a_probe = s_a0 + CubicSpline(probe, lam_probe).antiderivative()(probe)
    a_lo, a_hi = curve_a.domain
    slack = 1e-9 * max(a_hi - a_lo, 1.0)
    if np.min(s_a_probe) < a_lo - slack or np.max(s_a_probe) > a_hi + slack:
        raise DomainOverflow(
            f"transformed parameter range [{float(np.min(s_a_probe)):g}, "
            f"{float(np.max(s_a_probe)):g}] leaves source domain [{a_lo:g}, {a_hi:g}]"
        )

    def rhs(t, y):
        s_a = float(np.clip(y[0], a_lo, a_hi))
        alpha = curve_a.evaluate(s_a, 1)
        return np.concatenate([np.atleast_1d(lam_fn(t)), alpha])

    y0 = np.concatenate([[float(s_a0)], np.asarray(anchor, dtype=float)])
    dense = _bidirectional_dense(rhs, lo, y0, lo, hi, rtol=rtol)

    transformation = VariableTransformation(
        map_fn=lambda s: np.clip(dense(s)[0], a_lo, a_hi),
        density_fn=lambda s: np.asarray(lam_fn(np.asarray(s, dtype=float)), dtype=float),
        s_b_domain=(lo, hi),
        anchors=(float(s_a0), lo),
    )

    dlam_fn = dlam if dlam is not None else (lambda s: _fn_derivative(lam_fn, s))

    def e0(s):
        return dense(s)[1:4].T

    def e1(s):
        return curve_a.evaluate(transformation.map(s), 1)

    def e2(s):
        lamv = np.asarray(lam_fn(s), dtype=float)[:, None]
        return lamv * curve_a.evaluate(transformation.map(s), 2)

    def e3(s):
        sa = transformation.map(s)
        lamv = np.asarray(lam_fn(s), dtype=float)[:, None]
        dlv = np.asarray(dlam_fn(s), dtype=float)[:, None]
        return dlv * curve_a.evaluate(sa, 2) + lamv ** 2 * curve_a.evaluate(sa, 3)

    curve_b = AnalyticCurve([e0, e1, e2, e3], (lo, hi))
    curve_b.transformation = transformation
    return curve_b


def _matched_grid(fb: FramedCurve, T: VariableTransformation) -> np.ndarray:
    lo, hi = T.s_b_domain
    vals = fb.grid.values
    slack = 1e-12 * max(abs(lo), abs(hi), 1.0)
    sel = vals[(vals >= lo - slack) & (vals <= hi + slack)]
    if len(sel) < _MIN_MATCHED_POINTS:
        raise DomainOverflow(
            f"matched region [{lo:g}, {hi:g}] covers only {len(sel)} grid points"
        )
    return np.clip(sel, lo, hi)


def _diag_rows(s_b, s_a, lam, dev, keep: int = 9) -> list[dict]:
    idx = np.linspace(0, len(s_b) - 1, min(keep, len(s_b))).astype(int)
    return [
        {
            "s_b": float(s_b[i]),
            "s_a": float(s_a[i]),
            "lambda": float(lam[i]),
            "dev": float(dev[i]),
        }
        for i in idx
    ]


def check_tangent_similarity(fa, fb: FramedCurve, T: VariableTransformation,
                             tol: float = DEFAULT_TOL) -> SimilarityReport:
    """Compare tangent fields under a given transformation."""
    curve_a = _source_curve(fa)
    s_b = _matched_grid(fb, T)
    s_a = T.map(s_b)
    dev = euclid_norm(curve_a.evaluate(s_a, 1) - fb.curve.evaluate(s_b, 1))
    worst = float(np.max(dev))
    return SimilarityReport(
        criterion="tangent",
        passed=worst <= tol,
        tol=tol,
        max_vector_dev=worst,
        lambda_stats=T.lambda_stats(),
        matched_span=(float(s_b[0]), float(s_b[-1])),
        n_points=len(s_b),
        diagnostic_samples=_diag_rows(s_b, s_a, T.density(s_b), dev),
    )


def _invariant_of(framed: FramedCurve, name: str):
    """Pointwise invariant evaluator (exact recomputation, no interpolation).

    Scalar in, scalar out; array in, array out.
    """

    def fn(s):
        arr = np.atleast_1d(np.asarray(s, dtype=float))
        vals = _frame_fields(framed.curve, arr, eps_null=1e-6, eps_gram=1e-12)[name]
        return float(vals[0]) if np.ndim(s) == 0 else vals

    return fn


def _criterion_core(fa: FramedCurve, fb: FramedCurve, anchors, invariant: str,
                    small_error: type, eps_small: float):
    if anchors is None:
        raise AnchorRequired(
            "detection needs an explicit anchor pair (s_a0, s_b0); "
            "suggest_anchor() offers a heuristic scan"
        )
    s_a0, s_b0 = float(anchors[0]), float(anchors[1])
    _check_inside(fa.curve.domain, s_a0, "s_a0")
    _check_inside(fb.curve.domain, s_b0, "s_b0")

    num = _invariant_of(fb, invariant)
    den = _invariant_of(fa, invariant)
    try:
        T = VariableTransformation.from_invariant_ratio(
            num, den, (s_a0, s_b0), fb.curve.domain, fa.curve.domain,
            small_error=small_error, eps_small=eps_small,
        )
    except GeodesicDegeneracy as exc:  # curvature collapsed while probing
        raise small_error(str(exc)) from exc

    s_b = _matched_grid(fb, T)
    s_a = T.map(s_b)
    fields_a = _frame_fields(fa.curve, s_a, eps_null=1e-6, eps_gram=1e-12)
    fields_b = _frame_fields(fb.curve, s_b, eps_null=1e-6, eps_gram=1e-12)
    return T, s_b, s_a, fields_a, fields_b


def _check_inside(domain, value, name):
    lo, hi = domain
    slack = 1e-12 * max(abs(lo), abs(hi), 1.0)
    if not (lo - slack <= value <= hi + slack):
        raise AnchorRequired(f"{name}={value!r} outside domain [{lo}, {hi}]")


def normal_criterion(fa: FramedCurve, fb: FramedCurve, tol: float = DEFAULT_TOL,
                     anchors=None, eps_kappa: float = 1e-8
                     ) -> tuple[SimilarityReport, VariableTransformation]:
    """Similarity via equality of the spacelike normal fields.

    The transformation is inferred from the curvature ratio
    lambda = kappa_b / kappa_a by integrating ds_a/ds_b; the verdict
    compares the beta fields, and the tangent fields are cross-checked
    in the report details.
    """
    T, s_b, s_a, fields_a, fields_b = _criterion_core(
        fa, fb, anchors, "kappa", KappaVanishes, eps_kappa
    )
    beta_dev = euclid_norm(fields_a["beta"] - fields_b["beta"])
    tangent_dev = euclid_norm(fields_a["alpha"] - fields_b["alpha"])
    worst = float(np.max(beta_dev))
    worst_tan = float(np.max(tangent_dev))
    report = SimilarityReport(
        criterion="normal",
        passed=worst <= tol,
        tol=tol,
        max_vector_dev=worst,
        max_scalar_dev=float(np.max(np.abs(fields_b["kappa"]
                                           - T.density(s_b) * fields_a["kappa"]))),
        lambda_stats=T.lambda_stats(),
        matched_span=(float(s_b[0]), float(s_b[-1])),
        n_points=len(s_b),
        details={
            "tangent_dev": worst_tan,
            "cross_check_ok": bool((worst <= tol) == (worst_tan <= tol)),
        },
        diagnostic_samples=_diag_rows(s_b, s_a, T.density(s_b), beta_dev),
    )
    return report, T


def binormal_criterion(fa: FramedCurve, fb: FramedCurve, tol: float = DEFAULT_TOL,
                       anchors=None, eps_tau: float = 1e-8
                       ) -> tuple[SimilarityReport, VariableTransformation]:
    """Similarity via equality of the second null frame fields.

    The transformation is inferred from the torsion ratio
    lambda = tau_b / tau_a.  Alongside the gamma comparison the report
    carries the two derived consistency residuals: equality of the beta
    fields and recovery of the tangent from (gamma, beta) of the
    transported frame.
    """
    T, s_b, s_a, fields_a, fields_b = _criterion_core(
        fa, fb, anchors, "tau", TauVanishes, eps_tau
    )
    gamma_dev = euclid_norm(fields_a["gamma"] - fields_b["gamma"])
    beta_dev = euclid_norm(fields_a["beta"] - fields_b["beta"])
    alpha_rec = gamma_from_plane(fields_a["gamma"], fields_a["beta"])
    alpha_rec_dev = euclid_norm(alpha_rec - fields_b["alpha"])
    worst = float(np.max(gamma_dev))
    report = SimilarityReport(
        criterion="binormal",
        passed=worst <= tol,
        tol=tol,
        max_vector_dev=worst,
        max_scalar_dev=float(np.max(np.abs(fields_b["tau"]
                                           - T.density(s_b) * fields_a["tau"]))),
        lambda_stats=T.lambda_stats(),
        matched_span=(float(s_b[0]), float(s_b[-1])),
        n_points=len(s_b),
        details={
            "beta_dev": float(np.max(beta_dev)),
            "alpha_recovery_dev": float(np.max(alpha_rec_dev)),
        },
        diagnostic_samples=_diag_rows(s_b, s_a, T.density(s_b), gamma_dev),
    )
    return report, T


def ratio_criterion(fa: FramedCurve, fb: FramedCurve, tol: float = DEFAULT_TOL,
                    anchors=None, n: int | None = None) -> SimilarityReport:
    """Similarity via the invariant ratio f = tau/kappa on aligned charts.

    Both curves are charted by cumulative curvature; chart origins are
    pinned at the anchors so equal chart positions correspond.  Equality
    of f alone is reported as ``ratio_equal``; the ``passed`` verdict
    additionally requires matching initial frames at the anchor, in
    which case the tangent ODE is integrated once from the shared data
    and compared against both tangent fields.
    """
    if anchors is None:
        raise AnchorRequired("ratio criterion needs an explicit anchor pair")
    s_a0, s_b0 = float(anchors[0]), float(anchors[1])
    _check_inside(fa.curve.domain, s_a0, "s_a0")
    _check_inside(fb.curve.domain, s_b0, "s_b0")

    chart_a = total_curvature(fa)
    chart_b = total_curvature(fb)
    pa0 = float(chart_a.phi_of_s(s_a0))
    pb0 = float(chart_b.phi_of_s(s_b0))
    a_lo, a_hi = chart_a.phi_span
    b_lo, b_hi = chart_b.phi_span
    lo = max(a_lo - pa0, b_lo - pb0)
    hi = min(a_hi - pa0, b_hi - pb0)
    if not lo < hi:
        raise DomainOverflow("aligned chart ranges do not overlap")

    if n is None:
        n = min(len(fa), len(fb))
    phi = np.linspace(lo, hi, max(n, _MIN_MATCHED_POINTS))
    f_a = chart_a.f_of_phi(phi + pa0)
    f_b = chart_b.f_of_phi(phi + pb0)
    f_dev = float(np.max(np.abs(f_a - f_b)))
    ratio_equal = f_dev <= tol

    sample_a = fa.frame_at(s_a0)
    sample_b = fb.frame_at(s_b0)
    frame_gap = max(
        float(np.max(np.abs(sample_a.alpha - sample_b.alpha))),
        float(np.max(np.abs(sample_a.beta - sample_b.beta))),
        float(np.max(np.abs(sample_a.gamma - sample_b.gamma))),
    )
    frames_agree = frame_gap <= tol

    ode_dev_a = ode_dev_b = float("nan")
    similar = False
    if ratio_equal and frames_agree:
        init = tangent_ode_init_from_frame(sample_a)

        def f_fn(p):
            # clip: derivative probes may overshoot the chart edge by O(h)
            p = np.clip(np.asarray(p, dtype=float), lo, hi)
            return chart_a.f_of_phi(p + pa0)

        devs_a, devs_b = [], []
        for side_grid in _split_at_zero(phi):
            tf = solve_tangent_ode(f_fn, None, init, side_grid)
            devs_a.append(np.max(euclid_norm(tf.alpha - chart_a.alpha_of_phi(side_grid + pa0))))
            devs_b.append(np.max(euclid_norm(tf.alpha - chart_b.alpha_of_phi(side_grid + pb0))))
        ode_dev_a = float(max(devs_a))
        ode_dev_b = float(max(devs_b))
        similar = ode_dev_a <= tol and ode_dev_b <= tol

    return SimilarityReport(
        criterion="ratio",
        passed=similar,
        tol=tol,
        max_vector_dev=max(ode_dev_a, ode_dev_b) if similar else float("nan"),
        max_scalar_dev=f_dev,
        matched_span=(lo, hi),
        n_points=len(phi),
        details={
            "ratio_equal": ratio_equal,
            "frames_agree": frames_agree,
            "frame_gap": frame_gap,
            "ode_dev_a": ode_dev_a,
            "ode_dev_b": ode_dev_b,
        },
    )


def _split_at_zero(phi: np.ndarray) -> list[np.ndarray]:
    """Split an aligned chart grid into runs starting at the anchor (phi=0)."""
    out = []
    above = phi[phi >= 0.0]
    if len(above) >= 2:
        out.append(np.concatenate([[0.0], above[above > 0.0]]))
    below = phi[phi <= 0.0]
    if len(below) >= 2:
        out.append(np.concatenate([[0.0], below[below < 0.0][::-1]]))
    if not out:
        raise DomainOverflow("aligned overlap too small around the anchor")
    return out


@dataclass
class ScalingReport:
    """Pointwise residuals of the invariant transport rule."""

    kappa_residual: float
    tau_residual: float
    tol: float
    passed: bool
    n_points: int


def curvature_scaling_check(fa: FramedCurve, fb: FramedCurve,
                            T: VariableTransformation,
                            tol: float = DEFAULT_TOL) -> ScalingReport:
    """Check kappa_b = lambda kappa_a and tau_b = lambda tau_a under T."""
    s_b = _matched_grid(fb, T)
    s_a = T.map(s_b)
    lam = np.asarray(T.density(s_b), dtype=float)
    fields_a = _frame_fields(fa.curve, s_a, eps_null=1e-6, eps_gram=1e-12)
    fields_b = _frame_fields(fb.curve, s_b, eps_null=1e-6, eps_gram=1e-12)
    k_res = float(np.max(np.abs(fields_b["kappa"] - lam * fields_a["kappa"])))
    t_res = float(np.max(np.abs(fields_b["tau"] - lam * fields_a["tau"])))
    return ScalingReport(
        kappa_residual=k_res,
        tau_residual=t_res,
        tol=tol,
        passed=k_res <= tol and t_res <= tol,
        n_points=len(s_b),
    )


@dataclass
class BertrandResult:
    """Linear-dependence test of the two spacelike normal fields."""

    dependent: bool
    max_cross_norm: float
    factors: np.ndarray
    tol: float

    @property
    def unit_factor(self) -> bool:
        """True when the dependence factor is identically +1."""
        return self.dependent and bool(np.max(np.abs(self.factors - 1.0)) <= self.tol)


def is_bertrand_pair(fa: FramedCurve, fb: FramedCurve, T: VariableTransformation,
                     tol: float = 1e-6) -> BertrandResult:
    """Test whether the normal fields are linearly dependent under T.

    Dependence (vanishing vector product) is weaker than equality; the
    pointwise factor <beta_a, beta_b> is returned so callers can tell
    the factor +1 case apart.
    """
    s_b = _matched_grid(fb, T)
    s_a = T.map(s_b)
    fields_a = _frame_fields(fa.curve, s_a, eps_null=1e-6, eps_gram=1e-12)
    fields_b = _frame_fields(fb.curve, s_b, eps_null=1e-6, eps_gram=1e-12)
    cross = euclid_norm(lorentz_cross(fields_a["beta"], fields_b["beta"]))
    factors = lorentz_dot(fields_a["beta"], fields_b["beta"])
    worst = float(np.max(cross))
    return BertrandResult(
        dependent=worst <= tol,
        max_cross_norm=worst,
        factors=factors,
        tol=tol,
    )


def suggest_anchor(fa: FramedCurve, fb: FramedCurve, n_scan: int = 101
                   ) -> tuple[float, float]:
    """Heuristic anchor search: fix s_b0 at b's start, scan s_a0.

    Coarse minimization of the tangent gap only; intended as a
    convenience for interactive use, not as part of any criterion.
    """
    s_b0 = float(fb.grid.values[0])
    alpha_b0 = fb.curve.evaluate(s_b0, 1)
    cand = np.linspace(*fa.curve.domain, n_scan)
    gaps = euclid_norm(fa.curve.evaluate(cand, 1) - alpha_b0[None, :])
    return float(cand[int(np.argmin(gaps))]), s_b0
