"""Distinguished families of null curves and their closure under synthesis.

Generators for straight null lines, torsion-free null curves, and null
helices (constant invariants), plus executable checks that synthesizing
a similar partner keeps each family membership: lines stay lines for
any admissible density, zero torsion stays zero, and helices stay
helices under constant densities (a variable density scales both
invariants pointwise, so only the ratio f survives it).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .curves import AnalyticCurve, ParameterGrid, line_curve, nullity_check
from .errors import DomainOverflow, GeodesicDegeneracy, NotNullDirection
from .frame import (
    FrameSample,
    FramedCurve,
    classify,
    frame_curve,
    integrate_frenet,
    standard_frame,
    HELIX,
)
from .lorentz import CausalCharacter, as_vec3, causal_character, euclid_norm
from .profiles import parse_profile
from .similarity import synthesize_similar

DEFAULT_DOMAIN = (0.0, 2.0 * np.pi)
DEFAULT_N = 801


def make_null_geodesic(p0, d, domain=DEFAULT_DOMAIN) -> AnalyticCurve:
    """Straight null line a(s) = p0 + s*d."""
    d = as_vec3(d, "direction")
    if causal_character(d, relative=True) is not CausalCharacter.NULL:
        raise NotNullDirection(f"direction {d.tolist()} is not null (or is zero)")
    return line_curve(as_vec3(p0, "point"), d, domain)


def make_null_helix(kappa0: float, tau0: float, initial: FrameSample | None = None,
                    domain=DEFAULT_DOMAIN, n: int = DEFAULT_N,
                    rtol: float = 1e-10) -> FramedCurve:
    """Null helix with constant invariants, recovered by re-framing.

    The curve is produced by integrating the frame system and then
    framed again from its position data, so the returned invariants are
    measured, not copied from the input.
    """
    if kappa0 == 0:
        raise GeodesicDegeneracy("a helix needs nonzero curvature")
    if initial is None:
        initial = standard_frame(kappa=kappa0, tau=tau0)
    grid = ParameterGrid.uniform(*domain, n)
    integrated = integrate_frenet(kappa0, tau0, initial, grid, rtol=rtol)
    return frame_curve(integrated.curve, grid)


def make_torsion_free_curve(kappa, initial: FrameSample | None = None,
                            domain=DEFAULT_DOMAIN, n: int = DEFAULT_N,
                            rtol: float = 1e-10) -> FramedCurve:
    """Null curve with vanishing torsion and prescribed curvature."""
    if initial is None:
        initial = standard_frame()
    grid = ParameterGrid.uniform(*domain, n)
    integrated = integrate_frenet(kappa, 0.0, initial, grid, rtol=rtol)
    return frame_curve(integrated.curve, grid)


@dataclass
class ClosureVerdict:
    """Outcome of one family-closure check."""

    kind: str
    passed: bool
    tol: float
    details: dict = field(default_factory=dict)


def _lambda_is_constant(lam_fn, domain, n: int = 97) -> bool:
    vals = np.asarray(lam_fn(np.linspace(*domain, n)), dtype=float)
    return bool(np.ptp(vals) <= 1e-12 * max(1.0, np.max(np.abs(vals))))


def closure_check(kind: str, params: dict, lam, tol: float = 1e-6,
                  domain_b=None, n: int = DEFAULT_N) -> ClosureVerdict:
    """Synthesize a similar partner and verify it stays in the family.

    ``kind`` is one of ``geodesic`` / ``torsion_free`` / ``helix``.
    Geodesics need no frames: the constant tangent makes membership
    stable under every admissible density.  For helices, a constant
    density must preserve both invariants; a variable density only
    preserves their ratio, which is then what gets verified.
    """
    lam_fn = parse_profile(lam)
    if kind == "geodesic":
        p0 = params.get("p0", (0.0, 0.0, 0.0))
        d = params.get("direction", (1.0, 1.0, 0.0))
        domain = tuple(params.get("domain", DEFAULT_DOMAIN))
        dom_b = tuple(domain_b) if domain_b is not None else domain
        # the line exists for every parameter: widen its declared domain
        # to whatever the density maps onto
        probe = np.linspace(*dom_b, 513)
        lam_vals = np.asarray(lam_fn(probe), dtype=float)
        reach = domain[0] + np.concatenate(
            [[0.0], np.cumsum(0.5 * (lam_vals[1:] + lam_vals[:-1]) * np.diff(probe))]
        )
        pad = 0.01 * max(1.0, np.ptp(reach))
        a = make_null_geodesic(
            p0, d, (min(domain[0], reach.min()) - pad, max(domain[1], reach.max()) + pad)
        )
        b = synthesize_similar(a, lam_fn, dom_b, s_a0=domain[0])
        grid = np.linspace(*dom_b, n)
        acc = euclid_norm(b.evaluate(grid, 2))
        nullity = nullity_check(b, grid)
        passed = bool(np.max(acc) <= tol and nullity.passed)
        return ClosureVerdict(
            kind=kind,
            passed=passed,
            tol=tol,
            details={
                "max_second_derivative": float(np.max(acc)),
                "nullity_residual": nullity.max_residual,
            },
        )

    if kind == "torsion_free":
        kappa = params.get("kappa", 1.0)
        domain = tuple(params.get("domain", DEFAULT_DOMAIN))
        fa = make_torsion_free_curve(parse_profile(kappa), domain=domain, n=n)
        dom_b = tuple(domain_b) if domain_b is not None else _safe_target_domain(
            lam_fn, fa.curve.domain
        )
        b = synthesize_similar(fa, lam_fn, dom_b)
        fb = frame_curve(b, ParameterGrid.uniform(*dom_b, n))
        worst_tau = float(np.max(np.abs(fb.tau)))
        return ClosureVerdict(
            kind=kind,
            passed=worst_tau <= tol,
            tol=tol,
            details={"max_abs_tau": worst_tau},
        )

    if kind == "helix":
        kappa0 = float(params.get("kappa", -1.0))
        tau0 = float(params.get("tau", -0.5))
        domain = tuple(params.get("domain", DEFAULT_DOMAIN))
        fa = make_null_helix(kappa0, tau0, domain=domain, n=n)
        dom_b = tuple(domain_b) if domain_b is not None else _safe_target_domain(
            lam_fn, fa.curve.domain
        )
        b = synthesize_similar(fa, lam_fn, dom_b)
        fb = frame_curve(b, ParameterGrid.uniform(*dom_b, n))
        details: dict = {}
        if _lambda_is_constant(lam_fn, dom_b):
            details["kappa_std"] = float(np.std(fb.kappa))
            details["tau_std"] = float(np.std(fb.tau))
            details["labels"] = classify(fb, eps=max(tol, 1e-9))
            passed = (
                details["kappa_std"] <= tol
                and details["tau_std"] <= tol
                and HELIX in details["labels"]
            )
        else:
            s_a = b.transformation.map(fb.s)
            f_a = np.full_like(s_a, tau0 / kappa0)
            f_dev = float(np.max(np.abs(fb.f_ratio - f_a)))
            details["f_dev"] = f_dev
            passed = f_dev <= tol
        return ClosureVerdict(kind=kind, passed=passed, tol=tol, details=details)

    raise ValueError(f"unknown family kind {kind!r}")


def _safe_target_domain(lam_fn, source_domain, n: int = 513) -> tuple[float, float]:
    """Largest [lo, hi] starting at the source start that the map keeps inside."""
    lo, hi = source_domain
    probe = np.linspace(lo, hi, n)
    lam = np.asarray(lam_fn(probe), dtype=float)
    # conservative running estimate of s_a via left Riemann sums with the max step
    budget = hi - lo
    cum = np.concatenate([[0.0], np.cumsum(0.5 * (lam[1:] + lam[:-1]) * np.diff(probe))])
    inside = probe[cum <= budget * 0.999]
    if len(inside) < 2:
        raise DomainOverflow("density too large for any usable target domain")
    return (float(lo), float(inside[-1]))
