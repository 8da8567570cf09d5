"""FastAPI service exposing frame, check, synthesize and family runs.

The service wraps the core library; all numeric work happens in
:mod:`nullsim`.  Library errors surface as HTTP 400 with a structured
body ``{"error": <class name>, "detail": <message>}`` so clients can
dispatch on the class name.
"""

from __future__ import annotations

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..curves import ParameterGrid, nullity_check
from ..errors import AnchorRequired, NullsimError
from ..families import closure_check
from ..frame import classify, frame_curve
from ..similarity import (
    VariableTransformation,
    binormal_criterion,
    check_tangent_similarity,
    curvature_scaling_check,
    is_bertrand_pair,
    normal_criterion,
    ratio_criterion,
    synthesize_similar,
)
from ..specs import CurveSpec, RunConfig, parse_curve_spec, parse_profile, resolve_curve
from ..tables import frame_table, synthesis_table
from . import schemas

app = FastAPI(
    title="nullsim",
    description="Cartan frames and similar null curves in Minkowski 3-space",
    version=__version__,
)


@app.exception_handler(NullsimError)
async def nullsim_error_handler(request: Request, exc: NullsimError) -> JSONResponse:
    return JSONResponse(
        status_code=400,
        content={"error": type(exc).__name__, "detail": str(exc)},
    )


@app.exception_handler(ValueError)
async def value_error_handler(request: Request, exc: ValueError) -> JSONResponse:
    return JSONResponse(
        status_code=400,
        content={"error": "ValueError", "detail": str(exc)},
    )


def _to_spec(model: schemas.CurveSpecModel) -> CurveSpec:
    return parse_curve_spec(model.model_dump(exclude_none=True))


def _to_config(model: schemas.ConfigModel) -> RunConfig:
    return RunConfig(**model.model_dump()).validate()


def _framed_from_spec(model: schemas.CurveSpecModel, config: RunConfig):
    curve, grid = resolve_curve(_to_spec(model), config)
    return frame_curve(curve, grid, eps_null=config.eps_null)


def _diagnostics(fc, config: RunConfig) -> schemas.FrameDiagnosticsModel:
    nullity = nullity_check(fc.curve, fc.grid, config.eps_null)
    return schemas.FrameDiagnosticsModel(
        nullity_residual=nullity.max_residual,
        max_relation_residual=fc.diagnostics.max_relation_residual,
        max_cross_residual=fc.diagnostics.max_cross_residual,
        max_tau_cross_dev=fc.diagnostics.max_tau_cross_dev,
        continuity_breaks=fc.diagnostics.continuity_breaks,
        labels=classify(fc),
    )


@app.get("/", response_model=schemas.ServiceInfo)
def info() -> schemas.ServiceInfo:
    return schemas.ServiceInfo(
        name="nullsim",
        version=__version__,
        endpoints=["/frame", "/check", "/synthesize", "/family"],
    )


@app.get("/healthz")
def healthz() -> dict:
    return {"status": "ok"}


@app.post("/frame", response_model=schemas.TableResponse)
def frame_endpoint(req: schemas.FrameRequest) -> schemas.TableResponse:
    config = _to_config(req.config)
    fc = _framed_from_spec(req.curve, config)
    columns, rows = frame_table(fc)
    return schemas.TableResponse(
        columns=columns,
        rows=rows.tolist(),
        diagnostics=_diagnostics(fc, config),
    )


@app.post("/synthesize", response_model=schemas.TableResponse)
def synthesize_endpoint(req: schemas.SynthesizeRequest) -> schemas.TableResponse:
    config = _to_config(req.config)
    fa = _framed_from_spec(req.curve, config)
    lam = parse_profile(req.lambda_spec)
    domain = req.domain or fa.curve.domain
    b = synthesize_similar(fa, lam, domain, anchor=req.anchor, s_a0=req.start_a)
    n = req.samples or config.samples
    fb = frame_curve(b, ParameterGrid.uniform(*domain, n), eps_null=config.eps_null)
    columns, rows = synthesis_table(fb, fa, b.transformation)
    return schemas.TableResponse(
        columns=columns,
        rows=rows.tolist(),
        diagnostics=_diagnostics(fb, config),
    )


@app.post("/check", response_model=schemas.CheckResponse)
def check_endpoint(req: schemas.CheckRequest) -> schemas.CheckResponse:
    config = _to_config(req.config)
    fa = _framed_from_spec(req.curve_a, config)
    fb = _framed_from_spec(req.curve_b, config)
    anchors = None
    if req.anchor_a is not None and req.anchor_b is not None:
        anchors = (req.anchor_a, req.anchor_b)

    if req.mode == "normal":
        report, _ = normal_criterion(fa, fb, tol=req.tol, anchors=anchors,
                                     eps_kappa=config.eps_kappa)
        payload = report.to_dict()
        passed = report.passed
    elif req.mode == "binormal":
        report, _ = binormal_criterion(fa, fb, tol=req.tol, anchors=anchors)
        payload = report.to_dict()
        passed = report.passed
    elif req.mode == "ratio":
        report = ratio_criterion(fa, fb, tol=req.tol, anchors=anchors)
        payload = report.to_dict()
        passed = report.passed
    elif req.mode == "tangent":
        T = _transformation_for(req, fa, fb, anchors, config)
        report = check_tangent_similarity(fa, fb, T, tol=req.tol)
        payload = report.to_dict()
        payload["scaling"] = _scaling_dict(fa, fb, T, req.tol)
        passed = report.passed
    else:  # bertrand
        T = _transformation_for(req, fa, fb, anchors, config)
        result = is_bertrand_pair(fa, fb, T, tol=req.tol)
        payload = {
            "criterion": "bertrand",
            "passed": result.dependent,
            "tol": result.tol,
            "max_cross_norm": result.max_cross_norm,
            "unit_factor": result.unit_factor,
            "factor_range": [float(np.min(result.factors)),
                             float(np.max(result.factors))],
        }
        passed = result.dependent

    return schemas.CheckResponse(mode=req.mode, passed=passed, report=payload)


def _transformation_for(req: schemas.CheckRequest, fa, fb, anchors,
                        config: RunConfig) -> VariableTransformation:
    """Realize the transformation for modes that need one up front.

    An explicit density wins; otherwise it is inferred from the
    curvature ratio, which requires an anchor pair.
    """
    if req.lambda_spec is not None:
        lam = parse_profile(req.lambda_spec)
        s_a0 = anchors[0] if anchors else fa.curve.domain[0]
        s_b0 = anchors[1] if anchors else fb.curve.domain[0]
        return VariableTransformation.from_density(
            lam, fb.curve.domain, s_a0=s_a0, s_b0=s_b0
        )
    if anchors is None:
        raise AnchorRequired(
            f"mode={req.mode}: supply either lambda_spec or an anchor pair "
            "to infer the transformation from the curvature ratio"
        )
    _, T = normal_criterion(fa, fb, tol=req.tol, anchors=anchors,
                            eps_kappa=config.eps_kappa)
    return T


def _scaling_dict(fa, fb, T, tol) -> dict:
    rep = curvature_scaling_check(fa, fb, T, tol=tol)
    return {
        "kappa_residual": rep.kappa_residual,
        "tau_residual": rep.tau_residual,
        "passed": rep.passed,
    }


@app.post("/family", response_model=schemas.FamilyResponse)
def family_endpoint(req: schemas.FamilyRequest) -> schemas.FamilyResponse:
    lam = parse_profile(req.lambda_spec)
    verdict = closure_check(req.kind, req.params, lam, tol=req.tol,
                            domain_b=req.domain_b, n=req.samples)
    return schemas.FamilyResponse(
        kind=verdict.kind,
        passed=verdict.passed,
        tol=verdict.tol,
        details=verdict.details,
    )
