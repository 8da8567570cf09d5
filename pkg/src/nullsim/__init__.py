"""Cartan frames and similar null curves in Minkowski 3-space."""

from .curves import (
    AnalyticCurve,
    NullCurve,
    NullityReport,
    ParameterGrid,
    SampledCurve,
    helix_curve,
    nullity_check,
)
from .errors import NullsimError
from .families import (
    ClosureVerdict,
    closure_check,
    make_null_geodesic,
    make_null_helix,
    make_torsion_free_curve,
)
from .fd import derivative_stencil, fd_weights
from .frame import (
    FrameSample,
    FramedCurve,
    FrenetResiduals,
    classify,
    classify_curve,
    compute_frame_at,
    frame_curve,
    frenet_residuals,
    integrate_frenet,
    standard_frame,
)
from .lorentz import (
    CausalCharacter,
    causal_character,
    lorentz_cross,
    lorentz_dot,
)
from .reparam import (
    PhiChart,
    TangentField,
    reconstruct_curve,
    solve_tangent_ode,
    tangent_ode_init_from_frame,
    tangent_ode_residual,
    total_curvature,
)
from .similarity import (
    BertrandResult,
    ScalingReport,
    SimilarityReport,
    VariableTransformation,
    binormal_criterion,
    check_tangent_similarity,
    curvature_scaling_check,
    is_bertrand_pair,
    normal_criterion,
    ratio_criterion,
    suggest_anchor,
    synthesize_similar,
)
from .specs import CurveSpec, RunConfig, parse_curve_spec, parse_profile, resolve_curve

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
