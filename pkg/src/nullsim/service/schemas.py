"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from typing import Literal, Optional, Union

from pydantic import BaseModel, Field


class CurveSpecModel(BaseModel):
    kind: Literal["builtin", "samples", "frenet", "family"]
    name: Optional[str] = None
    params: dict = Field(default_factory=dict)
    domain: Optional[tuple[float, float]] = None
    samples: Optional[int] = None
    grid: Optional[list[float]] = None
    positions: Optional[list[list[float]]] = None


class ConfigModel(BaseModel):
    eps_null: float = 1e-6
    eps_frame: float = 1e-5
    eps_kappa: float = 1e-8
    tol: float = 1e-5
    samples: int = 2001


class FrameRequest(BaseModel):
    curve: CurveSpecModel
    config: ConfigModel = Field(default_factory=ConfigModel)


class FrameDiagnosticsModel(BaseModel):
    nullity_residual: float
    max_relation_residual: float
    max_cross_residual: float
    max_tau_cross_dev: float
    continuity_breaks: list[int]
    labels: list[str]


class TableResponse(BaseModel):
    columns: list[str]
    rows: list[list[float]]
    diagnostics: FrameDiagnosticsModel


CheckMode = Literal["tangent", "normal", "binormal", "ratio", "bertrand"]


class CheckRequest(BaseModel):
    curve_a: CurveSpecModel
    curve_b: CurveSpecModel
    mode: CheckMode
    anchor_a: Optional[float] = None
    anchor_b: Optional[float] = None
    lambda_spec: Optional[Union[float, str]] = None
    tol: float = 1e-5
    config: ConfigModel = Field(default_factory=ConfigModel)


class CheckResponse(BaseModel):
    mode: CheckMode
    passed: bool
    report: dict


class SynthesizeRequest(BaseModel):
    curve: CurveSpecModel
    lambda_spec: Union[float, str]
    domain: Optional[tuple[float, float]] = None
    anchor: tuple[float, float, float] = (0.0, 0.0, 0.0)
    start_a: Optional[float] = None
    samples: Optional[int] = None
    config: ConfigModel = Field(default_factory=ConfigModel)


class FamilyRequest(BaseModel):
    kind: Literal["geodesic", "torsion_free", "helix"]
    params: dict = Field(default_factory=dict)
    lambda_spec: Union[float, str] = 1.0
    tol: float = 1e-6
    samples: int = 801
    domain_b: Optional[tuple[float, float]] = None


class FamilyResponse(BaseModel):
    kind: str
    passed: bool
    tol: float
    details: dict


class ErrorResponse(BaseModel):
    error: str
    detail: str


class ServiceInfo(BaseModel):
    name: str
    version: str
    endpoints: list[str]
