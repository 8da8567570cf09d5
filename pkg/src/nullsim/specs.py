"""Curve-spec JSON parsing, profile registry, and run configuration.

A curve spec resolves to a concrete curve plus a grid:

    {"kind": "builtin", "name": "helix1", "domain": [0, 6.283], "samples": 2001}
    {"kind": "samples", "grid": [...], "positions": [[...], ...]}
    {"kind": "samples", "path": "out.csv"}
    {"kind": "frenet", "params": {"kappa": -1, "tau": -0.5}, "domain": [...]}
    {"kind": "family", "name": "helix", "params": {"kappa": -1, "tau": -0.5}, ...}

Scalar profiles (for densities and curvature functions) are either
numbers or names from a small registry: ``"2+sin"``, ``"affine:a,b"``
(a + b*s) and ``"sin_offset:c,a"`` (c + a*sin s).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

import numpy as np

from .curves import NullCurve, ParameterGrid, SampledCurve, helix_curve, nullity_check
from .errors import (
    NotNull,
    ParseError,
    SpecValidationError,
    UnknownBuiltin,
)
from .families import make_null_geodesic, make_null_helix, make_torsion_free_curve
from .frame import standard_frame, FrameSample
from .profiles import parse_profile

KINDS = ("builtin", "samples", "frenet", "family")
BUILTINS = ("helix1", "geodesic")
FAMILY_NAMES = ("helix", "geodesic", "torsion_free")

DEFAULT_DOMAIN = (0.0, 2.0 * np.pi)
DEFAULT_SAMPLES = 2001


@dataclass
class RunConfig:
    """Tolerances and resolution shared across commands."""

    eps_null: float = 1e-6
    eps_frame: float = 1e-5
    eps_kappa: float = 1e-8
    tol: float = 1e-5
    samples: int = DEFAULT_SAMPLES

    def validate(self) -> "RunConfig":
        for name in ("eps_null", "eps_frame", "eps_kappa", "tol"):
            if not getattr(self, name) > 0:
                raise SpecValidationError(f"{name} must be positive")
        if self.samples < 5:
            raise SpecValidationError("resolution must be at least 5")
        return self


@dataclass
class CurveSpec:
    """Validated description of a curve input."""

    kind: str
    name: str | None = None
    params: dict = field(default_factory=dict)
    domain: tuple[float, float] | None = None
    samples: int | None = None
    grid: list[float] | None = None
    positions: list[list[float]] | None = None
    path: str | None = None


def parse_curve_spec(source) -> CurveSpec:
    """Parse and validate a curve spec from JSON text or a dict."""
    if isinstance(source, (str, bytes)):
        try:
            data = json.loads(source)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON at line {exc.lineno} column {exc.colno}: "
                             f"{exc.msg}") from exc
    elif isinstance(source, dict):
        data = source
    else:
        raise ParseError(f"curve spec must be JSON text or an object, got {type(source)}")
    if not isinstance(data, dict):
        raise ParseError("curve spec must be a JSON object")

    kind = data.get("kind")
    if kind not in KINDS:
        raise SpecValidationError(f"kind must be one of {KINDS}, got {kind!r}")

    spec = CurveSpec(
        kind=kind,
        name=data.get("name"),
        params=data.get("params") or {},
        domain=_parse_domain(data.get("domain")),
        samples=_parse_samples(data.get("samples")),
        grid=data.get("grid"),
        positions=data.get("positions"),
        path=data.get("path"),
    )

    if kind == "builtin":
        if spec.name not in BUILTINS:
            raise UnknownBuiltin(
                f"unknown builtin {spec.name!r}; available: {', '.join(BUILTINS)}"
            )
    elif kind == "family":
        if spec.name not in FAMILY_NAMES:
            raise UnknownBuiltin(
                f"unknown family {spec.name!r}; available: {', '.join(FAMILY_NAMES)}"
            )
    elif kind == "samples":
        has_inline = spec.grid is not None and spec.positions is not None
        if not has_inline and spec.path is None:
            raise SpecValidationError(
                "samples spec needs either inline 'grid' + 'positions' or a 'path'"
            )
    elif kind == "frenet":
        if "kappa" not in spec.params:
            raise SpecValidationError("frenet spec needs params.kappa")
    return spec


def _parse_domain(value):
    if value is None:
        return None
    try:
        lo, hi = float(value[0]), float(value[1])
    except (TypeError, ValueError, IndexError) as exc:
        raise SpecValidationError(f"domain must be [lo, hi], got {value!r}") from exc
    if not (np.isfinite(lo) and np.isfinite(hi) and lo < hi):
        raise SpecValidationError(f"degenerate domain {value!r}")
    return (lo, hi)


def _parse_samples(value):
    if value is None:
        return None
    n = int(value)
    if n < 5:
        raise SpecValidationError(f"samples must be >= 5, got {n}")
    return n


def _initial_frame_from_params(params: dict) -> FrameSample | None:
    raw = params.get("initial_frame")
    if raw is None:
        return None
    try:
        return FrameSample(
            s=0.0,
            position=np.asarray(raw.get("position", (0.0, 0.0, 0.0)), dtype=float),
            alpha=np.asarray(raw["alpha"], dtype=float),
            beta=np.asarray(raw["beta"], dtype=float),
            gamma=np.asarray(raw["gamma"], dtype=float),
            kappa=float(raw.get("kappa", np.nan)),
            tau=float(raw.get("tau", np.nan)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecValidationError(f"bad initial_frame fragment: {exc}") from exc


def resolve_curve(spec: CurveSpec, config: RunConfig | None = None
                  ) -> tuple[NullCurve, ParameterGrid]:
    """Materialize a spec into a curve and its evaluation grid.

    Every resolved curve must pass the nullity certificate on its grid.
    """
    config = (config or RunConfig()).validate()
    domain = spec.domain or DEFAULT_DOMAIN
    n = spec.samples or config.samples

    if spec.kind == "builtin":
        if spec.name == "helix1":
            curve = helix_curve(domain)
        else:  # geodesic
            curve = make_null_geodesic(
                spec.params.get("p0", (0.0, 0.0, 0.0)),
                spec.params.get("direction", (1.0, 1.0, 0.0)),
                domain,
            )
        grid = ParameterGrid.uniform(*domain, n)

    elif spec.kind == "samples":
        if spec.path is not None:
            grid_vals, positions = load_samples_csv(spec.path)
        else:
            grid_vals = np.asarray(spec.grid, dtype=float)
            positions = np.asarray(spec.positions, dtype=float)
        grid = ParameterGrid(grid_vals)
        curve = SampledCurve(grid, positions)

    elif spec.kind == "frenet":
        kappa = parse_profile(spec.params["kappa"])
        tau = parse_profile(spec.params.get("tau", 0.0))
        initial = _initial_frame_from_params(spec.params) or standard_frame()
        grid = ParameterGrid.uniform(*domain, n)
        from .frame import integrate_frenet  # deferred: heavy import chain

        framed = integrate_frenet(kappa, tau, initial, grid)
        curve = framed.curve

    else:  # family
        if spec.name == "geodesic":
            curve = make_null_geodesic(
                spec.params.get("p0", (0.0, 0.0, 0.0)),
                spec.params.get("direction", (1.0, 1.0, 0.0)),
                domain,
            )
            grid = ParameterGrid.uniform(*domain, n)
        elif spec.name == "helix":
            framed = make_null_helix(
                float(spec.params.get("kappa", -1.0)),
                float(spec.params.get("tau", -0.5)),
                initial=_initial_frame_from_params(spec.params),
                domain=domain,
                n=n,
            )
            curve, grid = framed.curve, framed.grid
        else:  # torsion_free
            framed = make_torsion_free_curve(
                parse_profile(spec.params.get("kappa", 1.0)),
                initial=_initial_frame_from_params(spec.params),
                domain=domain,
                n=n,
            )
            curve, grid = framed.curve, framed.grid

    report = nullity_check(curve, grid, config.eps_null)
    if not report.passed:
        raise NotNull(
            f"curve from spec fails the nullity certificate: "
            f"|<a',a'>| = {report.max_residual:.3e} at s={report.worst_s:g}"
        )
    return curve, grid


def load_samples_csv(path: str) -> tuple[np.ndarray, np.ndarray]:
    """Read parameter and position columns from a frame-table CSV."""
    with open(path, "r", newline="") as fh:
        return _read_samples(fh)


def load_samples_csv_text(text: str) -> tuple[np.ndarray, np.ndarray]:
    return _read_samples(io.StringIO(text))


def _read_samples(fh) -> tuple[np.ndarray, np.ndarray]:
    reader = csv.DictReader(fh)
    needed = ("s", "x1", "x2", "x3")
    if reader.fieldnames is None or any(c not in reader.fieldnames for c in needed):
        raise SpecValidationError(
            f"samples CSV must carry columns {needed}, got {reader.fieldnames}"
        )
    s, pos = [], []
    try:
        for row in reader:
            s.append(float(row["s"]))
            pos.append([float(row["x1"]), float(row["x2"]), float(row["x3"])])
    except (TypeError, ValueError) as exc:
        raise SpecValidationError(f"bad numeric cell in samples CSV: {exc}") from exc
    if not s:
        raise SpecValidationError("samples CSV has no data rows")
    return np.asarray(s), np.asarray(pos)
