"""Scalar profile registry for densities and curvature functions.

Profiles keep the CLI and file formats free of an expression parser:
a profile is a number (constant), an already-callable function, or one
of a few named forms:

    "2+sin"            2 + sin(s)
    "affine:a,b"       a + b*s
    "sin_offset:c,a"   c + a*sin(s)
"""

from __future__ import annotations

import numpy as np

from .errors import SpecValidationError


def parse_profile(spec):
    """Resolve a profile spec to a vectorized callable."""
    if callable(spec):
        return spec
    if isinstance(spec, (int, float)) and not isinstance(spec, bool):
        return _const(float(spec))
    if not isinstance(spec, str):
        raise SpecValidationError(f"profile must be a number or name, got {spec!r}")
    text = spec.strip()
    try:
        return _const(float(text))
    except ValueError:
        pass
    if text == "2+sin":
        return lambda s: 2.0 + np.sin(np.asarray(s, dtype=float))
    if text.startswith("affine:"):
        a, b = _two_floats(text[len("affine:"):], text)
        return lambda s: a + b * np.asarray(s, dtype=float)
    if text.startswith("sin_offset:"):
        c0, amp = _two_floats(text[len("sin_offset:"):], text)
        return lambda s: c0 + amp * np.sin(np.asarray(s, dtype=float))
    raise SpecValidationError(
        f"unknown profile {spec!r}; use a number, '2+sin', 'affine:a,b' "
        "or 'sin_offset:c,a'"
    )


def _const(c: float):
    return lambda s: c * np.ones_like(np.asarray(s, dtype=float))


def _two_floats(body: str, original: str) -> tuple[float, float]:
    parts = body.split(",")
    if len(parts) != 2:
        raise SpecValidationError(f"profile {original!r} needs two parameters")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError as exc:
        raise SpecValidationError(f"bad numbers in profile {original!r}") from exc
