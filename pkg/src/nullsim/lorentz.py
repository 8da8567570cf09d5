"""Lorentzian linear algebra of Minkowski 3-space.

The metric has signature (-, +, +):

    <x, y> = -x1*y1 + x2*y2 + x3*y3

and the vector product is

    x ^ y = (x2*y3 - x3*y2, x1*y3 - x3*y1, x2*y1 - x1*y2)

so that e1^e2 = -e3, e2^e3 = e1, e3^e1 = -e2.  All functions broadcast
over leading axes: inputs of shape (..., 3) give results of shape (...)
or (..., 3).
"""

from __future__ import annotations

from enum import Enum

import numpy as np

# Diagonal of the metric tensor.
METRIC_DIAG = np.array([-1.0, 1.0, 1.0])

DEFAULT_EPS_NULL = 1e-9


class CausalCharacter(Enum):
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    NULL = "null"


def as_vec3(v, name: str = "vector") -> np.ndarray:
    """Coerce to a float array of 3-vectors, rejecting NaN/Inf."""
    arr = np.asarray(v, dtype=float)
    if arr.ndim == 0 or arr.shape[-1] != 3:
        raise ValueError(f"{name} must have 3 components, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite components")
    return arr


def lorentz_dot(x, y):
    """Indefinite inner product -x1*y1 + x2*y2 + x3*y3."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return -x[..., 0] * y[..., 0] + x[..., 1] * y[..., 1] + x[..., 2] * y[..., 2]


def lorentz_cross(x, y):
    """Vector product adapted to the metric.

    Componentwise (x2*y3 - x3*y2, x1*y3 - x3*y1, x2*y1 - x1*y2); bilinear,
    antisymmetric, and Lorentz-orthogonal to both arguments.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return np.stack(
        [
            x[..., 1] * y[..., 2] - x[..., 2] * y[..., 1],
            x[..., 0] * y[..., 2] - x[..., 2] * y[..., 0],
            x[..., 1] * y[..., 0] - x[..., 0] * y[..., 1],
        ],
        axis=-1,
    )


def euclid_norm(v):
    """Euclidean length of the coordinate triple (used for residual sizes)."""
    v = np.asarray(v, dtype=float)
    return np.sqrt(np.sum(v * v, axis=-1))


def is_zero(v, eps: float = DEFAULT_EPS_NULL) -> bool:
    """True when every component is below eps in magnitude."""
    return bool(np.max(np.abs(as_vec3(v))) <= eps)


def causal_character(v, eps_null: float = DEFAULT_EPS_NULL,
                     relative: bool = False) -> CausalCharacter:
    """Classify a vector as spacelike, timelike or null.

    The zero vector counts as spacelike.  ``relative=True`` rescales the
    tolerance by the squared sup-norm of ``v`` so classification is
    invariant under scaling of the vector.
    """
    if eps_null <= 0:
        raise ValueError("eps_null must be positive")
    v = as_vec3(v)
    sup = float(np.max(np.abs(v)))
    eps = eps_null * max(sup * sup, 1.0) if relative else eps_null
    q = float(lorentz_dot(v, v))
    if q < -eps:
        return CausalCharacter.TIMELIKE
    if abs(q) <= eps and sup > eps_null:
        return CausalCharacter.NULL
    return CausalCharacter.SPACELIKE
