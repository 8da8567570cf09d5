"""Flat numeric tables for CSV/JSON emission.

Column order is part of the output contract and never changes:

    s, x1..x3, alpha1..3, beta1..3, gamma1..3, kappa, tau, phi, f

Synthesis tables append the transformation columns and the pointwise
invariant-transport residuals.
"""

from __future__ import annotations

import numpy as np

from .errors import KappaVanishes, SignChange
from .frame import FramedCurve, _frame_fields
from .reparam import total_curvature
from .similarity import VariableTransformation

FRAME_COLUMNS = [
    "s",
    "x1", "x2", "x3",
    "alpha1", "alpha2", "alpha3",
    "beta1", "beta2", "beta3",
    "gamma1", "gamma2", "gamma3",
    "kappa", "tau",
    "phi", "f",
]

SYNTH_COLUMNS = FRAME_COLUMNS + [
    "lambda", "s_a", "kappa_transport_res", "tau_transport_res",
]


def frame_table(fc: FramedCurve) -> tuple[list[str], np.ndarray]:
    """Assemble the frame table; phi/f become NaN when no chart exists."""
    n = len(fc)
    try:
        chart = total_curvature(fc)
        phi = chart.phi_values
        f = chart.f_values
    except (KappaVanishes, SignChange):
        phi = np.full(n, np.nan)
        f = np.full(n, np.nan)
    rows = np.column_stack([
        fc.s,
        fc.position,
        fc.alpha,
        fc.beta,
        fc.gamma,
        fc.kappa,
        fc.tau,
        phi,
        f,
    ])
    return list(FRAME_COLUMNS), rows


def synthesis_table(fb: FramedCurve, fa: FramedCurve,
                    T: VariableTransformation) -> tuple[list[str], np.ndarray]:
    """Frame table of the synthesized curve plus transport residuals."""
    cols, rows = frame_table(fb)
    s_b = fb.s
    s_a = np.asarray(T.map(s_b), dtype=float)
    lam = np.asarray(T.density(s_b), dtype=float)
    fields_a = _frame_fields(fa.curve, s_a, eps_null=1e-6, eps_gram=1e-12)
    k_res = np.abs(fb.kappa - lam * fields_a["kappa"])
    t_res = np.abs(fb.tau - lam * fields_a["tau"])
    rows = np.column_stack([rows, lam, s_a, k_res, t_res])
    return list(SYNTH_COLUMNS), rows
