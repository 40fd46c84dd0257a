"""Absolute-PPT membership of state spectra, and the dual pairing.

A nonnegative spectrum is absolutely PPT exactly when the placement-map
adjoint of its ascending sort is PSD for every realizable ordering of
min(m, n).  When one local dimension is 2 there is a single ordering and the
test collapses to the closed form

    lam_1 <= lam_{2n-1} + 2 sqrt(lam_{2n-2} lam_{2n})     (descending sort),

which also characterizes the absolutely separable spectra in those dims.
The pairing sum(mu_desc * lam_asc) is the minimal inner product over
reorderings; its sign against every absolutely PPT spectrum governs hull
membership of witness spectra.
"""

from __future__ import annotations

import numpy as np

from .linalg import is_psd
from .orderings import apply_L_adjoint, enumerate_orderings
from .spectra import Spectrum, ascending_values, descending_values

DEFAULT_TOL = 1e-9
NEG_ENTRY_TOL = 1e-12


def _state_values(lam: Spectrum, tol: float) -> np.ndarray:
    vals = np.asarray(lam.values, dtype=float)
    floor = -NEG_ENTRY_TOL * max(1.0, float(np.abs(vals).max()) if vals.size else 1.0)
    if np.any(vals < floor):
        raise ValueError("state spectrum has negative entries beyond tolerance")
    return np.clip(vals, 0.0, None)


def is_appt(lam: Spectrum, tol: float = DEFAULT_TOL) -> bool:
    """Absolute-PPT membership; dims are canonicalized to m <= n."""
    vals = _state_values(lam, tol)
    m, n = sorted(lam.dims)
    if m == 1:
        return True
    total = float(vals.sum())
    if total <= 0.0:
        return True
    lam_sorted = np.sort(vals / total)
    return all(
        is_psd(apply_L_adjoint(ordm, n, lam_sorted[::-1]), tol)
        for ordm in enumerate_orderings(m)
    )


def asep_corner_matrix(lam: Spectrum | np.ndarray) -> np.ndarray:
    """The 2x2 matrix whose PSD character is the (2, n) closed form."""
    v = descending_values(lam)
    return np.array(
        [[2 * v[-1], v[-2] - v[0]], [v[-2] - v[0], 2 * v[-3]]]
    )


def is_asep_2n(lam: Spectrum, tol: float = DEFAULT_TOL) -> bool:
    """Closed-form absolutely-separable test for dims (2, n)."""
    if 2 not in lam.dims:
        raise ValueError(f"closed form needs one local dimension equal to 2, got {lam.dims}")
    vals = _state_values(lam, tol)
    total = float(vals.sum())
    if total <= 0.0:
        return True
    v = np.sort(vals / total)[::-1]
    return v[0] <= v[-2] + 2 * np.sqrt(v[-3] * v[-1]) + tol


def min_pairing(mu: Spectrum | np.ndarray, lam: Spectrum | np.ndarray) -> float:
    """sum_j mu_desc[j] * lam_asc[j]: the minimum of the permuted inner
    product, pairing the largest entries of one vector with the smallest of
    the other."""
    mu_d = descending_values(mu)
    lam_a = ascending_values(lam)
    if mu_d.size != lam_a.size:
        raise ValueError(f"length mismatch: {mu_d.size} vs {lam_a.size}")
    return float(np.dot(mu_d, lam_a))
