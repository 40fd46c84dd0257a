"""Exact spectral membership for two-qubit block-positive matrices.

A real 4-vector is the spectrum of some block-positive matrix on
C^2 (x) C^2 iff, after sorting non-increasingly,

    mu3 >= 0,    mu4 >= -mu2,    mu4 >= -sqrt(mu1 * mu3).

Membership is exact and comes with a constructor realizing any admissible
spectrum.  The set is a closed non-convex cone, so boundary points count as
members and checks are scale-invariant.
"""

from __future__ import annotations

import numpy as np

from .linalg import BipartiteOperator
from .spectra import Spectrum, descending_values

DEFAULT_TOL = 1e-9


def _require_22(s: Spectrum) -> None:
    if s.dims not in ((2, 2),):
        raise ValueError(f"two-qubit membership needs dims (2, 2), got {s.dims}")


def is_bp22_spectrum(s: Spectrum, tol: float = DEFAULT_TOL) -> bool:
    """Exact admissibility of a (2, 2) spectrum, with additive slack
    tol * max(1, ||s||_inf) so boundary spectra count as members."""
    _require_22(s)
    v = descending_values(s)
    scale = float(np.abs(v).max())
    if scale == 0.0:
        return True
    v = v / scale
    if v[2] < -tol:
        return False
    if v[3] + v[1] < -tol:
        return False
    prod = max(v[0] * v[2], 0.0)
    return v[3] + np.sqrt(prod) >= -tol


def construct_bp22(s: Spectrum, tol: float = DEFAULT_TOL) -> BipartiteOperator:
    """Block-positive matrix with the requested admissible spectrum.

    The eigenvector basis is fixed: |00>, |01>+|10>, |11>, |01>-|10>.
    Degenerate branches (mu4 >= 0, or mu3 == 0 forcing mu4 == 0) return the
    diagonal matrix of the sorted spectrum.
    """
    if not is_bp22_spectrum(s, tol=tol):
        raise ValueError("spectrum is not admissible for a two-qubit witness")
    mu = descending_values(s)
    scale = max(1.0, float(np.abs(mu).max()))
    if mu[3] >= 0 or mu[2] <= tol * scale:
        return BipartiteOperator(np.diag(mu).astype(complex), (2, 2))
    a2 = np.sqrt(mu[2])
    a1 = -mu[3] / a2
    g1 = mu[0] - mu[3] ** 2 / mu[2]
    g2 = mu[1] + mu[3]
    w = np.zeros((4, 4))
    w[0, 0] = a1 * a1 + g1
    w[3, 3] = a2 * a2
    w[1, 1] = w[2, 2] = g2 / 2
    w[1, 2] = w[2, 1] = a1 * a2 + g2 / 2
    return BipartiteOperator(w.astype(complex), (2, 2))
