"""Closed-form spectrum of the partial transpose of a rank-1 projector.

For a bipartite unit-free vector with Schmidt coefficients a_1 >= ... >= a_m
(m <= n), the partially transposed projector has eigenvalues a_j^2, the pair
+/- a_i a_j for every i < j, and zero with extra multiplicity m(n - m).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import BipartiteOperator, partial_transpose
from .spectra import Spectrum


@dataclass(frozen=True, eq=False)
class SchmidtVector:
    """Non-increasing, nonnegative Schmidt coefficients on dims (m, n), m <= n.

    Coefficients are not required to be normalized; membership questions are
    scale-free so tests routinely use small integer coefficient vectors.
    """

    coeffs: np.ndarray
    dims: tuple[int, int]

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float)
        m, n = int(self.dims[0]), int(self.dims[1])
        if m > n:
            raise ValueError(f"require m <= n, got dims ({m}, {n})")
        if c.ndim != 1 or c.size != m:
            raise ValueError(f"expected {m} coefficients, got shape {c.shape}")
        if np.any(c < 0):
            raise ValueError("Schmidt coefficients must be nonnegative")
        if c.size > 1 and np.any(np.diff(c) > 0):
            raise ValueError("Schmidt coefficients must be non-increasing")
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "dims", (m, n))


def rank1_pt_spectrum(a: SchmidtVector) -> Spectrum:
    """Eigenvalue multiset of the partially transposed rank-1 projector."""
    c = a.coeffs
    m, n = a.dims
    vals = list(c * c)
    for i in range(m):
        for j in range(i + 1, m):
            p = c[i] * c[j]
            vals.append(p)
            vals.append(-p)
    vals.extend([0.0] * (m * (n - m)))
    return Spectrum(np.array(vals), a.dims)


def build_rank1_pt(a: SchmidtVector) -> BipartiteOperator:
    """The operator itself, built with the computational basis as both
    Schmidt bases (any other choice is unitarily equivalent)."""
    m, n = a.dims
    v = np.zeros(m * n)
    for j in range(m):
        v[j * n + j] = a.coeffs[j]
    proj = np.outer(v, v).astype(complex)
    return partial_transpose(BipartiteOperator(proj, a.dims))
