"""Trace-1 slice of the two-qubit spectral region, for external plotting.

Grid points (mu1, mu2, mu3) >= 0 with mu4 = 1 - mu1 - mu2 - mu3 get labeled
on their *sorted* 4-vector: ``green`` for exact two-qubit membership,
``orange`` for points passing only the convex-hull condition, ``outside``
otherwise.  Labels are therefore closed under the coordinate permutations
that fix the slice.  Everything is vectorized; a step of 0.02 labels the
full grid in well under a second.
"""

from __future__ import annotations

import numpy as np

DEFAULT_TOL = 1e-9


def slice_grid(step: float) -> np.ndarray:
    """All (mu1, mu2, mu3) grid points in [0, 1]^3 with the given step."""
    if step <= 0:
        raise ValueError("grid step must be positive")
    axis = np.arange(0.0, 1.0 + step / 2, step)
    g = np.stack(np.meshgrid(axis, axis, axis, indexing="ij"), axis=-1)
    return g.reshape(-1, 3)


def _normalized_desc(spectra: np.ndarray) -> np.ndarray:
    v = np.sort(spectra, axis=1)[:, ::-1]
    scale = np.abs(v).max(axis=1, keepdims=True)
    scale[scale == 0] = 1.0
    return v / scale


def bp22_mask(spectra: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Vectorized exact two-qubit membership for rows of 4-vectors."""
    v = _normalized_desc(spectra)
    ok = v[:, 2] >= -tol
    ok &= v[:, 3] + v[:, 1] >= -tol
    prod = np.clip(v[:, 0] * v[:, 2], 0.0, None)
    ok &= v[:, 3] + np.sqrt(prod) >= -tol
    return ok


def conv2n_mask(spectra: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Vectorized convex-hull condition for rows of (2, n) spectra."""
    v = _normalized_desc(spectra)
    s1 = v.sum(axis=1)
    s2 = s1 - v[:, 0]
    s3 = s2 - v[:, 1]
    sm = np.where(v < 0, v, 0.0).sum(axis=1)
    q1 = s1 * s1 - 4 * sm * sm
    q2 = (s1 + 2 * s3) ** 2 - 8 * s3 * s3
    ok = (q1 >= -tol) & (q2 >= -tol)
    r1 = np.sqrt(np.clip(q1, 0.0, None))
    r2 = np.sqrt(np.clip(q2, 0.0, None))
    ok &= r1 >= s1 - 2 * s2 - tol
    ok &= r2 >= s1 - 4 * s2 + 2 * s3 - tol
    ok &= 2 * r1 + r2 >= s1 - 2 * s3 - tol
    return ok


def region_labels(
    step: float, which: str = "convexhull", tol: float = DEFAULT_TOL
) -> tuple[np.ndarray, list[str]]:
    """Grid coordinates and their labels on the trace-1 slice.

    ``which='exact'`` labels green/outside only; ``which='convexhull'`` also
    marks the hull-only shield in orange.
    """
    if which not in ("exact", "convexhull"):
        raise ValueError(f"unknown region selector {which!r}")
    coords = slice_grid(step)
    mu4 = 1.0 - coords.sum(axis=1)
    spectra = np.column_stack([coords, mu4])
    green = bp22_mask(spectra, tol)
    if which == "exact":
        labels = np.where(green, "green", "outside")
    else:
        orange = conv2n_mask(spectra, tol) & ~green
        labels = np.where(green, "green", np.where(orange, "orange", "outside"))
    return coords, list(labels)


def write_region_csv(fh, step: float, which: str = "convexhull", tol: float = DEFAULT_TOL) -> None:
    coords, labels = region_labels(step, which, tol)
    fh.write("mu1,mu2,mu3,label\n")
    for (a, b, c), label in zip(coords, labels):
        fh.write(f"{a:.12g},{b:.12g},{c:.12g},{label}\n")
