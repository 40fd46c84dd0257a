"""Convex-hull spectral membership when one local dimension is 2.

For dims (2, n) the convex hull of the attainable witness spectra has two
equivalent characterizations on the tail sums s1, s2, s3 and the negative
part s_-:

  (c)  a PSD matrix X in M_2(R) exists with
           x11 + x22 <= s1,   x22 <= s2,   x12 + x22 <= s3,   x12 <= s_-;
  (d)  with q1 = s1^2 - 4 s_-^2 and q2 = (s1 + 2 s3)^2 - 8 s3^2:
           q1, q2 >= 0,
           sqrt(q1) >= s1 - 2 s2,
           sqrt(q2) >= s1 - 4 s2 + 2 s3,
           2 sqrt(q1) + sqrt(q2) >= s1 - 2 s3.

(d) is the decision procedure; (c) produces a small certificate matrix and
doubles as a cross-check.  Both are closed conditions, so boundary points
count as members, and both normalize the spectrum first so the tolerance is
scale-free.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from .spectra import Spectrum, descending_values, negative_part_sum

DEFAULT_TOL = 1e-9
# floating noise floor for the q-values right at the boundary
Q_CLAMP = 1e-12


def _require_2n(s: Spectrum) -> None:
    if s.m != 2 or s.n < 2:
        raise ValueError(f"qubit-qudit membership needs dims (2, n>=2), got {s.dims}")


def _normalized_sums(s: Spectrum) -> tuple[float, float, float, float, float]:
    """(s1, s2, s3, s_minus, scale) with the spectrum scaled to ||.||_inf = 1."""
    v = descending_values(s)
    scale = float(np.abs(v).max())
    if scale > 0:
        v = v / scale
    s1 = float(v.sum())
    s2 = s1 - float(v[0])
    s3 = s2 - float(v[1])
    sm = float(v[v < 0].sum())
    return s1, s2, s3, sm, scale


def conv_bp2n_member_d(s: Spectrum, tol: float = DEFAULT_TOL) -> bool:
    """Closed-form hull membership for a (2, n) spectrum."""
    _require_2n(s)
    s1, s2, s3, sm, scale = _normalized_sums(s)
    if scale == 0.0:
        return True
    q1 = s1 * s1 - 4 * sm * sm
    q2 = (s1 + 2 * s3) ** 2 - 8 * s3 * s3
    if q1 < -tol or q2 < -tol:
        return False
    r1 = np.sqrt(max(q1, 0.0) if q1 > -Q_CLAMP else 0.0)
    r2 = np.sqrt(max(q2, 0.0) if q2 > -Q_CLAMP else 0.0)
    return (
        r1 >= s1 - 2 * s2 - tol
        and r2 >= s1 - 4 * s2 + 2 * s3 - tol
        and 2 * r1 + r2 >= s1 - 2 * s3 - tol
    )


def condc_matrix_ok(s: Spectrum, x: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """Check that a symmetric 2x2 matrix certifies condition (c) for ``s``:
    PSD within tol and all four linear inequalities within tol (both measured
    on the spectrum rescaled to ||.||_inf = 1)."""
    _require_2n(s)
    x = np.asarray(x, dtype=float)
    if x.shape != (2, 2) or abs(x[0, 1] - x[1, 0]) > 1e-12 * max(1.0, np.abs(x).max()):
        raise ValueError("certificate must be a symmetric 2x2 matrix")
    s1, s2, s3, sm, scale = _normalized_sums(s)
    if scale > 0:
        x = x / scale
    tr = x[0, 0] + x[1, 1]
    det = x[0, 0] * x[1, 1] - x[0, 1] ** 2
    mineig = tr / 2 - np.sqrt(max((tr / 2) ** 2 - det, 0.0))
    if mineig < -tol:
        return False
    return (
        x[0, 0] + x[1, 1] <= s1 + tol
        and x[1, 1] <= s2 + tol
        and x[0, 1] + x[1, 1] <= s3 + tol
        and x[0, 1] <= sm + tol
    )


def conv_bp2n_member_c(s: Spectrum, tol: float = DEFAULT_TOL) -> np.ndarray | None:
    """Search for a condition-(c) certificate matrix; None when infeasible.

    For fixed x22 the best choice is x11 = s1 - x22 and x12 as large as the
    linear constraints allow, so feasibility reduces to nonnegativity of the
    concave 1-D function

        g(x22) = sqrt((s1 - x22) x22) + min(s_-, s3 - x22)

    on 0 <= x22 <= min(s1, s2), which a ternary scan maximizes exactly.
    """
    _require_2n(s)
    s1, s2, s3, sm, scale = _normalized_sums(s)
    if scale == 0.0:
        return np.zeros((2, 2))
    hi = min(s1, s2)
    if hi < -tol:
        return None
    hi = max(hi, 0.0)

    def g(x22: float) -> float:
        rad = (s1 - x22) * x22
        return np.sqrt(max(rad, 0.0)) + min(sm, s3 - x22)

    lo = 0.0
    a, b = lo, hi
    for _ in range(200):
        m1 = a + (b - a) / 3
        m2 = b - (b - a) / 3
        if g(m1) < g(m2):
            a = m1
        else:
            b = m2
    best = max((lo, hi, (a + b) / 2), key=g)
    if g(best) < -tol:
        return None
    x22 = best
    x11 = s1 - x22
    x12 = min(sm, s3 - x22)
    x = np.array([[x11, x12], [x12, x22]]) * scale
    if not condc_matrix_ok(s, x, tol=tol):
        return None
    return x


def threshold_bisect(
    family: Callable[[float], Spectrum],
    lo: float,
    hi: float,
    member: Callable[[Spectrum], bool],
    tol: float = 1e-9,
) -> float:
    """Boundary parameter of a membership-monotone one-parameter family.

    Requires the endpoints to differ, except that a family that is a member
    at both endpoints returns ``lo`` by convention.
    """
    if hi <= lo:
        raise ValueError("need lo < hi")
    flo = member(family(lo))
    fhi = member(family(hi))
    if flo and fhi:
        return lo
    if not flo and not fhi:
        raise ValueError("endpoints do not bracket a membership change")
    a, b = lo, hi
    while b - a > tol / 4:
        mid = (a + b) / 2
        if member(family(mid)) == flo:
            a = mid
        else:
            b = mid
    return (a + b) / 2
