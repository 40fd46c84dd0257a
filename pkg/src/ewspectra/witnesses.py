"""Random decomposable witnesses, the necessary-condition battery, and a
see-saw probe for block positivity of explicit matrices.

The probe is a refuter, not a certifier: a negative product-state value
disproves block positivity, while a nonnegative outcome only means no
violation was found within the budget.
"""

from __future__ import annotations

import numpy as np

from .linalg import BipartiteOperator, kron_vec, partial_transpose, random_psd
from .spectra import Spectrum, descending_values

DEFAULT_TOL = 1e-9


def sample_decomposable(
    dims: tuple[int, int],
    ranks: tuple[int, int],
    seed: int,
    count: int,
) -> list[BipartiteOperator]:
    """Witnesses W = X^Gamma + Y with X, Y random PSD of the given ranks.

    Rank 0 means the corresponding part is zero.  A fixed seed reproduces the
    whole batch bit for bit.
    """
    m, n = dims
    d = m * n
    rx, ry = ranks
    if not (0 <= rx <= d and 0 <= ry <= d):
        raise ValueError(f"ranks must be in [0, {d}], got {ranks}")
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        x = random_psd(d, rx, rng) if rx else np.zeros((d, d), dtype=complex)
        y = random_psd(d, ry, rng) if ry else np.zeros((d, d), dtype=complex)
        w = partial_transpose(BipartiteOperator(x, dims)).entries + y
        out.append(BipartiteOperator((w + w.conj().T) / 2, dims))
    return out


def necessary_battery(
    s: Spectrum, decomposable: bool = False, tol: float = DEFAULT_TOL
) -> dict[str, bool]:
    """Known necessary spectral conditions for block positivity.

    Checks, on the (m, n) spectrum: the negative-eigenvalue count cap
    (m-1)(n-1); the min/max ratio floor 1 - min(m, n); two sharper ratio
    floors depending on the number q of negative eigenvalues; the trace
    inequality Tr(W)^2 >= Tr(W^2); and, when ``decomposable`` is set, the
    floor lambda_min >= -Tr(W)/2.
    """
    m, n = s.dims
    v = descending_values(s)
    mn = m * n
    scale = max(1.0, float(np.abs(v).max()))
    t = tol * scale
    q = int(np.sum(v < -t))
    lam_min, lam_max = float(v[-1]), float(v[0])
    total = float(v.sum())

    report: dict[str, bool] = {}
    report["negative_count"] = q <= (m - 1) * (n - 1)

    if lam_max <= t:
        ratio_ok = lam_min >= -t
        report["min_max_ratio"] = ratio_ok
        report["q_ratio_sqrt"] = ratio_ok
        report["q_ratio_ceil"] = ratio_ok
    else:
        ratio = lam_min / lam_max
        report["min_max_ratio"] = ratio >= 1 - min(m, n) - tol
        if q == 0:
            report["q_ratio_sqrt"] = True
            report["q_ratio_ceil"] = True
        else:
            denom = q * np.sqrt(mn - 1) + np.sqrt(mn * q - q * q)
            report["q_ratio_sqrt"] = ratio >= 1 - mn * np.sqrt(mn - 1) / denom - tol
            ceil_term = np.ceil((m + n - np.sqrt((m - n) ** 2 + 4 * q - 4)) / 2)
            report["q_ratio_ceil"] = ratio >= 1 - ceil_term - tol
    report["trace_square"] = total * total >= float((v * v).sum()) - tol * scale * scale
    if decomposable:
        report["decomposable_floor"] = lam_min >= -total / 2 - t
    return report


def battery_passed(report: dict[str, bool]) -> bool:
    return all(report.values())


def _seesaw(
    wt: np.ndarray, a0: np.ndarray, iters: int, stall: float
) -> tuple[float, np.ndarray, np.ndarray, list[float]]:
    """Alternating product-state minimization from one starting vector.

    The probed value never increases: each half-step minimizes exactly over
    one factor while the other is held fixed.
    """
    a = a0 / np.linalg.norm(a0)
    b = None
    value = np.inf
    history: list[float] = []
    for _ in range(iters):
        cond_b = np.einsum("i,j,ikjl->kl", a.conj(), a, wt)
        vals, vecs = np.linalg.eigh((cond_b + cond_b.conj().T) / 2)
        b = vecs[:, 0]
        cond_a = np.einsum("k,l,ikjl->ij", b.conj(), b, wt)
        vals, vecs = np.linalg.eigh((cond_a + cond_a.conj().T) / 2)
        a = vecs[:, 0]
        new_value = float(vals[0])
        history.append(new_value)
        if value - new_value < stall:
            value = new_value
            break
        value = new_value
    return value, a, b, history


def probe_block_positivity(
    w: BipartiteOperator,
    restarts: int = 50,
    iters: int = 200,
    seed: int = 0,
    stall: float = 1e-12,
) -> tuple[float, np.ndarray]:
    """Lowest product-state value found by see-saw over random restarts.

    Returns (min value found, the product vector attaining it).  Each restart
    owns a PRNG stream derived from (seed, restart index).
    """
    m, n = w.dims
    wt = w.as_tensor()
    best = np.inf
    best_vec = None
    for r in range(restarts):
        rng = np.random.default_rng(np.random.SeedSequence(entropy=(seed, r)))
        a0 = rng.standard_normal(m) + 1j * rng.standard_normal(m)
        value, a, b, _ = _seesaw(wt, a0, iters, stall)
        if value < best:
            best = value
            best_vec = kron_vec(a, b)
    return best, best_vec
